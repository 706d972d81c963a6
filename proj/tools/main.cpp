#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/experiment.hpp"
#include "cvxcyclic/json_util.hpp"
#include "cvxcyclic/presets.hpp"

namespace {

using cvxcyclic::ConfigError;
using cvxcyclic::ExperimentConfig;
using nlohmann::json;

/// Option values are either inline JSON (detected by the leading character)
/// or a path to a file holding it.
json load_json_arg(const std::string& text, const std::string& what) {
    std::string payload = text;
    const char head = text.empty() ? '\0' : text.front();
    if (head != '[' && head != '{') {
        std::ifstream in(text);
        if (!in) throw ConfigError(what + ": cannot open file \"" + text + "\"");
        std::stringstream buffer;
        buffer << in.rdbuf();
        payload = buffer.str();
    }
    try {
        return json::parse(payload);
    } catch (const json::exception& e) {
        throw ConfigError(what + ": invalid JSON: " + e.what());
    }
}

struct CommonArgs {
    std::string spec;
    std::string seed_vector;
    std::uint64_t rng_seed = cvxcyclic::kDefaultSeed;
    std::string out = "-";
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_spec = true) {
    if (with_spec)
        cmd->add_option("--spec", args.spec, "operator spec (inline JSON or file path)");
    cmd->add_option("--seed-vector", args.seed_vector,
                    "seed vector x as [[re,im],...] (inline JSON or file path)");
    cmd->add_option("--rng-seed", args.rng_seed, "seed for sample-based operations");
    cmd->add_option("--out", args.out, "output path ('-' for stdout)");
    cmd->add_option("--format", args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

ExperimentConfig base_config(const std::string& command, const CommonArgs& args) {
    ExperimentConfig config;
    config.command = command;
    config.rng_seed = args.rng_seed;
    if (!args.spec.empty())
        config.op = cvxcyclic::OperatorSpec::from_json(load_json_arg(args.spec, "--spec"));
    if (!args.seed_vector.empty())
        config.seed_vector =
            cvxcyclic::vector_from_json(load_json_arg(args.seed_vector, "--seed-vector"));
    return config;
}

int run(const ExperimentConfig& config, const CommonArgs& args) {
    const cvxcyclic::Report report = cvxcyclic::run_experiment(config);
    cvxcyclic::emit_report(report, args.format, args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical experiments with convex hulls of operator orbits"};
    app.require_subcommand(1);

    // classify
    CommonArgs classify_args;
    std::string field = "complex";
    int max_m = 3, samples = 64;
    double class_p = 2.0, class_tol = 1e-9;
    auto* classify = app.add_subcommand("classify", "run the decision gates and eigenvalue criteria");
    add_common(classify, classify_args);
    classify->add_option("--field", field, "complex or real")
        ->check(CLI::IsMember({"complex", "real"}));
    classify->add_option("--max-m", max_m, "isometry orders to test (1..max)");
    classify->add_option("--p", class_p, "isometry exponent");
    classify->add_option("--samples", samples, "random sample vectors per isometry test");
    classify->add_option("--tol", class_tol, "isometry defect tolerance");

    // probe
    CommonArgs probe_args;
    std::string functional;
    int probe_n = 100;
    auto* probe = app.add_subcommand("probe", "trace Re<T^n x, f> and classify its growth");
    add_common(probe, probe_args);
    probe->add_option("--functional", functional, "functional representative f (vector JSON)")
        ->required();
    probe->add_option("--N", probe_n, "trace horizon");

    // approx
    CommonArgs approx_args;
    std::string target, targets, family;
    int approx_n = 64, max_iter = 10'000, max_k = 64;
    double approx_tol = 1e-6;
    auto* approx = app.add_subcommand("approx", "distance from targets to the orbit hull");
    add_common(approx, approx_args);
    approx->add_option("--target", target, "single target vector (JSON)");
    approx->add_option("--targets", targets, "target list (inline JSON or file path)");
    approx->add_option("--N", approx_n, "orbit horizon");
    approx->add_option("--tol", approx_tol, "solver gap tolerance (gap <= tol^2)");
    approx->add_option("--max-iter", max_iter, "solver iteration cap");
    approx->add_option("--family", family,
                       "probe a polynomial family instead of the full hull: cesaro, pkc:<c>, "
                       "monomial_average:<N>, cesaro:<n>, pkc:<k>:<c>, or coefficients");
    approx->add_option("--max-k", max_k, "family scan bound");

    // epsilon
    CommonArgs eps_args;
    std::string eps_target;
    double eps = 0.5, delta = 0.01;
    long horizon = 256;
    bool mock = false;
    auto* epsilon = app.add_subcommand("epsilon", "greedy support-N average with certificates");
    add_common(epsilon, eps_args);
    epsilon->add_option("--target", eps_target, "target vector y (JSON)")->required();
    epsilon->add_option("--eps", eps, "contraction factor in (0,1)");
    epsilon->add_option("--delta", delta, "final error budget");
    epsilon->add_option("--horizon", horizon, "largest exponent the orbit oracle may use");
    epsilon->add_flag("--mock", mock, "drive the loop with the synthetic oracle");

    // defect
    CommonArgs defect_args;
    int defect_m = 2, defect_samples = 64, seminorm_n = 0;
    double defect_p = 2.0, defect_tol = 1e-9;
    auto* defect = app.add_subcommand("defect", "m-isometry defect test");
    add_common(defect, defect_args);
    defect->add_option("--m", defect_m, "isometry order");
    defect->add_option("--p", defect_p, "isometry exponent");
    defect->add_option("--samples", defect_samples, "random sample vectors");
    defect->add_option("--tol", defect_tol, "defect tolerance");
    defect->add_option("--N", seminorm_n,
                       "also estimate the orbit seminorm at this horizon (needs --seed-vector)");

    // orbit
    CommonArgs orbit_args;
    int orbit_n = 16;
    auto* orbit = app.add_subcommand("orbit", "emit T^n x for n = 0..N");
    add_common(orbit, orbit_args);
    orbit->add_option("--N", orbit_n, "orbit horizon");

    // preset
    CommonArgs preset_args;
    std::string preset_name, action = "classify", action_params;
    auto* preset = app.add_subcommand("preset", "run a named example operator");
    std::string names;
    for (const auto& n : cvxcyclic::preset_names()) names += n + " ";
    preset->add_option("name", preset_name, "one of: " + names + "(append :d for dimension)")
        ->required();
    preset->add_option("--action", action, "command to run on the preset");
    preset->add_option("--action-params", action_params, "JSON object forwarded to the action");
    add_common(preset, preset_args, /*with_spec=*/false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) {
            ExperimentConfig config = base_config("classify", classify_args);
            config.parameters = json{{"field", field}, {"max_m", max_m}, {"p", class_p},
                                     {"samples", samples}, {"tol", class_tol}};
            return run(config, classify_args);
        }
        if (probe->parsed()) {
            ExperimentConfig config = base_config("probe", probe_args);
            config.parameters =
                json{{"functional", load_json_arg(functional, "--functional")}, {"N", probe_n}};
            return run(config, probe_args);
        }
        if (approx->parsed()) {
            ExperimentConfig config = base_config("approx", approx_args);
            config.parameters = json{{"N", approx_n}, {"tol", approx_tol}, {"max_iter", max_iter}};
            if (!target.empty())
                config.parameters["target"] = load_json_arg(target, "--target");
            if (!targets.empty())
                config.parameters["targets"] = load_json_arg(targets, "--targets");
            if (!family.empty()) {
                config.parameters["family"] = family;
                config.parameters["max_k"] = max_k;
            }
            return run(config, approx_args);
        }
        if (epsilon->parsed()) {
            ExperimentConfig config = base_config("epsilon", eps_args);
            config.parameters = json{{"target", load_json_arg(eps_target, "--target")},
                                     {"eps", eps},
                                     {"delta", delta},
                                     {"horizon", horizon},
                                     {"mock", mock}};
            return run(config, eps_args);
        }
        if (defect->parsed()) {
            ExperimentConfig config = base_config("defect", defect_args);
            config.parameters = json{{"m", defect_m}, {"p", defect_p},
                                     {"samples", defect_samples}, {"tol", defect_tol}};
            if (seminorm_n > 0) config.parameters["N"] = seminorm_n;
            return run(config, defect_args);
        }
        if (orbit->parsed()) {
            ExperimentConfig config = base_config("orbit", orbit_args);
            config.parameters = json{{"N", orbit_n}};
            return run(config, orbit_args);
        }
        if (preset->parsed()) {
            ExperimentConfig config = base_config("preset", preset_args);
            config.parameters = json{{"name", preset_name}, {"action", action}};
            if (!action_params.empty())
                config.parameters["action_parameters"] =
                    load_json_arg(action_params, "--action-params");
            return run(config, preset_args);
        }
    } catch (const cvxcyclic::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case cvxcyclic::ErrorKind::Config: return 2;
            case cvxcyclic::ErrorKind::Numerical: return 3;
            case cvxcyclic::ErrorKind::Oracle: return 4;
        }
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
