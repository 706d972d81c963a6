#include "cvxcyclic/experiment.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cvxcyclic/constructions.hpp"
#include "cvxcyclic/criteria.hpp"
#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/hull.hpp"
#include "cvxcyclic/json_util.hpp"
#include "cvxcyclic/linear_operator.hpp"
#include "cvxcyclic/presets.hpp"

namespace cvxcyclic {

using nlohmann::json;

nlohmann::json ExperimentConfig::to_json() const {
    json j;
    j["command"] = command;
    j["operator"] = op ? op->to_json() : json(nullptr);
    j["seed_vector"] = seed_vector ? vector_to_json(*seed_vector) : json(nullptr);
    j["parameters"] = parameters;
    j["rng_seed"] = rng_seed;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string())
        throw ConfigError("experiment config: expected object with a \"command\" string");
    c.command = j["command"].get<std::string>();
    if (j.contains("operator") && !j["operator"].is_null())
        c.op = OperatorSpec::from_json(j["operator"]);
    if (j.contains("seed_vector") && !j["seed_vector"].is_null())
        c.seed_vector = vector_from_json(j["seed_vector"]);
    if (j.contains("parameters")) {
        if (!j["parameters"].is_object())
            throw ConfigError("experiment config: \"parameters\" must be an object");
        c.parameters = j["parameters"];
    }
    if (j.contains("rng_seed")) c.rng_seed = j["rng_seed"].get<std::uint64_t>();
    return c;
}

nlohmann::json Report::to_json() const {
    json j;
    j["config"] = config_echo;
    j["results"] = results;
    j["version"] = version;
    j["rng_seed"] = rng_seed;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

Report Report::from_json(const nlohmann::json& j) {
    Report r;
    r.config_echo = j.at("config");
    r.results = j.at("results");
    r.version = j.at("version").get<std::string>();
    r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    return r;
}

namespace {

// ---- parameter helpers -----------------------------------------------------

double param_number(const json& p, const char* key, double fallback) {
    if (!p.contains(key)) return fallback;
    if (!p[key].is_number()) throw ConfigError(std::string("parameter \"") + key + "\" must be a number");
    return p[key].get<double>();
}

int param_int(const json& p, const char* key, int fallback) {
    if (!p.contains(key)) return fallback;
    if (!p[key].is_number_integer())
        throw ConfigError(std::string("parameter \"") + key + "\" must be an integer");
    return p[key].get<int>();
}

bool param_bool(const json& p, const char* key, bool fallback) {
    if (!p.contains(key)) return fallback;
    if (!p[key].is_boolean())
        throw ConfigError(std::string("parameter \"") + key + "\" must be a boolean");
    return p[key].get<bool>();
}

std::string param_string(const json& p, const char* key, const std::string& fallback) {
    if (!p.contains(key)) return fallback;
    if (!p[key].is_string())
        throw ConfigError(std::string("parameter \"") + key + "\" must be a string");
    return p[key].get<std::string>();
}

const LinearOperator& require_operator(const std::optional<LinearOperator>& op,
                                       const std::string& command) {
    if (!op) throw ConfigError("command \"" + command + "\" needs an operator spec");
    return *op;
}

Vector require_seed(const ExperimentConfig& config, const LinearOperator& T) {
    if (!config.seed_vector)
        throw ConfigError("command \"" + config.command + "\" needs a seed vector");
    if (config.seed_vector->size() != T.dim())
        throw DimensionMismatch("seed vector dim " + std::to_string(config.seed_vector->size()) +
                                " vs operator dim " + std::to_string(T.dim()));
    return *config.seed_vector;
}

// ---- result serializers ----------------------------------------------------

json spectrum_to_json(const std::vector<Complex>& eigs) {
    json out = json::array();
    for (Complex z : eigs) out.push_back(complex_to_json(z));
    return out;
}

json classifier_report_to_json(const ClassifierReport& report) {
    json reasons = json::array();
    for (const auto& r : report.reasons)
        reasons.push_back(json{{"criterion", r.criterion}, {"detail", r.detail}});
    return json{{"verdict", to_string(report.verdict)},
                {"reasons", reasons},
                {"caveats", report.caveat_flags}};
}

json misometry_report_to_json(const MIsometryReport& report) {
    return json{{"m", report.m},
                {"p_exponent", report.p_exponent},
                {"defects", report.defects},
                {"is_m_isometry", report.is_m_isometry},
                {"seminorm_estimates", report.seminorm_estimates}};
}

json hull_approximation_to_json(const HullApproximation& approx) {
    return json{{"coefficients", approx.coefficients},
                {"distance", approx.distance},
                {"gap", approx.gap},
                {"iterations", approx.iterations}};
}

// ---- command runners ---------------------------------------------------------

json run_classify(const ExperimentConfig& config, const LinearOperator& T) {
    ClassifyOptions options;
    const std::string field = param_string(config.parameters, "field", "complex");
    if (field == "real")
        options.field = ScalarField::Real;
    else if (field != "complex")
        throw ConfigError("classify: field must be \"complex\" or \"real\"");
    options.max_m = param_int(config.parameters, "max_m", options.max_m);
    options.p_exp = param_number(config.parameters, "p", options.p_exp);
    options.samples = param_int(config.parameters, "samples", options.samples);
    options.tol = param_number(config.parameters, "tol", options.tol);
    options.seed = config.rng_seed;

    const OperatorClassification result = classify_operator(T, options, config.seed_vector);

    json out = classifier_report_to_json(result.report);
    out["gates"] = json{{"norm_gt_one", result.gates.norm_gt_one},
                        {"dense_range", result.gates.dense_range},
                        {"adjoint_spectrum_ok", result.gates.adjoint_spectrum_ok},
                        {"norm", result.gates.norm},
                        {"range_defect", result.gates.range_defect},
                        {"adjoint_spectrum", spectrum_to_json(result.gates.adjoint_spectrum)}};
    json checks = json::array();
    for (const auto& rep : result.isometry_checks) {
        double worst = 0.0;
        for (double d : rep.defects) worst = std::max(worst, std::abs(d));
        checks.push_back(json{{"m", rep.m},
                              {"p_exponent", rep.p_exponent},
                              {"is_m_isometry", rep.is_m_isometry},
                              {"max_abs_defect", worst}});
    }
    out["m_isometry_checks"] = checks;
    out["eigenvalues"] = spectrum_to_json(result.eigenvalues);
    out["witness"] = result.witness ? vector_to_json(*result.witness) : json(nullptr);
    return out;
}

json run_probe(const ExperimentConfig& config, const LinearOperator& T) {
    const Vector x = require_seed(config, T);
    if (!config.parameters.contains("functional"))
        throw ConfigError("probe: needs parameter \"functional\"");
    const Vector f = vector_from_json(config.parameters["functional"]);
    const int N = param_int(config.parameters, "N", 100);
    const ProbeTrace trace = hahn_banach_probe(T, x, f, N);
    return json{{"values", trace.values},
                {"running_max", trace.running_max},
                {"classification", to_string(trace.classification)}};
}

/// "cesaro" and "pkc:<c>" scan the family up to max_k; "monomial_average:<N>"
/// runs the greedy average; anything else is a single fixed polynomial.
json run_family_mode(const std::string& family, const LinearOperator& T, const Vector& x,
                     const Vector& y, int max_k) {
    FamilySpec fam;
    bool is_family = false;
    if (family == "cesaro") {
        fam.kind = FamilySpec::Kind::Cesaro;
        is_family = true;
    } else if (family.rfind("pkc:", 0) == 0 &&
               family.find(':', 4) == std::string::npos) {
        fam.kind = FamilySpec::Kind::Pkc;
        try {
            fam.c = std::stod(family.substr(4));
        } catch (...) {
            throw ConfigError("approx: bad pkc family \"" + family + "\"");
        }
        is_family = true;
    } else if (family.rfind("monomial_average:", 0) == 0) {
        fam.kind = FamilySpec::Kind::MonomialAverage;
        try {
            fam.n_terms = std::stoi(family.substr(17));
        } catch (...) {
            throw ConfigError("approx: bad monomial_average family \"" + family + "\"");
        }
        is_family = true;
    }

    if (is_family) {
        const FamilyProbeResult result = family_probe(T, x, y, fam, max_k);
        json out{{"family", family}, {"best_k", result.best_k}, {"distance", result.distance}};
        if (fam.kind == FamilySpec::Kind::MonomialAverage) out["exponents"] = result.exponents;
        return out;
    }
    const ConvexPolynomial p = parse_convex_polynomial(family);
    const double distance = (p.apply(T, x) - y).norm();
    return json{{"polynomial", json{{"coeffs", p.coeffs()}}}, {"distance", distance}};
}

json run_approx(const ExperimentConfig& config, const LinearOperator& T) {
    const Vector x = require_seed(config, T);
    std::vector<Vector> targets;
    if (config.parameters.contains("targets")) {
        const auto& tj = config.parameters["targets"];
        if (!tj.is_array() || tj.empty()) throw ConfigError("approx: \"targets\" must be a non-empty array");
        for (const auto& t : tj) targets.push_back(vector_from_json(t));
    } else if (config.parameters.contains("target")) {
        targets.push_back(vector_from_json(config.parameters["target"]));
    } else {
        throw ConfigError("approx: needs \"target\" or \"targets\"");
    }

    if (config.parameters.contains("family")) {
        if (targets.size() != 1)
            throw ConfigError("approx: family mode takes exactly one target");
        const int max_k = param_int(config.parameters, "max_k", 64);
        return run_family_mode(param_string(config.parameters, "family", ""), T, x,
                               targets.front(), max_k);
    }

    const int N = param_int(config.parameters, "N", 64);
    const double tol = param_number(config.parameters, "tol", 1e-6);
    const int max_iter = param_int(config.parameters, "max_iter", 10'000);

    const DensityProbeResult probe = density_probe(T, x, targets, N, tol, max_iter);
    json results = json::array();
    for (const auto& approx : probe.approximations)
        results.push_back(hull_approximation_to_json(approx));
    return json{{"score", probe.score}, {"residuals", probe.residuals}, {"results", results}};
}

json run_orbit(const ExperimentConfig& config, const LinearOperator& T) {
    const Vector x = require_seed(config, T);
    const int N = param_int(config.parameters, "N", 16);
    const OrbitTable orbit = compute_orbit(T, x, N);
    json rows = json::array();
    for (const auto& row : orbit.rows) rows.push_back(vector_to_json(row));
    return json{{"rows", rows}};
}

json run_defect(const ExperimentConfig& config, const LinearOperator& T) {
    const int m = param_int(config.parameters, "m", 2);
    const double p = param_number(config.parameters, "p", 2.0);
    const int samples = param_int(config.parameters, "samples", 64);
    const double tol = param_number(config.parameters, "tol", 1e-9);

    const MIsometryReport report = is_m_isometry(T, m, p, samples, tol, config.rng_seed);
    json out = misometry_report_to_json(report);
    if (config.seed_vector) {
        const Vector x = require_seed(config, T);
        out["seed_defect"] = m_isometry_defect(T, x, m, p);
        const int N = param_int(config.parameters, "N", 0);
        if (N >= 10) {
            const SeminormEstimate sem = misometry_seminorm_estimate(T, x, m, p, N);
            out["seminorm"] = json{{"estimate", sem.estimate},
                                   {"diverged", sem.diverged},
                                   {"spread", sem.spread}};
        }
    }
    return out;
}

json run_epsilon(const ExperimentConfig& config, const std::optional<LinearOperator>& T) {
    if (!config.parameters.contains("target"))
        throw ConfigError("epsilon: needs parameter \"target\"");
    const Vector y = vector_from_json(config.parameters["target"]);
    const double eps = param_number(config.parameters, "eps", 0.5);
    const double delta = param_number(config.parameters, "delta", 0.01);
    const long horizon = param_int(config.parameters, "horizon", 256);
    const bool mock = param_bool(config.parameters, "mock", false);

    EpsilonGreedyResult result;
    if (mock) {
        result = epsilon_greedy_with_oracle(y, eps, delta, mock_exponent_oracle(config.rng_seed));
    } else {
        const LinearOperator& op = require_operator(T, "epsilon");
        const Vector x = require_seed(config, op);
        if (y.size() != op.dim()) throw DimensionMismatch("epsilon: target dim mismatch");
        result = epsilon_greedy_approximation(op, x, y, eps, horizon, delta);
    }
    return json{{"exponents", result.exponents},
                {"polynomial", json{{"coeffs", result.polynomial.coeffs()}}},
                {"achieved_error", result.achieved_error},
                {"bound", result.bound},
                {"steps", result.steps},
                {"N", result.big_n},
                {"zero_branch", result.zero_branch}};
}

json run_preset(const ExperimentConfig& config) {
    const std::string name = param_string(config.parameters, "name", "");
    if (name.empty()) throw ConfigError("preset: needs parameter \"name\"");
    const Preset preset = resolve_preset(name);

    ExperimentConfig inner;
    inner.command = param_string(config.parameters, "action", "classify");
    if (inner.command == "preset") throw ConfigError("preset: action cannot be \"preset\"");
    inner.op = preset.spec;
    inner.seed_vector = config.seed_vector ? config.seed_vector
                                           : std::optional<Vector>(preset.default_seed);
    inner.parameters = config.parameters.value("action_parameters", json::object());
    inner.rng_seed = config.rng_seed;
    const Report inner_report = run_experiment(inner);

    return json{{"preset", json{{"name", preset.name},
                                {"citation", preset.citation},
                                {"description", preset.description},
                                {"operator", preset.spec.to_json()},
                                {"default_seed", vector_to_json(preset.default_seed)}}},
                {"action", inner.command},
                {"action_results", inner_report.results}};
}

}  // namespace

Report run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();

    std::optional<LinearOperator> T;
    if (config.op) T = build_operator(*config.op);

    json results;
    if (config.command == "classify")
        results = run_classify(config, require_operator(T, config.command));
    else if (config.command == "probe")
        results = run_probe(config, require_operator(T, config.command));
    else if (config.command == "approx")
        results = run_approx(config, require_operator(T, config.command));
    else if (config.command == "orbit")
        results = run_orbit(config, require_operator(T, config.command));
    else if (config.command == "defect")
        results = run_defect(config, require_operator(T, config.command));
    else if (config.command == "epsilon")
        results = run_epsilon(config, T);
    else if (config.command == "preset")
        results = run_preset(config);
    else
        throw ConfigError("unknown command \"" + config.command + "\"");

    Report report;
    report.config_echo = config.to_json();
    report.results = std::move(results);
    report.version = kVersion;
    report.rng_seed = config.rng_seed;
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

namespace {

void csv_number(std::ostringstream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

std::string probe_csv(const json& results) {
    std::ostringstream out;
    out << "n,value,running_max\n";
    const auto& values = results["values"];
    const auto& running = results["running_max"];
    for (std::size_t n = 0; n < values.size(); ++n) {
        out << n << ",";
        csv_number(out, values[n].get<double>());
        out << ",";
        csv_number(out, running[n].get<double>());
        out << "\n";
    }
    return out.str();
}

std::string approx_csv(const json& results) {
    if (!results.contains("results"))
        throw ConfigError("family-mode approx has no CSV table; use JSON");
    std::ostringstream out;
    const auto& entries = results["results"];
    if (entries.size() == 1) {
        out << "index,coefficient\n";
        const auto& coeffs = entries[0]["coefficients"];
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            out << k << ",";
            csv_number(out, coeffs[k].get<double>());
            out << "\n";
        }
        out << "distance,";
        csv_number(out, entries[0]["distance"].get<double>());
        out << "\ngap,";
        csv_number(out, entries[0]["gap"].get<double>());
        out << "\n";
        return out.str();
    }
    out << "n,residual,gap,iterations\n";
    for (std::size_t n = 0; n < entries.size(); ++n) {
        out << n << ",";
        csv_number(out, entries[n]["distance"].get<double>());
        out << ",";
        csv_number(out, entries[n]["gap"].get<double>());
        out << "," << entries[n]["iterations"].get<int>() << "\n";
    }
    return out.str();
}

std::string orbit_csv(const json& results) {
    std::ostringstream out;
    const auto& rows = results["rows"];
    const std::size_t dim = rows.empty() ? 0 : rows[0].size();
    out << "n";
    for (std::size_t k = 0; k < dim; ++k) out << ",re_" << k << ",im_" << k;
    out << "\n";
    for (std::size_t n = 0; n < rows.size(); ++n) {
        out << n;
        for (std::size_t k = 0; k < dim; ++k) {
            out << ",";
            csv_number(out, rows[n][k][0].get<double>());
            out << ",";
            csv_number(out, rows[n][k][1].get<double>());
        }
        out << "\n";
    }
    return out.str();
}

std::string defect_csv(const json& results) {
    std::ostringstream out;
    out << "sample,defect\n";
    const auto& defects = results["defects"];
    for (std::size_t k = 0; k < defects.size(); ++k) {
        out << k << ",";
        csv_number(out, defects[k].get<double>());
        out << "\n";
    }
    return out.str();
}

std::string epsilon_csv(const json& results) {
    std::ostringstream out;
    out << "step,residual\n";
    const auto& steps = results["steps"];
    for (std::size_t k = 0; k < steps.size(); ++k) {
        out << k + 1 << ",";
        csv_number(out, steps[k].get<double>());
        out << "\n";
    }
    return out.str();
}

std::string csv_for(const std::string& command, const json& results) {
    if (command == "probe") return probe_csv(results);
    if (command == "approx") return approx_csv(results);
    if (command == "orbit") return orbit_csv(results);
    if (command == "defect") return defect_csv(results);
    if (command == "epsilon") return epsilon_csv(results);
    if (command == "preset")
        return csv_for(results["action"].get<std::string>(), results["action_results"]);
    throw ConfigError("command \"" + command + "\" has no CSV table; use JSON");
}

}  // namespace

std::string report_csv(const Report& report) {
    const std::string command = report.config_echo.value("command", "");
    return csv_for(command, report.results);
}

void emit_report(const Report& report, const std::string& format, const std::string& path) {
    std::string payload;
    if (format == "json")
        payload = report.to_json().dump(2) + "\n";
    else if (format == "csv")
        payload = report_csv(report);
    else
        throw ConfigError("format must be \"json\" or \"csv\"");

    if (path == "-" || path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IOError("cannot open \"" + path + "\" for writing");
    out << payload;
    if (!out) throw IOError("failed writing \"" + path + "\"");
}

}  // namespace cvxcyclic
