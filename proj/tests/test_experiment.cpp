#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/experiment.hpp"
#include "cvxcyclic/json_util.hpp"
#include "cvxcyclic/presets.hpp"

using namespace cvxcyclic;
using nlohmann::json;

namespace {

ExperimentConfig diag_probe_config() {
    ExperimentConfig config;
    config.command = "probe";
    config.op = spec::diagonal({Complex(0, 2), Complex(0, -2)});
    Vector x(2);
    x << Complex(1, 0), Complex(1, 0);
    config.seed_vector = x;
    config.parameters = json{{"functional", json::parse("[[0,-1],[0,-1]]")}, {"N", 50}};
    return config;
}

}  // namespace

TEST_CASE("identical configs reproduce identical payloads") {
    const ExperimentConfig config = diag_probe_config();
    const Report a = run_experiment(config);
    const Report b = run_experiment(config);
    CHECK(a.results.dump() == b.results.dump());
    CHECK(a.config_echo.dump() == b.config_echo.dump());
}

TEST_CASE("classify sampling is seed-deterministic through the runner") {
    ExperimentConfig config;
    config.command = "classify";
    config.op = spec::diagonal({Complex(0, 2), Complex(0, -2)});
    config.rng_seed = 4242;
    const Report a = run_experiment(config);
    const Report b = run_experiment(config);
    CHECK(a.results.dump() == b.results.dump());
    CHECK(a.results["verdict"] == "PaperCriterionPassesWithCaveat");
}

TEST_CASE("report json round trips modulo wall time") {
    const Report report = run_experiment(diag_probe_config());
    const Report back = Report::from_json(report.to_json());
    CHECK(back.results.dump() == report.results.dump());
    CHECK(back.config_echo.dump() == report.config_echo.dump());
    CHECK(back.version == report.version);
    CHECK(back.rng_seed == report.rng_seed);
}

TEST_CASE("probe csv table") {
    const Report report = run_experiment(diag_probe_config());
    const std::string csv = report_csv(report);
    CHECK(csv.rfind("n,value,running_max\n", 0) == 0);
    // header + 51 rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 52);
    CHECK(csv.find("0,0,0\n") != std::string::npos);
}

TEST_CASE("approx on the spiral reaches the origin") {
    ExperimentConfig config;
    config.command = "approx";
    config.op = spec::diagonal({Complex(0, 2)});
    Vector x(1);
    x[0] = Complex(1, 0);
    config.seed_vector = x;
    config.parameters = json{{"target", json::parse("[[0,0]]")}, {"N", 64}, {"tol", 1e-6}};
    const Report report = run_experiment(config);
    CHECK(report.results["results"][0]["distance"].get<double>() <= 1e-6);

    const std::string csv = report_csv(report);
    CHECK(csv.rfind("index,coefficient\n", 0) == 0);
    CHECK(csv.find("\ndistance,") != std::string::npos);
    CHECK(csv.find("\ngap,") != std::string::npos);
}

TEST_CASE("multi-target approx emits the residual table") {
    ExperimentConfig config;
    config.command = "approx";
    config.op = spec::diagonal({Complex(0, 2)});
    Vector x(1);
    x[0] = Complex(1, 0);
    config.seed_vector = x;
    json targets = json::array();
    for (int j = 0; j < 4; ++j) {
        const Complex t = std::polar(2.0, std::numbers::pi * j / 2.0);
        targets.push_back(json::array({json::array({t.real(), t.imag()})}));
    }
    config.parameters = json{{"targets", targets}, {"N", 64}, {"tol", 1e-3}};
    const Report report = run_experiment(config);
    CHECK(report.results["score"].get<double>() == 1.0);
    const std::string csv = report_csv(report);
    CHECK(csv.rfind("n,residual,gap,iterations\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}

TEST_CASE("family mode through the runner") {
    ExperimentConfig config;
    config.command = "approx";
    config.op = spec::identity(2);
    Vector x(2);
    x << Complex(1, 0), Complex(0, 0);
    config.seed_vector = x;
    config.parameters = json{{"target", json::parse("[[0,0],[1,0]]")}, {"family", "cesaro"},
                             {"max_k", 8}};
    const Report report = run_experiment(config);
    CHECK(report.results["distance"].get<double>() ==
          doctest::Approx(std::numbers::sqrt2).epsilon(1e-12));
    CHECK_THROWS_AS(report_csv(report), ConfigError);
}

TEST_CASE("epsilon command with the synthetic oracle") {
    ExperimentConfig config;
    config.command = "epsilon";
    config.parameters = json{{"target", json::parse("[[1,0]]")}, {"eps", 0.5},
                             {"delta", 0.01}, {"mock", true}};
    config.rng_seed = 7;
    const Report report = run_experiment(config);
    CHECK(report.results["N"].get<int>() == 8);
    CHECK(report.results["achieved_error"].get<double>() <=
          report.results["bound"].get<double>());
    const std::string csv = report_csv(report);
    CHECK(csv.rfind("step,residual\n", 0) == 0);
}

TEST_CASE("defect command with seminorm") {
    ExperimentConfig config;
    config.command = "defect";
    std::vector<double> weights;
    for (int n = 1; n < 16; ++n) weights.push_back(std::sqrt((n + 1.0) / n));
    config.op = spec::forward_shift(weights, 16);
    Vector e1 = Vector::Zero(16);
    e1[0] = Complex(1, 0);
    config.seed_vector = e1;
    config.parameters = json{{"m", 2}, {"p", 2.0}, {"samples", 16}, {"N", 12}};
    const Report report = run_experiment(config);
    CHECK(report.results["is_m_isometry"].get<bool>());
    CHECK(std::abs(report.results["seed_defect"].get<double>()) <= 1e-12);
    CHECK(report.results.contains("seminorm"));
}

TEST_CASE("orbit command csv") {
    ExperimentConfig config;
    config.command = "orbit";
    config.op = spec::diagonal({Complex(0, 2)});
    Vector x(1);
    x[0] = Complex(1, 0);
    config.seed_vector = x;
    config.parameters = json{{"N", 4}};
    const Report report = run_experiment(config);
    CHECK(report.results["rows"].size() == 5);
    const std::string csv = report_csv(report);
    CHECK(csv.rfind("n,re_0,im_0\n", 0) == 0);
    CHECK(csv.find("2,-4,") != std::string::npos);
}

TEST_CASE("preset reports embed the citation") {
    ExperimentConfig config;
    config.command = "preset";
    config.parameters = json{{"name", "2I-plus-B:8"}, {"action", "classify"}};
    const Report report = run_experiment(config);
    CHECK(report.results["preset"]["citation"] == "Example6.8");
    CHECK(report.results["action_results"]["verdict"] == "NotConvexCyclic");

    for (const auto& name : preset_names())
        CHECK_FALSE(resolve_preset(name).citation.empty());
}

TEST_CASE("config errors") {
    ExperimentConfig config;
    config.command = "wat";
    CHECK_THROWS_AS(run_experiment(config), ConfigError);

    config.command = "classify";
    CHECK_THROWS_AS(run_experiment(config), ConfigError);  // no operator

    config = diag_probe_config();
    config.parameters.erase("functional");
    CHECK_THROWS_AS(run_experiment(config), ConfigError);

    ExperimentConfig preset_config;
    preset_config.command = "preset";
    preset_config.parameters = json{{"name", "no-such-preset"}};
    CHECK_THROWS_AS(run_experiment(preset_config), ConfigError);
}

TEST_CASE("emit_report writes files and rejects bad paths") {
    const Report report = run_experiment(diag_probe_config());
    const std::string path = "emit_report_test.json";
    emit_report(report, "json", path);
    std::ifstream in(path);
    REQUIRE(in.good());
    json parsed;
    in >> parsed;
    CHECK(parsed["results"]["classification"] == "Bounded");
    std::remove(path.c_str());

    CHECK_THROWS_AS(emit_report(report, "json", "/no/such/dir/report.json"), IOError);
    CHECK_THROWS_AS(emit_report(report, "yaml", "-"), ConfigError);
}

TEST_CASE("experiment config json round trip") {
    const ExperimentConfig config = diag_probe_config();
    const ExperimentConfig back = ExperimentConfig::from_json(config.to_json());
    CHECK(back.command == config.command);
    CHECK(back.parameters == config.parameters);
    CHECK(back.to_json() == config.to_json());
}
