#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "cvxcyclic/operator_spec.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

inline constexpr const char* kVersion = "0.1.0";

/// One batch run: a command, the operator it acts on, and command-specific
/// parameters. Identical configs with identical seeds reproduce their result
/// payload bit for bit (wall time aside).
struct ExperimentConfig {
    std::string command;  // classify | probe | approx | epsilon | defect | orbit | preset
    std::optional<OperatorSpec> op;
    std::optional<Vector> seed_vector;
    nlohmann::json parameters = nlohmann::json::object();
    std::uint64_t rng_seed = kDefaultSeed;

    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

struct Report {
    nlohmann::json config_echo;
    nlohmann::json results;
    std::string version;
    std::uint64_t rng_seed = 0;
    double wall_time_ms = 0.0;

    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
};

Report run_experiment(const ExperimentConfig& config);

/// The plot-ready table for commands that produce one (probe traces,
/// residual tables, orbit rows); ConfigError for verdict-style reports.
std::string report_csv(const Report& report);

/// format "json" writes the canonical report; "csv" the table. Path "-"
/// means stdout.
void emit_report(const Report& report, const std::string& format, const std::string& path);

}  // namespace cvxcyclic
