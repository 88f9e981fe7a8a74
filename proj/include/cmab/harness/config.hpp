#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cmab/core/regret.hpp"
#include "cmab/oracles/rr_greedy.hpp"
#include "cmab/policies/ucb.hpp"

namespace cmab {

struct PolicySpec {
    std::string name = "cts";  // cts | cucb | cascade_ucb1 | cascade_klucb | ts_cascade | oracle_replay
    double ucb_constant = 1.5;  // sqrt(c ln t / N); 1.5 = 3/2
    TsWidth ts_width = TsWidth::VarianceAware;
    TieOrder ucb_ties = TieOrder::Random;  // cucb, cascade_ucb1, cascade_klucb
    double prior_a = 1.0;
    double prior_b = 1.0;
};

struct OracleSpec {
    std::string kind = "auto";  // auto | topk | exhaustive_subset | reliable_path | rr_greedy
    RrGreedyParams rr;
    std::uint64_t subset_limit = 1'000'000;
};

/// One experiment: a single policy on a single environment.
struct RunConfig {
    nlohmann::json environment;  // {"family": ..., family-specific fields}
    std::filesystem::path base_dir;  // relative data paths resolve against this
    PolicySpec policy;
    OracleSpec oracle;
    std::int64_t horizon = 1000;
    std::size_t runs = 1;
    std::uint64_t master_seed = 1;
    RegretMode regret_mode = RegretMode::Expected;
    std::size_t benchmark_mc = 10'000;              // n_mc for the RealizedApprox benchmark spread
    std::uint64_t benchmark_rr_budget = 1'000'000;  // RR budget for the benchmark seed set
    std::size_t threads = 1;
    bool store_runs = true;  // false: aggregate-only, per-run curves are not kept
    std::filesystem::path output;

    /// Canonical JSON form; every field, with defaults filled in.
    nlohmann::json to_json() const;
    /// Hash of the canonical form minus the output path and thread count.
    std::string fingerprint() const;
};

/// Parses one experiment object. A "policies" array expands into one
/// RunConfig per entry (output in a subdirectory named after the policy).
/// Throws ConfigError on unknown or out-of-range fields.
std::vector<RunConfig> parse_run_configs(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Reads and parses a JSON config file; relative paths resolve against its directory.
std::vector<RunConfig> load_run_configs(const std::filesystem::path& path);

}  // namespace cmab
