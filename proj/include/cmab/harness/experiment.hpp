#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cmab/harness/aggregate.hpp"
#include "cmab/harness/config.hpp"
#include "cmab/harness/problem.hpp"

namespace cmab {

/// Generator streams of one run, all derived from the run seed.
inline constexpr std::uint64_t kPolicyStream = 1;
inline constexpr std::uint64_t kOracleStream = 2;
inline constexpr std::uint64_t kEnvironmentStream = 3;

/// Seed of run r: derive_seed(master_seed, r).
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run);

struct RunSummary {
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double final_regret = 0.0;
    std::uint64_t budget_warnings = 0;  // oracle solves truncated by the RR budget
};

struct RunResult {
    RunConfig config;
    std::string config_fingerprint;
    std::string instance_fingerprint;
    std::string oracle_kind;
    double opt_value = 0.0;
    std::optional<ApproxBenchmark> benchmark;

    std::vector<RunSummary> runs;              // in run order
    std::vector<std::vector<double>> curves;   // cumulative regret per run; empty unless store_runs
    AggregateCurve aggregate;
    double wall_seconds = 0.0;
};

/// Called after every round with the run index, the round, the played super
/// arm and its outcome. With threads > 1 it is called concurrently from
/// different runs.
using RoundObserver =
    std::function<void(std::size_t run, std::int64_t round, const SuperArm& played, const StepOutcome& outcome)>;

/// Runs every configured run and aggregates them in run order. Throws
/// ConfigError before simulating anything when the setup is invalid, and
/// SimulationError when a run fails.
RunResult run_experiment(const RunConfig& cfg, const RoundObserver& observer = {});

/// Same, on an already-built problem.
RunResult run_experiment(const RunConfig& cfg, const Problem& problem, const RoundObserver& observer = {});

/// One run's cumulative regret curve (length T).
std::vector<double> simulate_run(const RunConfig& cfg, const Problem& problem, std::size_t run,
                                 RunSummary* summary = nullptr, const RoundObserver& observer = {});

}  // namespace cmab
