#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cmab/environments/cascade.hpp"
#include "cmab/harness/config.hpp"
#include "cmab/oracles/oracle.hpp"
#include "cmab/policies/policy.hpp"

namespace cmab {

/// Single-user disjunctive cascade: items 0..K-1 attract with probability p,
/// the rest with p - gap. Throws std::invalid_argument unless p in (0, 1),
/// gap in (0, p) and 1 <= K <= V.
CascadingInstance make_blb_instance(std::size_t items, std::size_t k, double p, double gap);

/// Benchmark of the approximation-regret mode, computed once per instance.
struct ApproxBenchmark {
    SeedSet seeds;          // RR-greedy on the true edge probabilities
    double spread = 0.0;    // Monte-Carlo spread of `seeds`
    double alpha = 0.0;
    double beta = 0.0;
    bool budget_exhausted = false;
};

/// Everything a run needs besides the policy: the environment, a factory for
/// per-run oracles and the per-round regret benchmark.
struct Problem {
    std::string family;       // as written in the config ("blb", "cascade", ...)
    std::string oracle_kind;  // resolved, never "auto"
    std::shared_ptr<const Environment> env;
    std::function<std::unique_ptr<Oracle>()> make_oracle;
    std::string instance_fingerprint;
    std::uint64_t instance_seed = 0;

    std::optional<SuperArm> optimum;  // S* on the true means (Expected mode)
    double opt_value = 0.0;           // r(S*, mu), or alpha * beta * spread
    std::optional<ApproxBenchmark> benchmark;
};

/// Builds and checks the (environment, oracle, policy, regret mode) combination.
/// Throws ConfigError for invalid or incompatible settings and IngestError
/// when a referenced data file cannot be loaded.
Problem build_problem(const RunConfig& cfg);

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const Environment& env);

}  // namespace cmab
