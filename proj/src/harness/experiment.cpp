#include "cmab/harness/experiment.hpp"

#include <chrono>
#include <exception>
#include <thread>

#include "cmab/core/errors.hpp"
#include "cmab/core/regret.hpp"
#include "cmab/oracles/rr_greedy.hpp"

namespace cmab {

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t run) { return derive_seed(master_seed, run); }

std::vector<double> simulate_run(const RunConfig& cfg, const Problem& problem, std::size_t run,
                                 RunSummary* summary, const RoundObserver& observer) {
    const Environment& env = *problem.env;
    const std::uint64_t seed = run_seed(cfg.master_seed, run);
    Rng policy_rng(derive_seed(seed, kPolicyStream));
    Rng oracle_rng(derive_seed(seed, kOracleStream));
    Rng env_rng(derive_seed(seed, kEnvironmentStream));

    auto policy = make_policy(cfg.policy, env);
    auto oracle = problem.make_oracle();
    const auto mu = env.means().values();
    const bool expected = cfg.regret_mode == RegretMode::Expected;

    std::vector<double> curve;
    curve.reserve(static_cast<std::size_t>(cfg.horizon));
    RegretAccumulator acc(cfg.regret_mode);
    try {
        policy->initialize(env, env_rng);
        for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
            const MeanVector theta = policy->parameters(t, policy_rng);
            const SuperArm played = oracle->solve(theta.values(), oracle_rng);
            StepOutcome outcome = env.step(played, env_rng);
            outcome.feedback.round = t;
            policy->update(outcome.feedback, policy_rng);
            const double value = expected ? env.reward(played, mu) : outcome.reward;
            curve.push_back(acc.add(problem.opt_value, value).cumulative_regret);
            if (observer) observer(run, t, played, outcome);
        }
    } catch (const std::invalid_argument& e) {
        throw SimulationError("run " + std::to_string(run) + ": " + e.what());
    } catch (const std::out_of_range& e) {
        throw SimulationError("run " + std::to_string(run) + ": " + e.what());
    }
    if (summary) {
        summary->run = run;
        summary->seed = seed;
        summary->final_regret = curve.back();
        const auto* rr = dynamic_cast<const RrGreedyOracle*>(oracle.get());
        summary->budget_warnings = rr ? rr->budget_warnings() : 0;
    }
    return curve;
}

RunResult run_experiment(const RunConfig& cfg, const RoundObserver& observer) {
    const Problem problem = build_problem(cfg);
    return run_experiment(cfg, problem, observer);
}

RunResult run_experiment(const RunConfig& cfg, const Problem& problem, const RoundObserver& observer) {
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    result.config = cfg;
    result.config_fingerprint = cfg.fingerprint();
    result.instance_fingerprint = problem.instance_fingerprint;
    result.oracle_kind = problem.oracle_kind;
    result.opt_value = problem.opt_value;
    result.benchmark = problem.benchmark;
    result.runs.resize(cfg.runs);

    StreamingAggregate agg(static_cast<std::size_t>(cfg.horizon));
    const std::size_t batch = std::max<std::size_t>(1, std::min(cfg.threads, cfg.runs));
    for (std::size_t first = 0; first < cfg.runs; first += batch) {
        const std::size_t last = std::min(cfg.runs, first + batch);
        std::vector<std::vector<double>> curves(last - first);
        if (last - first == 1) {
            curves[0] = simulate_run(cfg, problem, first, &result.runs[first], observer);
        } else {
            std::vector<std::exception_ptr> errors(last - first);
            std::vector<std::thread> workers;
            for (std::size_t r = first; r < last; ++r) {
                workers.emplace_back([&, r] {
                    try {
                        curves[r - first] = simulate_run(cfg, problem, r, &result.runs[r], observer);
                    } catch (...) {
                        errors[r - first] = std::current_exception();
                    }
                });
            }
            for (auto& w : workers) w.join();
            for (const auto& e : errors) {
                if (e) std::rethrow_exception(e);
            }
        }
        // fixed run order keeps the aggregate bit-identical for any thread count
        for (auto& c : curves) {
            agg.add(c);
            if (cfg.store_runs) result.curves.push_back(std::move(c));
        }
    }
    result.aggregate = agg.finish();
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace cmab
