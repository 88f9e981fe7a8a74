#pragma once

#include <cstdint>
#include <vector>

#include "cmab/environments/influence.hpp"
#include "cmab/oracles/oracle.hpp"

namespace cmab {

/// Knobs of the reverse-reachable-set influence maximization oracle.
struct RrGreedyParams {
    double epsilon = 0.1;                  // approximation slack, in (0, 1)
    double ell = 1.0;                      // failure exponent, >= 1
    std::uint64_t rr_budget = 1'000'000;   // cap on RR sets per phase
    double kpt_constant = 6.0;             // KPT estimation sample-size constant
    double refine_constant = 5.0;          // eps' = refine_constant * (ell eps^2 / (K + ell))^(1/3)
};

struct RrGreedyResult {
    SeedSet seeds;
    std::uint64_t rr_sets = 0;       // total generated over all phases
    std::uint64_t selection_sets = 0;
    double kpt = 0.0;                // lower bound on OPT used to size the final phase
    double coverage = 0.0;           // fraction of final-phase RR sets covered by the seeds
    bool budget_exhausted = false;   // final phase was truncated at rr_budget
};

/// Approximation factor 1 - 1/e - eps.
double rr_alpha(double epsilon);
/// Success probability 1 - 3 n^-ell.
double rr_beta(std::size_t nodes, double ell);

/// Flat storage of reverse-reachable sets.
class RrCollection {
public:
    void clear();
    void add(std::span<const std::uint32_t> nodes);
    std::size_t size() const { return offsets_.size() - 1; }
    std::span<const std::uint32_t> at(std::size_t r) const;

private:
    std::vector<std::uint32_t> nodes_;
    std::vector<std::size_t> offsets_{0};
};

/// Greedy maximum coverage over `sets`, ties to the lowest node id. Returns
/// the chosen nodes in selection order and writes the covered-set count.
std::vector<std::size_t> greedy_max_coverage(const RrCollection& sets, std::size_t nodes,
                                             std::size_t k, std::size_t* covered = nullptr);

/// Two-phase TIM+ style schedule: KPT estimation, KPT refinement, then node
/// selection by greedy coverage over theta-many RR sets.
class RrGreedyOracle final : public Oracle {
public:
    /// Throws std::invalid_argument when K > n, eps outside (0, 1) or ell < 1.
    RrGreedyOracle(const InfluenceGraph& graph, std::size_t k, RrGreedyParams params = {});

    std::string_view name() const override { return "rr_greedy"; }
    SuperArm solve(std::span<const double> theta, Rng& rng) override;
    RrGreedyResult run(std::span<const double> theta, Rng& rng);

    /// Number of solves whose final phase hit the budget.
    std::uint64_t budget_warnings() const { return budget_warnings_; }

private:
    /// Samples one RR set into scratch_; returns its width (in-edges of its nodes).
    std::size_t sample_rr_set(std::span<const double> theta, Rng& rng);
    void sample_into(RrCollection& sets, std::size_t count, std::span<const double> theta, Rng& rng,
                     double* kappa_sum);

    InfluenceGraph graph_;
    std::size_t k_;
    RrGreedyParams params_;
    std::uint64_t budget_warnings_ = 0;

    std::vector<std::uint32_t> scratch_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t current_stamp_ = 0;
};

}  // namespace cmab
