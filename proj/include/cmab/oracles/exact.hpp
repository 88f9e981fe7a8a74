#pragma once

#include <cstdint>

#include "cmab/environments/pmc.hpp"
#include "cmab/environments/routing.hpp"
#include "cmab/oracles/oracle.hpp"

namespace cmab {

/// Per user, the K items with the largest theta in decreasing order (ties:
/// lowest item id). Exact for both cascade forms since each user's reward
/// depends only on the chosen set. theta is user-major (j * V + i).
RankedLists topk_oracle(std::span<const double> theta, std::size_t items, std::size_t users,
                        std::size_t k);

class TopKOracle final : public Oracle {
public:
    /// Throws std::invalid_argument when K > V.
    TopKOracle(std::size_t items, std::size_t users, std::size_t k);
    std::string_view name() const override { return "topk"; }
    SuperArm solve(std::span<const double> theta, Rng&) override {
        return topk_oracle(theta, items_, users_, k_);
    }

private:
    std::size_t items_, users_, k_;
};

/// Number of size-k subsets of n items, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// argmax of the PMC reward over all size-K subsets, ties to the
/// lexicographically smallest subset.
class ExhaustiveSubsetOracle final : public Oracle {
public:
    static constexpr std::uint64_t kDefaultSubsetLimit = 1'000'000;

    /// `structure` supplies V, W, K and p*; its attraction matrix is ignored.
    /// Throws ConfigError when C(V, K) exceeds `subset_limit`.
    explicit ExhaustiveSubsetOracle(const PmcInstance& structure,
                                    std::uint64_t subset_limit = kDefaultSubsetLimit);

    std::string_view name() const override { return "exhaustive_subset"; }
    SuperArm solve(std::span<const double> theta, Rng&) override { return best(theta); }
    ItemSubset best(std::span<const double> theta) const;

private:
    std::size_t items_, users_, k_;
    double word_of_mouth_;
};

/// Most reliable source-destination path: minimum total -ln(theta) weight,
/// then fewest hops, then lexicographically smallest link sequence. Links
/// with theta = 0 are unusable; SimulationError when none remain connecting.
class ReliablePathOracle final : public Oracle {
public:
    explicit ReliablePathOracle(RoutingInstance structure);
    std::string_view name() const override { return "reliable_path"; }
    SuperArm solve(std::span<const double> theta, Rng&) override { return best(theta); }
    Path best(std::span<const double> theta) const;

private:
    RoutingInstance inst_;
    std::vector<std::vector<std::size_t>> out_;
};

}  // namespace cmab
