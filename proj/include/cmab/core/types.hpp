#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace cmab {

/// Every stochastic component takes an explicit generator of this type.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed for sub-stream `stream` of a parent seed.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream);

/// Index of a base arm in [0, m).
struct BaseArmId {
    std::size_t value = 0;

    friend bool operator==(BaseArmId, BaseArmId) = default;
    friend auto operator<=>(BaseArmId, BaseArmId) = default;
};

/// A length-m vector with every entry in [0, 1]. Holds true means, posterior
/// samples and UCB-style index vectors alike.
class MeanVector {
public:
    MeanVector() = default;
    explicit MeanVector(std::vector<double> values);
    /// m copies of `fill`.
    MeanVector(std::size_t m, double fill);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double operator[](BaseArmId i) const { return values_[i.value]; }
    std::span<const double> values() const { return values_; }

    /// Sets one entry; throws std::invalid_argument outside [0, 1].
    void set(std::size_t i, double v);

    friend bool operator==(const MeanVector&, const MeanVector&) = default;

private:
    std::vector<double> values_;
};

/// One K-tuple of item ids per user, in rank order.
struct RankedLists {
    std::vector<std::vector<std::size_t>> lists;
    friend bool operator==(const RankedLists&, const RankedLists&) = default;
};

/// K distinct item ids, sorted ascending.
struct ItemSubset {
    std::vector<std::size_t> items;
    friend bool operator==(const ItemSubset&, const ItemSubset&) = default;
};

/// K distinct node ids, sorted ascending.
struct SeedSet {
    std::vector<std::size_t> nodes;
    friend bool operator==(const SeedSet&, const SeedSet&) = default;
};

/// Ordered edge ids from source to destination.
struct Path {
    std::vector<std::size_t> edges;
    friend bool operator==(const Path&, const Path&) = default;
};

using SuperArm = std::variant<RankedLists, ItemSubset, SeedSet, Path>;

struct Observation {
    BaseArmId arm;
    double outcome = 0.0;
};

/// Semi-bandit observation Q(t): outcomes of the arms triggered in one round.
struct Feedback {
    std::int64_t round = 0;
    std::vector<Observation> entries;
};

/// Result of playing a super arm once.
struct StepOutcome {
    Feedback feedback;
    double reward = 0.0;
};

}  // namespace cmab
