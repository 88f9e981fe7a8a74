#pragma once

#include <span>
#include <vector>

namespace cmab {

/// Per-round mean and sample standard deviation (n - 1 denominator) of
/// cumulative regret across runs.
struct AggregateCurve {
    std::vector<double> mean;
    std::vector<double> std;
    std::size_t runs = 0;
    bool single_run = false;  // std is 0 by convention
};

/// Welford accumulation, one curve at a time. Memory is O(T) regardless of
/// the number of runs. Curves must be added in a fixed order for
/// bit-reproducible output.
class StreamingAggregate {
public:
    explicit StreamingAggregate(std::size_t horizon) : mean_(horizon, 0.0), m2_(horizon, 0.0) {}

    /// Throws std::invalid_argument when the curve length differs from the horizon.
    void add(std::span<const double> curve);

    std::size_t runs() const { return runs_; }
    std::size_t horizon() const { return mean_.size(); }
    /// Throws std::invalid_argument when no run was added.
    AggregateCurve finish() const;

private:
    std::vector<double> mean_;
    std::vector<double> m2_;
    std::size_t runs_ = 0;
};

/// Throws std::invalid_argument on an empty list or mismatched horizons.
AggregateCurve aggregate(const std::vector<std::vector<double>>& curves);

}  // namespace cmab
