#include "cmab/harness/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cmab {

void StreamingAggregate::add(std::span<const double> curve) {
    if (curve.size() != mean_.size()) {
        throw std::invalid_argument("aggregate: curve has " + std::to_string(curve.size()) + " rounds, expected " +
                                    std::to_string(mean_.size()));
    }
    ++runs_;
    const double n = static_cast<double>(runs_);
    for (std::size_t t = 0; t < curve.size(); ++t) {
        const double delta = curve[t] - mean_[t];
        mean_[t] += delta / n;
        m2_[t] += delta * (curve[t] - mean_[t]);
    }
}

AggregateCurve StreamingAggregate::finish() const {
    if (runs_ == 0) throw std::invalid_argument("aggregate: no runs");
    AggregateCurve out;
    out.mean = mean_;
    out.runs = runs_;
    out.single_run = runs_ == 1;
    out.std.assign(mean_.size(), 0.0);
    if (runs_ > 1) {
        const double denom = static_cast<double>(runs_ - 1);
        for (std::size_t t = 0; t < m2_.size(); ++t) out.std[t] = std::sqrt(std::max(0.0, m2_[t] / denom));
    }
    return out;
}

AggregateCurve aggregate(const std::vector<std::vector<double>>& curves) {
    if (curves.empty()) throw std::invalid_argument("aggregate: no runs");
    StreamingAggregate acc(curves.front().size());
    for (const auto& c : curves) acc.add(c);
    return acc.finish();
}

}  // namespace cmab
