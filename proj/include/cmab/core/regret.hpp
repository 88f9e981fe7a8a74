#pragma once

#include <cstdint>
#include <string_view>

namespace cmab {

enum class RegretMode {
    Expected,        ///< closed-form r(S*, mu) - r(S(t), mu)
    RealizedApprox,  ///< alpha * beta * spread(S*) - realized spread
};

std::string_view to_string(RegretMode mode);
RegretMode regret_mode_from_string(std::string_view s);

struct RegretRecord {
    std::int64_t round = 0;
    double instantaneous_regret = 0.0;
    double cumulative_regret = 0.0;
    RegretMode mode = RegretMode::Expected;
};

/// Instantaneous regret of one round. In Expected mode `opt_value` is
/// r(S*, mu) and `round_value` is r(S(t), mu); in RealizedApprox mode they are
/// the scaled benchmark and the realized spread, so the result may be negative.
inline double regret_step(double opt_value, double round_value, RegretMode /*mode*/) {
    return opt_value - round_value;
}

/// Running prefix sum of instantaneous regrets.
class RegretAccumulator {
public:
    explicit RegretAccumulator(RegretMode mode) : mode_(mode) {}

    RegretRecord add(double opt_value, double round_value);

    double cumulative() const { return cumulative_; }
    std::int64_t rounds() const { return round_; }
    RegretMode mode() const { return mode_; }

private:
    RegretMode mode_;
    std::int64_t round_ = 0;
    double cumulative_ = 0.0;
};

}  // namespace cmab
