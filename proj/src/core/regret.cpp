#include "cmab/core/regret.hpp"

#include <string>

#include "cmab/core/errors.hpp"

namespace cmab {

std::string_view to_string(RegretMode mode) {
    switch (mode) {
        case RegretMode::Expected: return "expected";
        case RegretMode::RealizedApprox: return "realized_approx";
    }
    return "unknown";
}

RegretMode regret_mode_from_string(std::string_view s) {
    if (s == "expected") return RegretMode::Expected;
    if (s == "realized_approx") return RegretMode::RealizedApprox;
    throw ConfigError("unknown regret mode '" + std::string(s) + "'");
}

RegretRecord RegretAccumulator::add(double opt_value, double round_value) {
    const double inst = regret_step(opt_value, round_value, mode_);
    cumulative_ += inst;
    ++round_;
    return RegretRecord{round_, inst, cumulative_, mode_};
}

}  // namespace cmab
