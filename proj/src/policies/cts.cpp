#include "cmab/policies/cts.hpp"

#include <stdexcept>
#include <string>

namespace cmab {

CtsState::CtsState(std::size_t arms, double prior_a, double prior_b)
    : a(arms, prior_a), b(arms, prior_b) {
    if (!(prior_a > 0.0) || !(prior_b > 0.0)) throw std::invalid_argument("Beta prior counts must be positive");
}

MeanVector cts_sample(const CtsState& state, Rng& rng) {
    std::vector<double> theta(state.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        std::gamma_distribution<double> ga(state.a[i], 1.0);
        std::gamma_distribution<double> gb(state.b[i], 1.0);
        const double x = ga(rng);
        const double y = gb(rng);
        // Both draws can underflow to zero for tiny shapes; fall back to the mean.
        theta[i] = (x + y) > 0.0 ? x / (x + y) : state.posterior_mean(i);
    }
    return MeanVector(std::move(theta));
}

void cts_update(CtsState& state, const Feedback& feedback, Rng& rng) {
    for (const auto& obs : feedback.entries) {
        const std::size_t i = obs.arm.value;
        if (i >= state.size()) throw std::invalid_argument("feedback arm " + std::to_string(i) + " out of range");
        const double x = obs.outcome;
        if (!(x >= 0.0 && x <= 1.0)) {
            throw std::invalid_argument("outcome " + std::to_string(x) + " outside [0, 1]");
        }
        bool y;
        if (x == 0.0 || x == 1.0) {
            y = x == 1.0;
        } else {
            std::bernoulli_distribution coin(x);
            y = coin(rng);
        }
        if (y) {
            state.a[i] += 1.0;
        } else {
            state.b[i] += 1.0;
        }
    }
}

}  // namespace cmab
