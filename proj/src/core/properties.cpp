#include "cmab/core/properties.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cmab/core/errors.hpp"

namespace cmab {

namespace {

constexpr double kTolerance = 1e-9;

void require_closed_form(const Environment& env) {
    if (!env.has_closed_form_reward()) {
        throw ConfigError("environment '" + std::string(env.family()) +
                          "' has no closed-form reward for property checks");
    }
}

void require_sizes(const Environment& env, const MeanVector& a, const MeanVector& b) {
    if (a.size() != env.arm_count() || b.size() != env.arm_count()) {
        throw std::invalid_argument("mean vector length does not match arm count");
    }
}

}  // namespace

bool check_lipschitz(const Environment& env, const SuperArm& s, const MeanVector& mu,
                     const MeanVector& mu_prime, double lipschitz_constant) {
    require_closed_form(env);
    require_sizes(env, mu, mu_prime);
    if (!(lipschitz_constant > 0.0)) throw std::invalid_argument("Lipschitz constant must be > 0");

    const double lhs = std::abs(env.reward(s, mu.values()) - env.reward(s, mu_prime.values()));
    double l1 = 0.0;
    for (BaseArmId i : env.triggering_set(s)) l1 += std::abs(mu[i] - mu_prime[i]);
    return lhs <= lipschitz_constant * l1 + kTolerance;
}

bool check_monotonicity(const Environment& env, const SuperArm& s, const MeanVector& mu,
                        const MeanVector& mu_prime) {
    require_closed_form(env);
    require_sizes(env, mu, mu_prime);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (mu[i] > mu_prime[i]) {
            throw std::invalid_argument("monotonicity check requires mu <= mu' component-wise (arm " +
                                        std::to_string(i) + ")");
        }
    }
    return env.reward(s, mu.values()) <= env.reward(s, mu_prime.values()) + kTolerance;
}

}  // namespace cmab
