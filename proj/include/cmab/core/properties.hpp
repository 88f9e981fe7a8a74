#pragma once

#include "cmab/core/environment.hpp"

namespace cmab {

/// |r(S, mu) - r(S, mu')| <= B * ||mu_T - mu'_T||_1 over the triggering set T
/// of `s`. Checked with 1e-9 absolute slack. Throws ConfigError when the
/// environment has no closed-form reward.
bool check_lipschitz(const Environment& env, const SuperArm& s, const MeanVector& mu,
                     const MeanVector& mu_prime, double lipschitz_constant);

/// r(S, mu) <= r(S, mu') given mu <= mu' component-wise. Throws
/// std::invalid_argument if the precondition is violated and ConfigError when
/// the environment has no closed-form reward.
bool check_monotonicity(const Environment& env, const SuperArm& s, const MeanVector& mu,
                        const MeanVector& mu_prime);

}  // namespace cmab
