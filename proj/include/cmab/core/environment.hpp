#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cmab/core/types.hpp"

namespace cmab {

/// A CMAB-PTA problem instance together with its stochastic simulator.
///
/// Implementations are immutable after construction. `step` is reentrant as
/// long as concurrent callers pass distinct generators.
class Environment {
public:
    virtual ~Environment() = default;

    virtual std::string_view family() const = 0;

    /// m, the number of base arms.
    virtual std::size_t arm_count() const = 0;

    /// True mean outcome vector.
    virtual const MeanVector& means() const = 0;

    /// Throws std::invalid_argument when `s` is not feasible for this instance.
    virtual void validate(const SuperArm& s) const = 0;

    /// False when the expected reward has no closed form (influence spread on
    /// graphs too large for exact enumeration).
    virtual bool has_closed_form_reward() const { return true; }

    /// Expected reward r(S, theta).
    virtual double reward(const SuperArm& s, std::span<const double> theta) const = 0;

    /// Arms with non-zero triggering probability under the true means, sorted.
    virtual std::vector<BaseArmId> triggering_set(const SuperArm& s) const = 0;

    /// Arms triggered with probability one, sorted.
    virtual std::vector<BaseArmId> selected_arms(const SuperArm& s) const = 0;

    /// Exact probability that `arm` is observed when `s` is played.
    virtual double triggering_prob(const SuperArm& s, BaseArmId arm) const = 0;

    /// Plays `s` once.
    virtual StepOutcome step(const SuperArm& s, Rng& rng) const = 0;

    /// One independent Bernoulli(mu_i) outcome for every base arm, in arm order.
    /// Used by policies with an observe-everything initialization sweep.
    Feedback observe_all(Rng& rng) const;
};

}  // namespace cmab
