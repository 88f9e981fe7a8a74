#pragma once

#include <vector>

#include "cmab/policies/policy.hpp"

namespace cmab {

/// Beta(a_i, b_i) posterior per base arm.
struct CtsState {
    std::vector<double> a;
    std::vector<double> b;

    /// Uniform prior unless overridden; priors must be positive.
    explicit CtsState(std::size_t arms, double prior_a = 1.0, double prior_b = 1.0);

    std::size_t size() const { return a.size(); }
    double posterior_mean(std::size_t i) const { return a[i] / (a[i] + b[i]); }
};

/// One independent Beta draw per arm.
MeanVector cts_sample(const CtsState& state, Rng& rng);

/// Bernoulli-rounds each observed outcome and adds it to the Beta counts.
/// Outcomes of exactly 0 or 1 are used as-is without touching `rng`.
/// Throws std::invalid_argument for outcomes outside [0, 1] or unknown arms.
void cts_update(CtsState& state, const Feedback& feedback, Rng& rng);

/// Combinatorial Thompson sampling with Beta posteriors.
class CtsPolicy final : public Policy {
public:
    explicit CtsPolicy(std::size_t arms, double prior_a = 1.0, double prior_b = 1.0)
        : state_(arms, prior_a, prior_b) {}

    std::string_view name() const override { return "cts"; }
    MeanVector parameters(std::int64_t, Rng& rng) override { return cts_sample(state_, rng); }
    void update(const Feedback& feedback, Rng& rng) override { cts_update(state_, feedback, rng); }

    const CtsState& state() const { return state_; }

private:
    CtsState state_;
};

}  // namespace cmab
