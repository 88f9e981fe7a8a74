#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmab/policies/policy.hpp"

namespace cmab {

/// Per-arm observation counts and outcome sums.
struct UcbState {
    std::vector<std::int64_t> count;
    std::vector<double> sum;
    std::int64_t t = 0;  // current round

    explicit UcbState(std::size_t arms) : count(arms, 0), sum(arms, 0.0) {}

    std::size_t size() const { return count.size(); }
    double mean(std::size_t i) const { return count[i] > 0 ? sum[i] / static_cast<double>(count[i]) : 0.0; }

    /// Adds every observation; throws std::invalid_argument on unknown arms or
    /// outcomes outside [0, 1].
    void observe(const Feedback& feedback);
};

/// min{1, mu_hat + sqrt(c ln t / N)} per arm, and 1 for unobserved arms.
/// c = 1.5 is the standard CUCB constant. Throws std::invalid_argument when t < 1.
MeanVector cucb_indices(const UcbState& state, double exploration_constant = 1.5);

/// Bernoulli KL divergence kl(p, q) with 0 ln 0 = 0.
double bernoulli_kl(double p, double q);

/// sup{q in [mu_hat, 1] : N kl(mu_hat, q) <= ln t + 3 ln ln t}, bisection to
/// 1e-9. ln ln t is clamped at 0 for t < e. Throws std::invalid_argument when
/// N == 0 (callers use index 1), t < 1, or mu_hat outside [0, 1].
double klucb_index(double mu_hat, std::int64_t n, std::int64_t t);

enum class IndexRule { Cucb, KlUcb };

/// How index policies order arms whose index is saturated at 1 (all
/// unobserved arms, and every arm while its bonus is large).
enum class TieOrder {
    Random,       ///< a fresh random order each round, drawn from the policy generator
    LowestIndex,  ///< left to the oracle's lowest-id rule
};

std::string_view to_string(TieOrder o);
TieOrder tie_order_from_string(std::string_view s);

/// Replaces every entry equal to 1 by 1 - 1e-12 U with U ~ Uniform[0, 1), one
/// draw per saturated entry in arm order. Unsaturated entries are untouched.
void randomize_saturated(std::vector<double>& index, Rng& rng);

/// Index policies: CUCB, CascadeUCB1 (CUCB index plus one free observation of
/// every arm before round 1) and CascadeKL-UCB.
class UcbPolicy final : public Policy {
public:
    UcbPolicy(std::string name, std::size_t arms, IndexRule rule, double exploration_constant,
              bool observe_all_first, TieOrder ties = TieOrder::Random);

    std::string_view name() const override { return name_; }
    void initialize(const Environment& env, Rng& env_rng) override;
    MeanVector parameters(std::int64_t round, Rng& rng) override;
    void update(const Feedback& feedback, Rng& rng) override;

    const UcbState& state() const { return state_; }

private:
    std::string name_;
    UcbState state_;
    IndexRule rule_;
    double exploration_constant_;
    bool observe_all_first_;
    TieOrder ties_;
};

enum class TsWidth {
    VarianceAware,  ///< max{sqrt(v ln(t+1)/(N+1)), ln(t+1)/(N+1)}, v = mu_hat (1 - mu_hat)
    GaussianOnly,   ///< sqrt(v ln(t+1)/(N+1))
};

std::string_view to_string(TsWidth w);
TsWidth ts_width_from_string(std::string_view s);

/// Posterior width of arm i at round state.t.
double ts_cascade_width(const UcbState& state, std::size_t i, TsWidth form);

/// clip(mu_hat_i + z * width_i) with one shared perturbation z.
MeanVector ts_cascade_theta(const UcbState& state, TsWidth form, double z);

/// Draws z ~ N(0, 1) once and applies it to every arm.
MeanVector ts_cascade_sample(const UcbState& state, TsWidth form, Rng& rng);

/// Thompson sampling with a single shared Gaussian perturbation per round.
class TsCascadePolicy final : public Policy {
public:
    TsCascadePolicy(std::size_t arms, TsWidth form) : state_(arms), form_(form) {}

    std::string_view name() const override { return "ts_cascade"; }
    MeanVector parameters(std::int64_t round, Rng& rng) override;
    void update(const Feedback& feedback, Rng&) override { state_.observe(feedback); }

    /// Test hook: pins z for every subsequent round.
    void force_perturbation(std::optional<double> z) { forced_z_ = z; }
    const UcbState& state() const { return state_; }

private:
    UcbState state_;
    TsWidth form_;
    std::optional<double> forced_z_;
};

}  // namespace cmab
