#include "cmab/policies/ucb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cmab/core/errors.hpp"

namespace cmab {

void UcbState::observe(const Feedback& feedback) {
    for (const auto& obs : feedback.entries) {
        const std::size_t i = obs.arm.value;
        if (i >= size()) throw std::invalid_argument("feedback arm " + std::to_string(i) + " out of range");
        if (!(obs.outcome >= 0.0 && obs.outcome <= 1.0)) {
            throw std::invalid_argument("outcome outside [0, 1]");
        }
        ++count[i];
        sum[i] += obs.outcome;
    }
}

MeanVector cucb_indices(const UcbState& state, double exploration_constant) {
    if (state.t < 1) throw std::invalid_argument("UCB indices need t >= 1");
    const double log_t = std::log(static_cast<double>(state.t));
    std::vector<double> idx(state.size(), 1.0);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (state.count[i] == 0) continue;
        const double bonus = std::sqrt(exploration_constant * log_t / static_cast<double>(state.count[i]));
        idx[i] = std::min(1.0, state.mean(i) + bonus);
    }
    return MeanVector(std::move(idx));
}

double bernoulli_kl(double p, double q) {
    double kl = 0.0;
    if (p > 0.0) kl += p * std::log(p / q);
    if (p < 1.0) kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
    return kl;
}

double klucb_index(double mu_hat, std::int64_t n, std::int64_t t) {
    if (n <= 0) throw std::invalid_argument("KL-UCB index undefined for N = 0");
    if (t < 1) throw std::invalid_argument("KL-UCB index needs t >= 1");
    if (!(mu_hat >= 0.0 && mu_hat <= 1.0)) throw std::invalid_argument("mu_hat outside [0, 1]");
    if (mu_hat >= 1.0) return 1.0;

    const double log_t = std::log(static_cast<double>(t));
    const double log_log_t = log_t > 0.0 ? std::max(0.0, std::log(log_t)) : 0.0;
    const double budget = (log_t + 3.0 * log_log_t) / static_cast<double>(n);

    // kl(mu_hat, .) is increasing on [mu_hat, 1) and diverges at 1.
    double lo = mu_hat;
    double hi = 1.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (bernoulli_kl(mu_hat, mid) <= budget) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

std::string_view to_string(TieOrder o) { return o == TieOrder::Random ? "random" : "lowest_index"; }

TieOrder tie_order_from_string(std::string_view s) {
    if (s == "random") return TieOrder::Random;
    if (s == "lowest_index") return TieOrder::LowestIndex;
    throw ConfigError("unknown tie order '" + std::string(s) + "' (expected random or lowest_index)");
}

void randomize_saturated(std::vector<double>& index, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& x : index) {
        if (x >= 1.0) x = 1.0 - 1e-12 * u(rng);
    }
}

UcbPolicy::UcbPolicy(std::string name, std::size_t arms, IndexRule rule, double exploration_constant,
                     bool observe_all_first, TieOrder ties)
    : name_(std::move(name)),
      state_(arms),
      rule_(rule),
      exploration_constant_(exploration_constant),
      observe_all_first_(observe_all_first),
      ties_(ties) {
    if (!(exploration_constant_ > 0.0)) throw ConfigError("UCB exploration constant must be > 0");
}

void UcbPolicy::initialize(const Environment& env, Rng& env_rng) {
    if (observe_all_first_) state_.observe(env.observe_all(env_rng));
}

MeanVector UcbPolicy::parameters(std::int64_t round, Rng& rng) {
    state_.t = round;
    std::vector<double> idx;
    if (rule_ == IndexRule::Cucb) {
        const MeanVector v = cucb_indices(state_, exploration_constant_);
        idx.assign(v.values().begin(), v.values().end());
    } else {
        idx.assign(state_.size(), 1.0);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (state_.count[i] > 0) {
                idx[i] = klucb_index(state_.mean(i), state_.count[i], std::max<std::int64_t>(round, 1));
            }
        }
    }
    if (ties_ == TieOrder::Random) randomize_saturated(idx, rng);
    return MeanVector(std::move(idx));
}

void UcbPolicy::update(const Feedback& feedback, Rng&) { state_.observe(feedback); }

std::string_view to_string(TsWidth w) {
    return w == TsWidth::VarianceAware ? "variance_aware" : "gaussian_only";
}

TsWidth ts_width_from_string(std::string_view s) {
    if (s == "variance_aware") return TsWidth::VarianceAware;
    if (s == "gaussian_only") return TsWidth::GaussianOnly;
    throw ConfigError("unknown TS-Cascade width form '" + std::string(s) + "'");
}

double ts_cascade_width(const UcbState& state, std::size_t i, TsWidth form) {
    const double mu = state.mean(i);
    const double log_term = std::log(static_cast<double>(state.t) + 1.0);
    const double denom = static_cast<double>(state.count[i]) + 1.0;
    const double gaussian = std::sqrt(mu * (1.0 - mu) * log_term / denom);
    if (form == TsWidth::GaussianOnly) return gaussian;
    return std::max(gaussian, log_term / denom);
}

MeanVector ts_cascade_theta(const UcbState& state, TsWidth form, double z) {
    std::vector<double> theta(state.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] = std::clamp(state.mean(i) + z * ts_cascade_width(state, i, form), 0.0, 1.0);
    }
    return MeanVector(std::move(theta));
}

MeanVector ts_cascade_sample(const UcbState& state, TsWidth form, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    return ts_cascade_theta(state, form, normal(rng));
}

MeanVector TsCascadePolicy::parameters(std::int64_t round, Rng& rng) {
    state_.t = round;
    if (forced_z_) return ts_cascade_theta(state_, form_, *forced_z_);
    return ts_cascade_sample(state_, form_, rng);
}

}  // namespace cmab
