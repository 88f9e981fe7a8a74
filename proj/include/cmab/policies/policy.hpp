#pragma once

#include <cstdint>
#include <string_view>

#include "cmab/core/environment.hpp"

namespace cmab {

/// A learner that turns its statistics into a parameter vector for the
/// oracle each round and absorbs semi-bandit feedback afterwards.
class Policy {
public:
    virtual ~Policy() = default;

    virtual std::string_view name() const = 0;

    /// Runs once before round 1. The default does nothing; policies with an
    /// observe-everything initialization draw it from `env` with `env_rng`.
    virtual void initialize(const Environment& /*env*/, Rng& /*env_rng*/) {}

    /// theta(t): a posterior sample or an index vector. `round` starts at 1.
    virtual MeanVector parameters(std::int64_t round, Rng& rng) = 0;

    virtual void update(const Feedback& feedback, Rng& rng) = 0;
};

/// Always reports the true means, so an exact oracle replays S*.
class OracleReplayPolicy final : public Policy {
public:
    explicit OracleReplayPolicy(MeanVector truth) : truth_(std::move(truth)) {}

    std::string_view name() const override { return "oracle_replay"; }
    MeanVector parameters(std::int64_t, Rng&) override { return truth_; }
    void update(const Feedback&, Rng&) override {}

private:
    MeanVector truth_;
};

}  // namespace cmab
