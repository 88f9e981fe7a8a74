#pragma once

#include <vector>

#include "cmab/core/environment.hpp"

namespace cmab {

struct Link {
    std::size_t src = 0;
    std::size_t dst = 0;
    double p = 1.0;  // success probability
};

/// Directed network with unreliable links. Link ids are the base arm ids.
struct RoutingInstance {
    std::size_t nodes = 0;
    std::vector<Link> links;
    std::size_t source = 0;
    std::size_t destination = 0;
};

/// Product of `theta` over the links of `path`. Throws std::invalid_argument
/// if `path` is not a simple source-to-destination path of `inst`.
double path_reliability(const RoutingInstance& inst, const Path& path, std::span<const double> theta);

/// Throws std::invalid_argument unless `path` is a non-empty simple path from
/// source to destination.
void validate_path(const RoutingInstance& inst, const Path& path);

/// Conjunctive cascade over one path: links are probed in order and the
/// feedback stops at the first failure.
class RoutingEnvironment final : public Environment {
public:
    /// Requires all link probabilities in (0, 1] and a source-destination path.
    explicit RoutingEnvironment(RoutingInstance inst);

    const RoutingInstance& instance() const { return inst_; }
    /// Outgoing link ids per node, ascending.
    const std::vector<std::vector<std::size_t>>& adjacency() const { return out_; }

    std::string_view family() const override { return "routing"; }
    std::size_t arm_count() const override { return inst_.links.size(); }
    const MeanVector& means() const override { return means_; }
    void validate(const SuperArm& s) const override;

    double reward(const SuperArm& s, std::span<const double> theta) const override;
    std::vector<BaseArmId> triggering_set(const SuperArm& s) const override;
    std::vector<BaseArmId> selected_arms(const SuperArm& s) const override;
    double triggering_prob(const SuperArm& s, BaseArmId arm) const override;
    /// Reward is 1 when every link on the path succeeds.
    StepOutcome step(const SuperArm& s, Rng& rng) const override;

private:
    const Path& path_of(const SuperArm& s) const;

    RoutingInstance inst_;
    std::vector<std::vector<std::size_t>> out_;
    MeanVector means_;
};

}  // namespace cmab
