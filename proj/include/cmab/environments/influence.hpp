#pragma once

#include <vector>

#include "cmab/core/environment.hpp"

namespace cmab {

struct InfluenceEdge {
    std::size_t src = 0;
    std::size_t dst = 0;
    double p = 0.0;
};

/// Directed influence graph. Edge ids are positions in `edges()`; they are the
/// base arm ids of the influence-maximization problem.
class InfluenceGraph {
public:
    InfluenceGraph() = default;
    /// Throws std::invalid_argument on out-of-range endpoints, probabilities
    /// outside [0, 1], or parallel edges.
    InfluenceGraph(std::size_t nodes, std::vector<InfluenceEdge> edges);

    std::size_t node_count() const { return nodes_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<InfluenceEdge>& edges() const { return edges_; }
    const InfluenceEdge& edge(std::size_t e) const { return edges_[e]; }

    /// Edge ids leaving / entering `node`, ascending.
    const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_[node]; }
    const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_[node]; }

    std::vector<double> probabilities() const;

private:
    std::size_t nodes_ = 0;
    std::vector<InfluenceEdge> edges_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

struct CascadeResult {
    std::vector<std::size_t> influenced;  // activation order
    Feedback feedback;                    // every out-edge of every influenced node
};

/// Independent cascade from `seeds` with edge probabilities `theta` (one per
/// edge). Each influenced node fires each outgoing edge exactly once.
CascadeResult im_cascade(const InfluenceGraph& graph, const SeedSet& seeds,
                         std::span<const double> theta, Rng& rng);
CascadeResult im_cascade(const InfluenceGraph& graph, const SeedSet& seeds, Rng& rng);

/// Mean cascade size over `n_mc` simulations. Throws std::invalid_argument on n_mc == 0.
double im_spread(const InfluenceGraph& graph, const SeedSet& seeds, std::size_t n_mc, Rng& rng);
double im_spread(const InfluenceGraph& graph, const SeedSet& seeds, std::span<const double> theta,
                 std::size_t n_mc, Rng& rng);

/// Exact per-node activation probabilities by branching on every edge whose
/// firing can change the influenced set. Exponential; guarded by
/// `max_branch_edges` (throws ConfigError beyond it).
std::vector<double> exact_activation_probs(const InfluenceGraph& graph, const SeedSet& seeds,
                                           std::span<const double> theta,
                                           std::size_t max_branch_edges = 24);

class InfluenceEnvironment final : public Environment {
public:
    /// Exact rewards are offered when the graph has at most this many edges.
    static constexpr std::size_t kExactEdgeLimit = 24;

    InfluenceEnvironment(InfluenceGraph graph, std::size_t seed_count);

    const InfluenceGraph& graph() const { return graph_; }
    std::size_t seed_count() const { return seed_count_; }

    std::string_view family() const override { return "influence"; }
    std::size_t arm_count() const override { return graph_.edge_count(); }
    const MeanVector& means() const override { return means_; }
    void validate(const SuperArm& s) const override;

    bool has_closed_form_reward() const override { return graph_.edge_count() <= kExactEdgeLimit; }
    /// Exact expected spread; ConfigError on graphs above kExactEdgeLimit.
    double reward(const SuperArm& s, std::span<const double> theta) const override;

    /// Out-edges of every node reachable from the seeds in the graph.
    std::vector<BaseArmId> triggering_set(const SuperArm& s) const override;
    /// Out-edges of the seeds.
    std::vector<BaseArmId> selected_arms(const SuperArm& s) const override;
    /// Probability that the edge's source node is influenced (exact, small graphs only).
    double triggering_prob(const SuperArm& s, BaseArmId arm) const override;

    /// Realized reward is the number of influenced nodes.
    StepOutcome step(const SuperArm& s, Rng& rng) const override;

private:
    const SeedSet& seeds_of(const SuperArm& s) const;

    InfluenceGraph graph_;
    std::size_t seed_count_;
    MeanVector means_;
};

}  // namespace cmab
