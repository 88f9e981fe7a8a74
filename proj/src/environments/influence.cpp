#include "cmab/environments/influence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "cmab/core/errors.hpp"

namespace cmab {

InfluenceGraph::InfluenceGraph(std::size_t nodes, std::vector<InfluenceEdge> edges)
    : nodes_(nodes), edges_(std::move(edges)), out_(nodes), in_(nodes) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& edge = edges_[e];
        if (edge.src >= nodes_ || edge.dst >= nodes_) {
            throw std::invalid_argument("edge " + std::to_string(e) + " has an endpoint out of range");
        }
        if (!(edge.p >= 0.0 && edge.p <= 1.0)) {
            throw std::invalid_argument("edge " + std::to_string(e) + " probability outside [0, 1]");
        }
        if (!seen.emplace(edge.src, edge.dst).second) {
            throw std::invalid_argument("parallel edge " + std::to_string(edge.src) + " -> " +
                                        std::to_string(edge.dst));
        }
        out_[edge.src].push_back(e);
        in_[edge.dst].push_back(e);
    }
}

std::vector<double> InfluenceGraph::probabilities() const {
    std::vector<double> p(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) p[e] = edges_[e].p;
    return p;
}

namespace {

void check_seeds(const InfluenceGraph& graph, const SeedSet& seeds) {
    std::vector<char> seen(graph.node_count(), 0);
    for (std::size_t s : seeds.nodes) {
        if (s >= graph.node_count()) throw std::invalid_argument("seed node out of range");
        if (seen[s]) throw std::invalid_argument("duplicate seed node " + std::to_string(s));
        seen[s] = 1;
    }
}

}  // namespace

CascadeResult im_cascade(const InfluenceGraph& graph, const SeedSet& seeds,
                         std::span<const double> theta, Rng& rng) {
    check_seeds(graph, seeds);
    if (theta.size() != graph.edge_count()) throw std::invalid_argument("edge parameter vector has wrong length");

    CascadeResult out;
    std::vector<char> active(graph.node_count(), 0);
    for (std::size_t s : seeds.nodes) {
        active[s] = 1;
        out.influenced.push_back(s);
    }
    // out.influenced doubles as the BFS queue
    for (std::size_t head = 0; head < out.influenced.size(); ++head) {
        const std::size_t u = out.influenced[head];
        for (std::size_t e : graph.out_edges(u)) {
            std::bernoulli_distribution fire(theta[e]);
            const bool live = fire(rng);
            out.feedback.entries.push_back({BaseArmId{e}, live ? 1.0 : 0.0});
            const std::size_t v = graph.edge(e).dst;
            if (live && !active[v]) {
                active[v] = 1;
                out.influenced.push_back(v);
            }
        }
    }
    return out;
}

CascadeResult im_cascade(const InfluenceGraph& graph, const SeedSet& seeds, Rng& rng) {
    const auto p = graph.probabilities();
    return im_cascade(graph, seeds, p, rng);
}

double im_spread(const InfluenceGraph& graph, const SeedSet& seeds, std::span<const double> theta,
                 std::size_t n_mc, Rng& rng) {
    if (n_mc == 0) throw std::invalid_argument("im_spread needs n_mc >= 1");
    double total = 0.0;
    for (std::size_t r = 0; r < n_mc; ++r) {
        total += static_cast<double>(im_cascade(graph, seeds, theta, rng).influenced.size());
    }
    return total / static_cast<double>(n_mc);
}

double im_spread(const InfluenceGraph& graph, const SeedSet& seeds, std::size_t n_mc, Rng& rng) {
    const auto p = graph.probabilities();
    return im_spread(graph, seeds, p, n_mc, rng);
}

namespace {

struct BranchState {
    std::vector<char> active;
    std::deque<std::size_t> pending;  // edges out of active nodes, not yet resolved
};

void branch(const InfluenceGraph& graph, std::span<const double> theta, BranchState state,
            double prob, std::vector<double>& acc) {
    while (!state.pending.empty()) {
        const std::size_t e = state.pending.front();
        state.pending.pop_front();
        const std::size_t v = graph.edge(e).dst;
        const double p = theta[e];
        if (state.active[v] || p <= 0.0) continue;
        if (p >= 1.0) {
            state.active[v] = 1;
            for (std::size_t f : graph.out_edges(v)) state.pending.push_back(f);
            continue;
        }
        BranchState live = state;
        live.active[v] = 1;
        for (std::size_t f : graph.out_edges(v)) live.pending.push_back(f);
        branch(graph, theta, std::move(live), prob * p, acc);
        prob *= 1.0 - p;
    }
    for (std::size_t v = 0; v < state.active.size(); ++v) {
        if (state.active[v]) acc[v] += prob;
    }
}

}  // namespace

std::vector<double> exact_activation_probs(const InfluenceGraph& graph, const SeedSet& seeds,
                                           std::span<const double> theta,
                                           std::size_t max_branch_edges) {
    check_seeds(graph, seeds);
    if (theta.size() != graph.edge_count()) throw std::invalid_argument("edge parameter vector has wrong length");

    // Count uncertain edges reachable from the seeds to bound the branching.
    std::vector<char> reach(graph.node_count(), 0);
    std::vector<std::size_t> queue(seeds.nodes.begin(), seeds.nodes.end());
    for (std::size_t s : queue) reach[s] = 1;
    std::size_t uncertain = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t e : graph.out_edges(queue[head])) {
            if (theta[e] <= 0.0) continue;
            if (theta[e] < 1.0) ++uncertain;
            const std::size_t v = graph.edge(e).dst;
            if (!reach[v]) {
                reach[v] = 1;
                queue.push_back(v);
            }
        }
    }
    if (uncertain > max_branch_edges) {
        throw ConfigError("exact spread needs " + std::to_string(uncertain) +
                          " uncertain edges, above the enumeration limit of " +
                          std::to_string(max_branch_edges));
    }

    BranchState state;
    state.active.assign(graph.node_count(), 0);
    for (std::size_t s : seeds.nodes) {
        state.active[s] = 1;
        for (std::size_t e : graph.out_edges(s)) state.pending.push_back(e);
    }
    std::vector<double> acc(graph.node_count(), 0.0);
    branch(graph, theta, std::move(state), 1.0, acc);
    // Leaf weights sum to 1 only up to rounding; seeds are active with certainty.
    for (std::size_t s : seeds.nodes) acc[s] = 1.0;
    return acc;
}

InfluenceEnvironment::InfluenceEnvironment(InfluenceGraph graph, std::size_t seed_count)
    : graph_(std::move(graph)), seed_count_(seed_count), means_(graph_.probabilities()) {
    if (seed_count_ == 0 || seed_count_ > graph_.node_count()) {
        throw std::invalid_argument("seed count must be in [1, n]");
    }
}

const SeedSet& InfluenceEnvironment::seeds_of(const SuperArm& s) const {
    const auto* seeds = std::get_if<SeedSet>(&s);
    if (seeds == nullptr) throw std::invalid_argument("influence environment expects a seed set");
    return *seeds;
}

void InfluenceEnvironment::validate(const SuperArm& s) const {
    const auto& seeds = seeds_of(s);
    if (seeds.nodes.size() != seed_count_) throw std::invalid_argument("seed set must have exactly K nodes");
    check_seeds(graph_, seeds);
}

double InfluenceEnvironment::reward(const SuperArm& s, std::span<const double> theta) const {
    validate(s);
    if (!has_closed_form_reward()) {
        throw ConfigError("exact influence spread is only available for graphs with at most " +
                          std::to_string(kExactEdgeLimit) + " edges");
    }
    const auto probs = exact_activation_probs(graph_, seeds_of(s), theta, kExactEdgeLimit);
    double total = 0.0;
    for (double p : probs) total += p;
    return total;
}

std::vector<BaseArmId> InfluenceEnvironment::triggering_set(const SuperArm& s) const {
    validate(s);
    const auto& seeds = seeds_of(s);
    std::vector<char> reach(graph_.node_count(), 0);
    std::vector<std::size_t> queue(seeds.nodes.begin(), seeds.nodes.end());
    for (std::size_t v : queue) reach[v] = 1;
    std::vector<BaseArmId> out;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t e : graph_.out_edges(queue[head])) {
            out.push_back(BaseArmId{e});
            const std::size_t v = graph_.edge(e).dst;
            if (!reach[v]) {
                reach[v] = 1;
                queue.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BaseArmId> InfluenceEnvironment::selected_arms(const SuperArm& s) const {
    validate(s);
    std::vector<BaseArmId> out;
    for (std::size_t v : seeds_of(s).nodes) {
        for (std::size_t e : graph_.out_edges(v)) out.push_back(BaseArmId{e});
    }
    std::sort(out.begin(), out.end());
    return out;
}

double InfluenceEnvironment::triggering_prob(const SuperArm& s, BaseArmId arm) const {
    validate(s);
    if (arm.value >= arm_count()) throw std::invalid_argument("arm id out of range");
    const auto probs = exact_activation_probs(graph_, seeds_of(s), means_.values(), kExactEdgeLimit);
    return probs[graph_.edge(arm.value).src];
}

StepOutcome InfluenceEnvironment::step(const SuperArm& s, Rng& rng) const {
    validate(s);
    auto cascade = im_cascade(graph_, seeds_of(s), means_.values(), rng);
    StepOutcome out;
    out.reward = static_cast<double>(cascade.influenced.size());
    out.feedback = std::move(cascade.feedback);
    return out;
}

}  // namespace cmab
