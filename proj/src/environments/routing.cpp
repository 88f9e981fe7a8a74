#include "cmab/environments/routing.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace cmab {

void validate_path(const RoutingInstance& inst, const Path& path) {
    if (path.edges.empty()) throw std::invalid_argument("path must contain at least one link");
    std::vector<char> visited(inst.nodes, 0);
    std::size_t at = inst.source;
    visited[at] = 1;
    for (std::size_t e : path.edges) {
        if (e >= inst.links.size()) throw std::invalid_argument("link id " + std::to_string(e) + " out of range");
        const auto& link = inst.links[e];
        if (link.src != at) throw std::invalid_argument("path is disconnected at link " + std::to_string(e));
        at = link.dst;
        if (visited[at]) throw std::invalid_argument("path revisits node " + std::to_string(at));
        visited[at] = 1;
    }
    if (at != inst.destination) throw std::invalid_argument("path does not end at the destination");
}

double path_reliability(const RoutingInstance& inst, const Path& path, std::span<const double> theta) {
    validate_path(inst, path);
    if (theta.size() != inst.links.size()) throw std::invalid_argument("parameter vector has wrong length");
    double prod = 1.0;
    for (std::size_t e : path.edges) prod *= theta[e];
    return prod;
}

RoutingEnvironment::RoutingEnvironment(RoutingInstance inst) : inst_(std::move(inst)), out_(inst_.nodes) {
    if (inst_.source >= inst_.nodes || inst_.destination >= inst_.nodes) {
        throw std::invalid_argument("source or destination out of range");
    }
    if (inst_.source == inst_.destination) throw std::invalid_argument("source equals destination");
    std::vector<double> p;
    for (std::size_t e = 0; e < inst_.links.size(); ++e) {
        const auto& link = inst_.links[e];
        if (link.src >= inst_.nodes || link.dst >= inst_.nodes) {
            throw std::invalid_argument("link " + std::to_string(e) + " endpoint out of range");
        }
        if (!(link.p > 0.0 && link.p <= 1.0)) {
            throw std::invalid_argument("link " + std::to_string(e) + " probability outside (0, 1]");
        }
        out_[link.src].push_back(e);
        p.push_back(link.p);
    }
    means_ = MeanVector(std::move(p));

    std::vector<char> reach(inst_.nodes, 0);
    std::vector<std::size_t> queue{inst_.source};
    reach[inst_.source] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::size_t e : out_[queue[head]]) {
            const std::size_t v = inst_.links[e].dst;
            if (!reach[v]) {
                reach[v] = 1;
                queue.push_back(v);
            }
        }
    }
    if (!reach[inst_.destination]) throw std::invalid_argument("destination unreachable from source");
}

const Path& RoutingEnvironment::path_of(const SuperArm& s) const {
    const auto* path = std::get_if<Path>(&s);
    if (path == nullptr) throw std::invalid_argument("routing environment expects a path");
    return *path;
}

void RoutingEnvironment::validate(const SuperArm& s) const { validate_path(inst_, path_of(s)); }

double RoutingEnvironment::reward(const SuperArm& s, std::span<const double> theta) const {
    return path_reliability(inst_, path_of(s), theta);
}

std::vector<BaseArmId> RoutingEnvironment::triggering_set(const SuperArm& s) const {
    validate(s);
    std::vector<BaseArmId> out;
    for (std::size_t e : path_of(s).edges) out.push_back(BaseArmId{e});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BaseArmId> RoutingEnvironment::selected_arms(const SuperArm& s) const {
    validate(s);
    return {BaseArmId{path_of(s).edges.front()}};
}

double RoutingEnvironment::triggering_prob(const SuperArm& s, BaseArmId arm) const {
    validate(s);
    double prob = 1.0;
    for (std::size_t e : path_of(s).edges) {
        if (e == arm.value) return prob;
        prob *= inst_.links[e].p;
    }
    return 0.0;
}

StepOutcome RoutingEnvironment::step(const SuperArm& s, Rng& rng) const {
    validate(s);
    StepOutcome out;
    out.reward = 1.0;
    for (std::size_t e : path_of(s).edges) {
        std::bernoulli_distribution ok(inst_.links[e].p);
        const bool x = ok(rng);
        out.feedback.entries.push_back({BaseArmId{e}, x ? 1.0 : 0.0});
        if (!x) {
            out.reward = 0.0;
            break;
        }
    }
    return out;
}

}  // namespace cmab
