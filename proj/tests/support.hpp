#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "cmab/core/types.hpp"
#include "cmab/environments/influence.hpp"
#include "cmab/environments/routing.hpp"

namespace cmab::test {

inline std::vector<double> uniform_vector(std::size_t n, Rng& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

/// Random digraph with `edges` distinct non-loop edges and p ~ U[lo, hi].
inline InfluenceGraph random_graph(std::size_t nodes, std::size_t edges, Rng& rng, double lo = 0.1,
                                   double hi = 0.9) {
    std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
    std::uniform_real_distribution<double> p(lo, hi);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<InfluenceEdge> out;
    while (out.size() < edges) {
        const auto a = pick(rng), b = pick(rng);
        if (a == b || !seen.emplace(a, b).second) continue;
        out.push_back({a, b, p(rng)});
    }
    return InfluenceGraph(nodes, std::move(out));
}

/// Random DAG on `nodes` nodes (links only go to higher ids) with a guaranteed
/// 0 -> 1 -> ... -> n-1 chain, so node 0 reaches node n-1.
inline RoutingInstance random_dag(std::size_t nodes, double density, Rng& rng, double lo = 0.05, double hi = 1.0) {
    RoutingInstance inst;
    inst.nodes = nodes;
    inst.source = 0;
    inst.destination = nodes - 1;
    std::uniform_real_distribution<double> p(lo, hi), coin(0.0, 1.0);
    for (std::size_t a = 0; a < nodes; ++a) {
        for (std::size_t b = a + 1; b < nodes; ++b) {
            if (b == a + 1 || coin(rng) < density) inst.links.push_back({a, b, p(rng)});
        }
    }
    return inst;
}

/// Sample mean and standard error of f() over n draws.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

inline MeanSe monte_carlo(std::size_t n, const std::function<double()>& f) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = f();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, sq / static_cast<double>(n) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

/// |observed - expected| within 3 standard errors; a zero standard error
/// requires exact agreement up to 1e-12.
inline bool within_3se(const MeanSe& m, double expected) {
    return std::abs(m.mean - expected) <= 3.0 * m.se + 1e-12;
}

/// Three-sigma check for a frequency estimate of probability p over n trials.
inline bool frequency_ok(double freq, double p, std::size_t n) {
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return std::abs(freq - p) <= 3.0 * se + 1e-12;
}

}  // namespace cmab::test
