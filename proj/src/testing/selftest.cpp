#include "cmab/testing/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "cmab/environments/cascade.hpp"
#include "cmab/environments/influence.hpp"
#include "cmab/environments/pmc.hpp"
#include "cmab/environments/routing.hpp"
#include "cmab/oracles/exact.hpp"
#include "cmab/oracles/rr_greedy.hpp"
#include "cmab/policies/ucb.hpp"
#include "cmab/testing/reference.hpp"

namespace cmab {

namespace {

std::vector<double> uniform_vector(std::size_t n, Rng& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

InfluenceGraph random_graph(std::size_t nodes, std::size_t edges, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
    std::uniform_real_distribution<double> p(0.1, 0.9);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<InfluenceEdge> out;
    while (out.size() < edges) {
        const auto a = pick(rng), b = pick(rng);
        if (a == b || !seen.emplace(a, b).second) continue;
        out.push_back({a, b, p(rng)});
    }
    return InfluenceGraph(nodes, std::move(out));
}

class Reporter {
public:
    explicit Reporter(std::ostream& out) : out_(out) {}
    void check(bool ok, const std::string& name, const std::string& detail) {
        out_ << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
        if (!ok) ++failures_;
    }
    int failures() const { return failures_; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

}  // namespace

int run_selftest(std::ostream& out, std::uint64_t seed) {
    Reporter rep(out);
    Rng rng(seed);

    {
        const double bisect = klucb_index(0.3, 50, 1000);
        const double grid = reference::klucb_by_grid(0.3, 50, 1000);
        rep.check(std::abs(bisect - grid) <= 1e-6, "klucb_index vs grid search",
                  fmt("bisection %.9f grid %.9f", bisect, grid));
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            const auto theta = uniform_vector(6 * 2, rng);
            for (auto form : {CascadeForm::Disjunctive, CascadeForm::Conjunctive}) {
                CascadingInstance inst{6, 2, 3, theta, form};
                CascadeEnvironment env(inst);
                const double got = env.reward(topk_oracle(theta, 6, 2, 3), theta);
                ok = ok && std::abs(got - reference::best_cascade_value(theta, 6, 2, 3, form)) <= 1e-9;
            }
        }
        rep.check(ok, "top-K oracle vs ordered-list enumeration", "20 random instances, both forms");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            PmcInstance inst{6, 4, 2, uniform_vector(24, rng), 0.1};
            ExhaustiveSubsetOracle oracle(inst);
            const auto got = oracle.best(inst.attraction);
            const auto want = reference::best_subset(6, 4, 2, 0.1, inst.attraction);
            ok = ok && got.items == want.items;
        }
        rep.check(ok, "exhaustive subset oracle vs independent enumeration", "20 random instances");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 20 && ok; ++trial) {
            RoutingInstance inst;
            inst.nodes = 8;
            inst.source = 0;
            inst.destination = 7;
            std::uniform_real_distribution<double> p(0.05, 1.0), coin(0.0, 1.0);
            for (std::size_t a = 0; a < 8; ++a) {
                for (std::size_t b = a + 1; b < 8; ++b) {
                    if (b == a + 1 || coin(rng) < 0.35) inst.links.push_back({a, b, p(rng)});
                }
            }
            std::vector<double> theta;
            for (const auto& l : inst.links) theta.push_back(l.p);
            ReliablePathOracle oracle(inst);
            const double got = path_reliability(inst, oracle.best(theta), theta);
            ok = ok && std::abs(got - reference::best_path_reliability(inst, theta)) <= 1e-12;
        }
        rep.check(ok, "reliable path oracle vs path enumeration", "20 random 8-node DAGs");
    }
    {
        const auto graph = random_graph(5, 8, rng);
        const auto theta = graph.probabilities();
        const std::vector<std::size_t> seeds{0};
        const auto exact = exact_activation_probs(graph, SeedSet{seeds}, theta);
        const auto brute = reference::activation_by_enumeration(graph, seeds, theta);
        double err = 0.0;
        for (std::size_t v = 0; v < exact.size(); ++v) err = std::max(err, std::abs(exact[v] - brute[v]));
        rep.check(err <= 1e-12, "exact activation probabilities vs 2^|E| enumeration", fmt("max error %.2e", err));

        const std::size_t n = 100000;
        double sum = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = static_cast<double>(im_cascade(graph, SeedSet{seeds}, rng).influenced.size());
            sum += s;
            sq += s * s;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sq / n - mean * mean) / n);
        const double want = reference::spread_by_enumeration(graph, seeds, theta);
        rep.check(std::abs(mean - want) <= 3.0 * se, "independent cascade Monte-Carlo vs enumeration",
                  fmt("mc %.4f exact %.4f", mean, want));
    }
    {
        CascadingInstance inst{5, 2, 3, uniform_vector(10, rng), CascadeForm::Disjunctive};
        CascadeEnvironment env(inst);
        const auto s = topk_oracle(inst.attraction, 5, 2, 3);
        const std::size_t n = 100000;
        double sum = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = env.step(s, rng).reward;
            sum += r;
            sq += r * r;
        }
        const double mean = sum / n;
        const double se = std::sqrt((sq / n - mean * mean) / n);
        const double want = env.reward(s, inst.attraction);
        rep.check(std::abs(mean - want) <= 3.0 * se, "cascade Monte-Carlo vs closed form",
                  fmt("mc %.4f exact %.4f", mean, want));
    }
    {
        int good = 0;
        const double alpha = rr_alpha(0.1);
        for (int trial = 0; trial < 10; ++trial) {
            const auto graph = random_graph(8, 14, rng);
            const auto theta = graph.probabilities();
            RrGreedyOracle oracle(graph, 2, RrGreedyParams{0.1, 1.0, 20000, 6.0, 5.0});
            const auto seeds = oracle.run(theta, rng).seeds;
            const double got = reference::spread_by_enumeration(graph, seeds.nodes, theta);
            const double opt = reference::best_seed_set(graph, 2, theta).spread;
            if (got >= alpha * opt - 1e-12) ++good;
        }
        rep.check(good >= 9, "RR-greedy within (1-1/e-eps) of the exhaustive optimum",
                  fmt("%d of 10 graphs", good));
    }
    return rep.failures();
}

}  // namespace cmab
