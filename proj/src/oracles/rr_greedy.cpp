#include "cmab/oracles/rr_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmab {

double rr_alpha(double epsilon) { return 1.0 - std::exp(-1.0) - epsilon; }

double rr_beta(std::size_t nodes, double ell) {
    return 1.0 - 3.0 * std::pow(static_cast<double>(nodes), -ell);
}

void RrCollection::clear() {
    nodes_.clear();
    offsets_.assign(1, 0);
}

void RrCollection::add(std::span<const std::uint32_t> nodes) {
    nodes_.insert(nodes_.end(), nodes.begin(), nodes.end());
    offsets_.push_back(nodes_.size());
}

std::span<const std::uint32_t> RrCollection::at(std::size_t r) const {
    return {nodes_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
}

std::vector<std::size_t> greedy_max_coverage(const RrCollection& sets, std::size_t nodes,
                                             std::size_t k, std::size_t* covered) {
    std::vector<std::size_t> gain(nodes, 0);
    std::vector<std::vector<std::uint32_t>> sets_of(nodes);
    for (std::size_t r = 0; r < sets.size(); ++r) {
        for (std::uint32_t v : sets.at(r)) {
            ++gain[v];
            sets_of[v].push_back(static_cast<std::uint32_t>(r));
        }
    }
    std::vector<char> done(sets.size(), 0);
    std::vector<char> picked(nodes, 0);
    std::vector<std::size_t> seeds;
    std::size_t total = 0;
    for (std::size_t step = 0; step < k && step < nodes; ++step) {
        std::size_t best = nodes;
        for (std::size_t v = 0; v < nodes; ++v) {
            if (picked[v]) continue;
            if (best == nodes || gain[v] > gain[best]) best = v;
        }
        picked[best] = 1;
        seeds.push_back(best);
        total += gain[best];
        for (std::uint32_t r : sets_of[best]) {
            if (done[r]) continue;
            done[r] = 1;
            for (std::uint32_t u : sets.at(r)) --gain[u];
        }
    }
    if (covered != nullptr) *covered = total;
    return seeds;
}

RrGreedyOracle::RrGreedyOracle(const InfluenceGraph& graph, std::size_t k, RrGreedyParams params)
    : graph_(graph), k_(k), params_(params), stamp_(graph.node_count(), 0) {
    if (k_ == 0 || k_ > graph_.node_count()) throw std::invalid_argument("RR greedy oracle needs 1 <= K <= n");
    if (!(params_.epsilon > 0.0 && params_.epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
    if (!(params_.ell >= 1.0)) throw std::invalid_argument("ell must be >= 1");
    if (params_.rr_budget == 0) throw std::invalid_argument("RR budget must be >= 1");
}

std::size_t RrGreedyOracle::sample_rr_set(std::span<const double> theta, Rng& rng) {
    const std::size_t n = graph_.node_count();
    if (++current_stamp_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        current_stamp_ = 1;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    scratch_.clear();
    const auto root = static_cast<std::uint32_t>(pick(rng));
    stamp_[root] = current_stamp_;
    scratch_.push_back(root);
    std::size_t width = 0;
    for (std::size_t head = 0; head < scratch_.size(); ++head) {
        const auto& in = graph_.in_edges(scratch_[head]);
        width += in.size();
        for (std::size_t e : in) {
            const std::size_t u = graph_.edge(e).src;
            if (stamp_[u] == current_stamp_) continue;
            const double p = theta[e];
            const bool live = p >= 1.0 || (p > 0.0 && unit(rng) < p);
            if (!live) continue;
            stamp_[u] = current_stamp_;
            scratch_.push_back(static_cast<std::uint32_t>(u));
        }
    }
    return width;
}

void RrGreedyOracle::sample_into(RrCollection& sets, std::size_t count, std::span<const double> theta,
                                 Rng& rng, double* kappa_sum) {
    const double m = static_cast<double>(graph_.edge_count());
    for (std::size_t r = 0; r < count; ++r) {
        const std::size_t width = sample_rr_set(theta, rng);
        sets.add(scratch_);
        if (kappa_sum != nullptr && m > 0.0) {
            *kappa_sum += 1.0 - std::pow(1.0 - static_cast<double>(width) / m, static_cast<double>(k_));
        }
    }
}

SuperArm RrGreedyOracle::solve(std::span<const double> theta, Rng& rng) { return run(theta, rng).seeds; }

RrGreedyResult RrGreedyOracle::run(std::span<const double> theta, Rng& rng) {
    if (theta.size() != graph_.edge_count()) throw std::invalid_argument("edge parameter vector has wrong length");
    const std::size_t n = graph_.node_count();
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const double eps = params_.epsilon;
    const double ell = params_.ell;
    const auto budget = params_.rr_budget;
    auto capped = [budget](double want) {
        const double c = std::ceil(std::max(want, 1.0));
        return c >= static_cast<double>(budget) ? budget : static_cast<std::uint64_t>(c);
    };

    RrGreedyResult result;
    RrCollection sets;

    // KPT estimation: double the sample size until the mean kappa clears 2^-i.
    double kpt_star = 1.0;
    const int rounds = n > 1 ? static_cast<int>(std::log2(nd)) - 1 : 0;
    for (int i = 1; i <= rounds; ++i) {
        const double scale = std::ldexp(1.0, i);
        const auto c_i = capped(params_.kpt_constant * (ell * log_n + std::log(std::log2(nd))) * scale);
        sets.clear();
        double kappa = 0.0;
        sample_into(sets, c_i, theta, rng, &kappa);
        result.rr_sets += c_i;
        if (kappa / static_cast<double>(c_i) > 1.0 / scale) {
            kpt_star = nd * kappa / (2.0 * static_cast<double>(c_i));
            break;
        }
    }

    // Refinement: greedy seeds on the last KPT batch, coverage on a fresh batch.
    double kpt_plus = kpt_star;
    if (sets.size() > 0) {
        const auto trial = greedy_max_coverage(sets, n, k_);
        const double eps_r =
            params_.refine_constant * std::cbrt(ell * eps * eps / (static_cast<double>(k_) + ell));
        const double lambda_r = (2.0 + eps_r) * ell * nd * log_n / (eps_r * eps_r);
        const auto theta_r = capped(lambda_r / kpt_star);
        RrCollection fresh;
        sample_into(fresh, theta_r, theta, rng, nullptr);
        result.rr_sets += theta_r;
        std::vector<char> in_trial(n, 0);
        for (std::size_t v : trial) in_trial[v] = 1;
        std::size_t hit = 0;
        for (std::size_t r = 0; r < fresh.size(); ++r) {
            for (std::uint32_t v : fresh.at(r)) {
                if (in_trial[v]) {
                    ++hit;
                    break;
                }
            }
        }
        const double kpt_prime =
            static_cast<double>(hit) / static_cast<double>(fresh.size()) * nd / (1.0 + eps_r);
        kpt_plus = std::max(kpt_prime, kpt_star);
    }

    // Node selection.
    const double log_binom = std::lgamma(nd + 1.0) - std::lgamma(static_cast<double>(k_) + 1.0) -
                             std::lgamma(nd - static_cast<double>(k_) + 1.0);
    const double lambda = (8.0 + 2.0 * eps) * nd * (ell * log_n + log_binom + std::log(2.0)) / (eps * eps);
    const double wanted = std::ceil(std::max(lambda / kpt_plus, 1.0));
    const auto count = capped(wanted);
    result.budget_exhausted = wanted > static_cast<double>(budget);
    if (result.budget_exhausted) ++budget_warnings_;

    sets.clear();
    sample_into(sets, count, theta, rng, nullptr);
    result.rr_sets += count;
    result.selection_sets = count;
    result.kpt = kpt_plus;

    std::size_t covered = 0;
    auto seeds = greedy_max_coverage(sets, n, k_, &covered);
    std::sort(seeds.begin(), seeds.end());
    result.seeds = SeedSet{std::move(seeds)};
    result.coverage = static_cast<double>(covered) / static_cast<double>(count);
    return result;
}

}  // namespace cmab
