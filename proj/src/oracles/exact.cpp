#include "cmab/oracles/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cmab/core/errors.hpp"

namespace cmab {

RankedLists topk_oracle(std::span<const double> theta, std::size_t items, std::size_t users,
                        std::size_t k) {
    if (k > items) throw std::invalid_argument("top-K oracle needs K <= V");
    if (theta.size() != items * users) throw std::invalid_argument("parameter vector has wrong length");
    RankedLists out;
    out.lists.resize(users);
    std::vector<std::size_t> order(items);
    for (std::size_t j = 0; j < users; ++j) {
        const double* col = theta.data() + j * items;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                          [col](std::size_t a, std::size_t b) {
                              return col[a] > col[b] || (col[a] == col[b] && a < b);
                          });
        out.lists[j].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return out;
}

TopKOracle::TopKOracle(std::size_t items, std::size_t users, std::size_t k)
    : items_(items), users_(users), k_(k) {
    if (k_ > items_) throw std::invalid_argument("top-K oracle needs K <= V");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        // result * num / i is exact at every step; guard the multiplication
        if (result > std::numeric_limits<std::uint64_t>::max() / num) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result = result * num / i;
    }
    return result;
}

ExhaustiveSubsetOracle::ExhaustiveSubsetOracle(const PmcInstance& structure, std::uint64_t subset_limit)
    : items_(structure.items),
      users_(structure.users),
      k_(structure.subset_size),
      word_of_mouth_(structure.word_of_mouth) {
    if (k_ == 0 || k_ > items_) throw std::invalid_argument("exhaustive subset oracle needs 1 <= K <= V");
    const std::uint64_t count = binomial(items_, k_);
    if (count > subset_limit) {
        throw ConfigError("exhaustive subset oracle would enumerate " + std::to_string(count) +
                          " subsets (limit " + std::to_string(subset_limit) +
                          "); use a greedy oracle for this instance");
    }
}

namespace {

// Per user j the miss probability factors as
//   prod_{i not in S} (1 - p* theta_ij) * prod_{i in S} (1 - theta_ij)
//   = base_j * prod_{i in S} ratio_ij,   ratio_ij = (1 - theta_ij) / (1 - p* theta_ij).
// A user with some 1 - p* theta_ij == 0 never misses, whatever S is.
struct SubsetSearch {
    std::size_t items, users, k;
    std::vector<double> base;   // per active user
    std::vector<double> ratio;  // item-major: ratio[i * users + j]
    double constant = 0.0;      // users that always like something

    std::vector<std::vector<double>> prod;  // per depth, per user
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> best_items;
    double best_value = -1.0;

    void search(std::size_t depth, std::size_t start) {
        if (depth == k) {
            const auto& p = prod[depth];
            double miss = 0.0;
            for (std::size_t j = 0; j < users; ++j) miss += base[j] * p[j];
            const double value = constant + static_cast<double>(users) - miss;
            if (value > best_value) {
                best_value = value;
                best_items = chosen;
            }
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= items; ++i) {
            const double* r = ratio.data() + i * users;
            const auto& prev = prod[depth];
            auto& next = prod[depth + 1];
            for (std::size_t j = 0; j < users; ++j) next[j] = prev[j] * r[j];
            chosen[depth] = i;
            search(depth + 1, i + 1);
        }
    }
};

}  // namespace

ItemSubset ExhaustiveSubsetOracle::best(std::span<const double> theta) const {
    if (theta.size() != items_ * users_) throw std::invalid_argument("parameter vector has wrong length");
    SubsetSearch s{items_, 0, k_, {}, {}, 0.0, {}, {}, {}, -1.0};
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < users_; ++j) {
        const double* col = theta.data() + j * items_;
        double base = 1.0;
        bool saturated = false;
        for (std::size_t i = 0; i < items_; ++i) {
            const double c = 1.0 - word_of_mouth_ * col[i];
            if (c <= 0.0) saturated = true;
            base *= c;
        }
        if (saturated) {
            s.constant += 1.0;
        } else {
            active.push_back(j);
            s.base.push_back(base);
        }
    }
    s.users = active.size();
    s.ratio.assign(items_ * s.users, 0.0);
    for (std::size_t a = 0; a < active.size(); ++a) {
        const double* col = theta.data() + active[a] * items_;
        for (std::size_t i = 0; i < items_; ++i) {
            s.ratio[i * s.users + a] = (1.0 - col[i]) / (1.0 - word_of_mouth_ * col[i]);
        }
    }
    s.prod.assign(k_ + 1, std::vector<double>(s.users, 1.0));
    s.chosen.assign(k_, 0);
    s.search(0, 0);
    return ItemSubset{s.best_items};
}

ReliablePathOracle::ReliablePathOracle(RoutingInstance structure)
    : inst_(std::move(structure)), out_(inst_.nodes) {
    for (std::size_t e = 0; e < inst_.links.size(); ++e) {
        if (inst_.links[e].src >= inst_.nodes || inst_.links[e].dst >= inst_.nodes) {
            throw std::invalid_argument("link endpoint out of range");
        }
        out_[inst_.links[e].src].push_back(e);
    }
    if (inst_.source >= inst_.nodes || inst_.destination >= inst_.nodes) {
        throw std::invalid_argument("source or destination out of range");
    }
}

Path ReliablePathOracle::best(std::span<const double> theta) const {
    if (theta.size() != inst_.links.size()) throw std::invalid_argument("parameter vector has wrong length");

    struct Label {
        double weight;
        std::size_t hops;
        std::vector<std::size_t> links;
        std::size_t node;
        bool operator>(const Label& o) const {
            return std::tie(weight, hops, links) > std::tie(o.weight, o.hops, o.links);
        }
    };
    std::priority_queue<Label, std::vector<Label>, std::greater<>> queue;
    std::vector<char> settled(inst_.nodes, 0);
    queue.push(Label{0.0, 0, {}, inst_.source});
    while (!queue.empty()) {
        Label top = queue.top();
        queue.pop();
        if (settled[top.node]) continue;
        settled[top.node] = 1;
        if (top.node == inst_.destination) return Path{std::move(top.links)};
        for (std::size_t e : out_[top.node]) {
            const double p = theta[e];
            if (!(p > 0.0)) continue;
            const std::size_t v = inst_.links[e].dst;
            if (settled[v]) continue;
            Label next{top.weight - std::log(std::min(p, 1.0)), top.hops + 1, top.links, v};
            next.links.push_back(e);
            queue.push(std::move(next));
        }
    }
    throw SimulationError("no source-destination path with positive reliability");
}

}  // namespace cmab
