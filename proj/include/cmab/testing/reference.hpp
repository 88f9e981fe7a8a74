#pragma once

// Brute-force reference computations. Deliberately naive and independent of
// the production code paths, so tests can compare the two.

#include <cstdint>
#include <span>
#include <vector>

#include "cmab/environments/cascade.hpp"
#include "cmab/environments/influence.hpp"
#include "cmab/environments/pmc.hpp"
#include "cmab/environments/routing.hpp"

namespace cmab::reference {

/// Expected cascade size by summing over all 2^|E| live-edge realizations.
/// Requires |E| <= 24.
double spread_by_enumeration(const InfluenceGraph& graph, const std::vector<std::size_t>& seeds,
                             std::span<const double> theta);

/// P(node influenced) for every node, by the same enumeration.
std::vector<double> activation_by_enumeration(const InfluenceGraph& graph, const std::vector<std::size_t>& seeds,
                                              std::span<const double> theta);

struct SeedChoice {
    std::vector<std::size_t> seeds;
    double spread = 0.0;
};

/// Best K-node seed set over all C(n, K) choices, exact spread by enumeration.
SeedChoice best_seed_set(const InfluenceGraph& graph, std::size_t k, std::span<const double> theta);

/// Every simple source-destination path, as link-id sequences.
std::vector<std::vector<std::size_t>> all_simple_paths(const RoutingInstance& inst);

/// max over all simple paths of the product of theta along the path.
double best_path_reliability(const RoutingInstance& inst, std::span<const double> theta);

/// sum_j (1 - prod_i (1 - q_ij theta_ij)) written out with explicit loops.
double pmc_value(std::size_t items, std::size_t users, double word_of_mouth, const std::vector<std::size_t>& subset,
                 std::span<const double> theta);

struct SubsetChoice {
    std::vector<std::size_t> items;
    double value = 0.0;
};

/// Best size-K subset over all C(V, K) choices, first maximum in lexicographic order.
SubsetChoice best_subset(std::size_t items, std::size_t users, std::size_t k, double word_of_mouth,
                         std::span<const double> theta);

/// One user's cascade reward for an ordered list.
double cascade_user_value(std::span<const double> column, const std::vector<std::size_t>& list, CascadeForm form);

/// max over all ordered K-tuples of distinct items, summed over users.
double best_cascade_value(std::span<const double> theta, std::size_t items, std::size_t users, std::size_t k,
                          CascadeForm form);

/// Largest q on a uniform grid of step `step` over [mu_hat, 1] with
/// N kl(mu_hat, q) <= ln t + 3 ln ln t (ln ln t clamped at 0).
double klucb_by_grid(double mu_hat, std::int64_t n, std::int64_t t, double step = 1e-6);

}  // namespace cmab::reference
