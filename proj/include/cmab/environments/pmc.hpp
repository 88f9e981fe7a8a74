#pragma once

#include <vector>

#include "cmab/core/environment.hpp"

namespace cmab {

/// Probabilistic maximum coverage with a word-of-mouth effect. Base arm
/// (item i, user j) has id j * V + i. Unadvertised pairs are inspected
/// independently with probability `word_of_mouth`.
struct PmcInstance {
    std::size_t items = 0;        // V
    std::size_t users = 0;        // W
    std::size_t subset_size = 0;  // K
    std::vector<double> attraction;  // user-major, size V * W
    double word_of_mouth = 0.0;      // p*

    std::size_t arm(std::size_t item, std::size_t user) const { return user * items + item; }
};

class PmcEnvironment final : public Environment {
public:
    explicit PmcEnvironment(PmcInstance inst);

    const PmcInstance& instance() const { return inst_; }

    std::string_view family() const override { return "pmc"; }
    std::size_t arm_count() const override { return means_.size(); }
    const MeanVector& means() const override { return means_; }
    void validate(const SuperArm& s) const override;

    /// sum_j (1 - prod_i (1 - q_ij theta_ij)), q_ij = 1 if i advertised else p*.
    double reward(const SuperArm& s, std::span<const double> theta) const override;

    /// All arms when p* > 0, otherwise the advertised pairs.
    std::vector<BaseArmId> triggering_set(const SuperArm& s) const override;
    std::vector<BaseArmId> selected_arms(const SuperArm& s) const override;
    double triggering_prob(const SuperArm& s, BaseArmId arm) const override;

    /// Users in index order, items in index order; reward counts users with at
    /// least one inspected and attractive item.
    StepOutcome step(const SuperArm& s, Rng& rng) const override;

private:
    std::vector<char> advertised_mask(const SuperArm& s) const;

    PmcInstance inst_;
    MeanVector means_;
};

/// Closed-form PMC reward on an explicit advertised mask (size V). Shared by
/// the environment and the exhaustive oracle.
double pmc_reward(const PmcInstance& inst, const std::vector<char>& advertised,
                  std::span<const double> theta);

}  // namespace cmab
