#pragma once

#include <string_view>
#include <vector>

#include "cmab/core/environment.hpp"

namespace cmab {

enum class CascadeForm {
    Disjunctive,  ///< user clicks the first attractive item; reward = any click
    Conjunctive,  ///< user reports the first unattractive item; reward = none unattractive
};

std::string_view to_string(CascadeForm form);
CascadeForm cascade_form_from_string(std::string_view s);

/// Cascading click model over V items and W users. Base arm (item i, user j)
/// has id j * V + i.
struct CascadingInstance {
    std::size_t items = 0;        // V
    std::size_t users = 0;        // W
    std::size_t list_length = 0;  // K
    std::vector<double> attraction;  // user-major, size V * W
    CascadeForm form = CascadeForm::Disjunctive;

    std::size_t arm(std::size_t item, std::size_t user) const { return user * items + item; }
    double p(std::size_t item, std::size_t user) const { return attraction[arm(item, user)]; }
};

class CascadeEnvironment final : public Environment {
public:
    /// Throws std::invalid_argument on K > V, wrong matrix size, or
    /// probabilities outside [0, 1].
    explicit CascadeEnvironment(CascadingInstance inst);

    const CascadingInstance& instance() const { return inst_; }

    std::string_view family() const override { return "cascade"; }
    std::size_t arm_count() const override { return means_.size(); }
    const MeanVector& means() const override { return means_; }
    void validate(const SuperArm& s) const override;

    /// Disjunctive: sum_j (1 - prod_k (1 - theta_{S(k,j),j})).
    /// Conjunctive: sum_j prod_k theta_{S(k,j),j}.
    double reward(const SuperArm& s, std::span<const double> theta) const override;

    /// Every (item, user) pair appearing in the lists.
    std::vector<BaseArmId> triggering_set(const SuperArm& s) const override;
    /// The rank-1 pair of each user.
    std::vector<BaseArmId> selected_arms(const SuperArm& s) const override;
    double triggering_prob(const SuperArm& s, BaseArmId arm) const override;

    /// Users in index order, items in rank order. Outcomes are observed up to
    /// and including the first click (disjunctive) or first non-attraction
    /// (conjunctive).
    StepOutcome step(const SuperArm& s, Rng& rng) const override;

private:
    const RankedLists& lists_of(const SuperArm& s) const;

    CascadingInstance inst_;
    MeanVector means_;
};

}  // namespace cmab
