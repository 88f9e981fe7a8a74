#include "cmab/environments/cascade.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cmab/core/errors.hpp"

namespace cmab {

std::string_view to_string(CascadeForm form) {
    return form == CascadeForm::Disjunctive ? "disjunctive" : "conjunctive";
}

CascadeForm cascade_form_from_string(std::string_view s) {
    if (s == "disjunctive") return CascadeForm::Disjunctive;
    if (s == "conjunctive") return CascadeForm::Conjunctive;
    throw ConfigError("unknown cascade form '" + std::string(s) + "'");
}

CascadeEnvironment::CascadeEnvironment(CascadingInstance inst) : inst_(std::move(inst)) {
    if (inst_.items == 0 || inst_.users == 0 || inst_.list_length == 0) {
        throw std::invalid_argument("cascading instance needs V, W, K >= 1");
    }
    if (inst_.list_length > inst_.items) {
        throw std::invalid_argument("cascading instance needs K <= V");
    }
    if (inst_.attraction.size() != inst_.items * inst_.users) {
        throw std::invalid_argument("attraction matrix must have V * W entries");
    }
    means_ = MeanVector(inst_.attraction);
}

const RankedLists& CascadeEnvironment::lists_of(const SuperArm& s) const {
    const auto* lists = std::get_if<RankedLists>(&s);
    if (lists == nullptr) throw std::invalid_argument("cascade environment expects ranked lists");
    return *lists;
}

void CascadeEnvironment::validate(const SuperArm& s) const {
    const auto& lists = lists_of(s).lists;
    if (lists.size() != inst_.users) {
        throw std::invalid_argument("expected one list per user (" + std::to_string(inst_.users) + ")");
    }
    std::vector<char> seen(inst_.items);
    for (std::size_t j = 0; j < lists.size(); ++j) {
        if (lists[j].size() != inst_.list_length) {
            throw std::invalid_argument("list of user " + std::to_string(j) + " does not have K items");
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t item : lists[j]) {
            if (item >= inst_.items) throw std::invalid_argument("item id out of range");
            if (seen[item]) throw std::invalid_argument("duplicate item in list of user " + std::to_string(j));
            seen[item] = 1;
        }
    }
}

double CascadeEnvironment::reward(const SuperArm& s, std::span<const double> theta) const {
    validate(s);
    if (theta.size() != arm_count()) throw std::invalid_argument("parameter vector has wrong length");
    const auto& lists = lists_of(s).lists;
    double total = 0.0;
    for (std::size_t j = 0; j < inst_.users; ++j) {
        double prod = 1.0;
        for (std::size_t item : lists[j]) {
            const double p = theta[inst_.arm(item, j)];
            prod *= inst_.form == CascadeForm::Disjunctive ? 1.0 - p : p;
        }
        total += inst_.form == CascadeForm::Disjunctive ? 1.0 - prod : prod;
    }
    return total;
}

std::vector<BaseArmId> CascadeEnvironment::triggering_set(const SuperArm& s) const {
    validate(s);
    std::vector<BaseArmId> out;
    const auto& lists = lists_of(s).lists;
    for (std::size_t j = 0; j < inst_.users; ++j) {
        for (std::size_t item : lists[j]) out.push_back(BaseArmId{inst_.arm(item, j)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BaseArmId> CascadeEnvironment::selected_arms(const SuperArm& s) const {
    validate(s);
    std::vector<BaseArmId> out;
    const auto& lists = lists_of(s).lists;
    for (std::size_t j = 0; j < inst_.users; ++j) out.push_back(BaseArmId{inst_.arm(lists[j].front(), j)});
    std::sort(out.begin(), out.end());
    return out;
}

double CascadeEnvironment::triggering_prob(const SuperArm& s, BaseArmId arm) const {
    validate(s);
    if (arm.value >= arm_count()) throw std::invalid_argument("arm id out of range");
    const std::size_t user = arm.value / inst_.items;
    const std::size_t item = arm.value % inst_.items;
    double prob = 1.0;
    for (std::size_t listed : lists_of(s).lists[user]) {
        if (listed == item) return prob;
        const double p = inst_.p(listed, user);
        prob *= inst_.form == CascadeForm::Disjunctive ? 1.0 - p : p;
    }
    return 0.0;
}

StepOutcome CascadeEnvironment::step(const SuperArm& s, Rng& rng) const {
    validate(s);
    StepOutcome out;
    const auto& lists = lists_of(s).lists;
    const bool disjunctive = inst_.form == CascadeForm::Disjunctive;
    for (std::size_t j = 0; j < inst_.users; ++j) {
        bool stopped = false;
        for (std::size_t item : lists[j]) {
            const std::size_t arm = inst_.arm(item, j);
            std::bernoulli_distribution attract(inst_.attraction[arm]);
            const bool x = attract(rng);
            out.feedback.entries.push_back({BaseArmId{arm}, x ? 1.0 : 0.0});
            if (x == disjunctive) {
                stopped = true;
                break;
            }
        }
        // disjunctive: stopped means a click; conjunctive: stopped means a failure
        if (stopped == disjunctive) out.reward += 1.0;
    }
    return out;
}

}  // namespace cmab
