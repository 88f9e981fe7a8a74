#include "cmab/environments/pmc.hpp"

#include <stdexcept>
#include <string>

namespace cmab {

PmcEnvironment::PmcEnvironment(PmcInstance inst) : inst_(std::move(inst)) {
    if (inst_.items == 0 || inst_.users == 0 || inst_.subset_size == 0) {
        throw std::invalid_argument("PMC instance needs V, W, K >= 1");
    }
    if (inst_.subset_size > inst_.items) throw std::invalid_argument("PMC instance needs K <= V");
    if (!(inst_.word_of_mouth >= 0.0 && inst_.word_of_mouth <= 1.0)) {
        throw std::invalid_argument("word-of-mouth probability outside [0, 1]");
    }
    if (inst_.attraction.size() != inst_.items * inst_.users) {
        throw std::invalid_argument("attraction matrix must have V * W entries");
    }
    means_ = MeanVector(inst_.attraction);
}

std::vector<char> PmcEnvironment::advertised_mask(const SuperArm& s) const {
    const auto* subset = std::get_if<ItemSubset>(&s);
    if (subset == nullptr) throw std::invalid_argument("PMC environment expects an item subset");
    if (subset->items.size() != inst_.subset_size) {
        throw std::invalid_argument("item subset must have exactly K items");
    }
    std::vector<char> mask(inst_.items, 0);
    for (std::size_t i : subset->items) {
        if (i >= inst_.items) throw std::invalid_argument("item id out of range");
        if (mask[i]) throw std::invalid_argument("duplicate item " + std::to_string(i) + " in subset");
        mask[i] = 1;
    }
    return mask;
}

void PmcEnvironment::validate(const SuperArm& s) const { advertised_mask(s); }

double pmc_reward(const PmcInstance& inst, const std::vector<char>& advertised,
                  std::span<const double> theta) {
    if (theta.size() != inst.items * inst.users) {
        throw std::invalid_argument("parameter vector has wrong length");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < inst.users; ++j) {
        double miss = 1.0;
        for (std::size_t i = 0; i < inst.items; ++i) {
            const double q = advertised[i] ? 1.0 : inst.word_of_mouth;
            miss *= 1.0 - q * theta[inst.arm(i, j)];
        }
        total += 1.0 - miss;
    }
    return total;
}

double PmcEnvironment::reward(const SuperArm& s, std::span<const double> theta) const {
    return pmc_reward(inst_, advertised_mask(s), theta);
}

std::vector<BaseArmId> PmcEnvironment::triggering_set(const SuperArm& s) const {
    if (inst_.word_of_mouth > 0.0) {
        validate(s);
        std::vector<BaseArmId> all(arm_count());
        for (std::size_t a = 0; a < all.size(); ++a) all[a] = BaseArmId{a};
        return all;
    }
    return selected_arms(s);
}

std::vector<BaseArmId> PmcEnvironment::selected_arms(const SuperArm& s) const {
    const auto mask = advertised_mask(s);
    std::vector<BaseArmId> out;
    for (std::size_t j = 0; j < inst_.users; ++j) {
        for (std::size_t i = 0; i < inst_.items; ++i) {
            if (mask[i]) out.push_back(BaseArmId{inst_.arm(i, j)});
        }
    }
    return out;
}

double PmcEnvironment::triggering_prob(const SuperArm& s, BaseArmId arm) const {
    const auto mask = advertised_mask(s);
    if (arm.value >= arm_count()) throw std::invalid_argument("arm id out of range");
    return mask[arm.value % inst_.items] ? 1.0 : inst_.word_of_mouth;
}

StepOutcome PmcEnvironment::step(const SuperArm& s, Rng& rng) const {
    const auto mask = advertised_mask(s);
    const double wom = inst_.word_of_mouth;
    std::bernoulli_distribution inspect(wom);
    StepOutcome out;
    for (std::size_t j = 0; j < inst_.users; ++j) {
        bool liked = false;
        for (std::size_t i = 0; i < inst_.items; ++i) {
            bool triggered = mask[i] != 0;
            if (!triggered && wom > 0.0) triggered = wom >= 1.0 || inspect(rng);
            if (!triggered) continue;
            const std::size_t arm = inst_.arm(i, j);
            std::bernoulli_distribution attract(inst_.attraction[arm]);
            const bool x = attract(rng);
            out.feedback.entries.push_back({BaseArmId{arm}, x ? 1.0 : 0.0});
            liked = liked || x;
        }
        if (liked) out.reward += 1.0;
    }
    return out;
}

}  // namespace cmab
