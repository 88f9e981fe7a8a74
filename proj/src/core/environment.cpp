#include "cmab/core/environment.hpp"

namespace cmab {

Feedback Environment::observe_all(Rng& rng) const {
    const auto& mu = means();
    Feedback fb;
    fb.entries.reserve(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        std::bernoulli_distribution coin(mu[i]);
        fb.entries.push_back({BaseArmId{i}, coin(rng) ? 1.0 : 0.0});
    }
    return fb;
}

}  // namespace cmab
