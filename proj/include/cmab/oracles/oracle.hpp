#pragma once

#include <span>
#include <string_view>

#include "cmab/core/types.hpp"

namespace cmab {

/// Maps a parameter vector theta to a (near-)optimal super arm.
/// Oracles are pure given (theta, rng state).
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual std::string_view name() const = 0;
    virtual SuperArm solve(std::span<const double> theta, Rng& rng) = 0;
};

}  // namespace cmab
