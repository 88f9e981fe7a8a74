#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "cmab/environments/influence.hpp"
#include "cmab/environments/pmc.hpp"

namespace cmab {

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// Hash of the canonical text form of an instance (all reals at 17
/// significant digits), so equal instances hash equal on every platform.
std::string fingerprint(const PmcInstance& inst);
std::string fingerprint(const InfluenceGraph& graph);

nlohmann::json to_json(const PmcInstance& inst);
PmcInstance pmc_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InfluenceGraph& graph);
InfluenceGraph graph_from_json(const nlohmann::json& j);

}  // namespace cmab
