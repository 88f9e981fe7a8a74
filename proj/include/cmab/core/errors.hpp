#pragma once

#include <stdexcept>
#include <string>

namespace cmab {

/// Bad experiment configuration: incompatible components, unknown names,
/// out-of-range knobs. Mapped to CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unusable input data. Mapped to CLI exit code 3.
class IngestError : public std::runtime_error {
public:
    explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure while a simulation is running. Mapped to CLI exit code 4.
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cmab
