#pragma once

#include <stdexcept>
#include <string>

namespace somato {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent configuration (body specs, scenarios).
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Runtime model violation: unknown taxel/landmark, out-of-limit state,
// degenerate geometry.
struct ModelError : Error {
    explicit ModelError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace somato
