#pragma once

#include <stdexcept>
#include <string>

namespace klein {

// Bad user-supplied parameters (n, r, s, resolutions, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The chained construction failed to close up within tolerance.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeshError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace klein
