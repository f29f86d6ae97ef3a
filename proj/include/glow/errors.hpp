#pragma once

#include <stdexcept>
#include <string>

namespace glow {

// Bad input data: malformed files, shape mismatches, out-of-range values.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values produced by a numerical computation.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace glow
