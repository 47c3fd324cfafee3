#pragma once

#include <stdexcept>
#include <string>

namespace qk1 {

// Bad arguments or requests outside the engine's supported domain.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A provable internal contract was violated (divisibility, regularity,
// integrality).  Indicates a bug, never bad input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

// Variable inversion requested outside the duality rule's domain.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An oracle check did not come out as asserted.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qk1
