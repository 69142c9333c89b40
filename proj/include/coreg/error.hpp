#pragma once

#include <stdexcept>
#include <string>

namespace coreg {

// A state the mathematics forbids: raised when an internal consistency
// assertion fails. The CLI maps this to exit code 3.
struct internal_fault : std::logic_error {
    explicit internal_fault(const std::string& what) : std::logic_error(what) {}
};

// Malformed user input (spec files, CLI arguments). Exit code 1.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coreg
