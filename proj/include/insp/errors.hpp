#pragma once

#include <stdexcept>
#include <string>

namespace insp {

// Malformed input or a violated precondition. The CLI maps this to exit code 1.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A configured state/memory/time budget ran out before a definite answer.
// The CLI maps this to exit code 2.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace insp
