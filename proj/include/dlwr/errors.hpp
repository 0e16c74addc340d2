#pragma once

#include <stdexcept>
#include <string>

namespace dlwr {

// Invalid configuration, CLI input, or file format.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The scheme produced a non-finite value or an otherwise unusable state.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A filesystem write or read failed; the message names the path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dlwr
