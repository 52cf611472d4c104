#pragma once

#include <stdexcept>
#include <string>

namespace cdyson {

/// Malformed or invalid user configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A validation suite ran to completion but at least one check failed
/// (CLI exit code 3).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cdyson
