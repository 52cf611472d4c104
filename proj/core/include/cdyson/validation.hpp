#pragma once

#include <string>
#include <vector>

#include "cdyson/config.hpp"

namespace cdyson {

struct ValidationCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass = true;

  std::string to_json_string() const;
};

/// Invariant suite for the validate command: stationary zero mode of the
/// adjoint operator, SDE-versus-Metropolis gap statistics, Loewner energy
/// consistency, and the circle partition benchmark.
ValidationReport run_validation(const RunConfig& config);

}  // namespace cdyson
