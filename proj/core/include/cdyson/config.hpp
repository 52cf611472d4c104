#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cdyson/contour.hpp"
#include "cdyson/free_energy.hpp"
#include "cdyson/metropolis.hpp"
#include "cdyson/partition.hpp"
#include "cdyson/potential.hpp"
#include "cdyson/sde.hpp"

namespace cdyson {

struct PartitionConfig {
  std::size_t nodes = 512;
  bool symmetry_reduction = false;
  std::vector<std::size_t> quadrature_n = {1, 2, 3};
  std::vector<std::size_t> morris_n;  // circle-only reference rows
  bool fit = false;                   // append an expansion fit (needs >= 4 morris rows)
};

/// Parsed and validated run configuration; unknown keys are rejected with a
/// path diagnostic and a nearest-key suggestion.
struct RunConfig {
  ContourSpec contour = ContourSpec::circle({0.0, 0.0}, 1.0);
  std::size_t grid_size = 1024;
  std::size_t n_particles = 1;
  double beta = 2.0;
  Potential potential;
  std::optional<std::uint64_t> seed;

  SdeSettings sde;
  McSettings mcmc;
  ConformalSettings conformal;
  F1Convention f1_convention = F1Convention::Arclength;
  PartitionConfig partition;

  GasParams gas() const { return GasParams(n_particles, beta, potential); }
  std::shared_ptr<const Contour> build_contour() const {
    return Contour::build(contour, grid_size);
  }

  /// Seed is mandatory for the stochastic commands; throws ConfigError.
  std::uint64_t require_seed(const std::string& command) const;

  std::string to_json_string() const;  // effective config echo
};

RunConfig parse_config(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

}  // namespace cdyson
