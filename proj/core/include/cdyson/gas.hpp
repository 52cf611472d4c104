#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "cdyson/contour.hpp"
#include "cdyson/potential.hpp"

namespace cdyson {

/// Gas parameters. kappa = 2/beta is stored redundantly and the product
/// beta * kappa == 2 is asserted at construction.
struct GasParams {
  std::size_t n_particles = 1;
  double beta = 2.0;
  double kappa = 1.0;
  Potential potential;

  GasParams(std::size_t n, double beta_value, Potential w = Potential::zero());
};

/// N particle positions on a contour, stored as arclengths in [0, L).
/// Immutable after construction; construction rejects configurations whose
/// minimum pairwise chordal distance falls below the separation guard.
class Configuration {
 public:
  Configuration(std::shared_ptr<const Contour> contour, std::vector<double> s);

  /// Skips the validity check; for hot paths that already verified separation.
  static Configuration unchecked(std::shared_ptr<const Contour> contour,
                                 std::vector<double> s);

  std::size_t size() const { return s_.size(); }
  const std::vector<double>& positions() const { return s_; }
  const Contour& contour() const { return *contour_; }
  const std::shared_ptr<const Contour>& contour_ptr() const { return contour_; }

  std::vector<Complex> positions_z() const;
  std::vector<Frame> frames() const;

  Configuration displaced(std::size_t i, double ds) const;

 private:
  Configuration() = default;
  std::shared_ptr<const Contour> contour_;
  std::vector<double> s_;
};

/// Minimum chordal distance below which a configuration is rejected.
double separation_guard(const Contour& contour);

/// Throws std::domain_error naming the offending pair when two particles are
/// closer (chordally) than the separation guard.
void check_separation(const Contour& contour, std::span<const Complex> z);

/// E = 2 sum_{i<j} log|z_i - z_j| + sum_i W(z_i).
double energy(const Configuration& cfg, const GasParams& p);

/// Tangential gradient dE/ds_i = 2 Re[tau_i (sum_{j != i} 1/(z_i - z_j) + dW/dz)].
std::vector<double> drift(const Configuration& cfg, const GasParams& p);

/// Second tangential derivatives d^2 E/ds_i^2, computed analytically from the
/// frame data (curvature-corrected chain rule).
std::vector<double> drift_second(const Configuration& cfg, const GasParams& p);

}  // namespace cdyson
