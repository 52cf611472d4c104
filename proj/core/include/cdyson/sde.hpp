#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "cdyson/gas.hpp"
#include "cdyson/rng.hpp"

namespace cdyson {

struct SdeSettings {
  double dt = 0.0;          // 0 selects the default 1e-4 (L/2pi)^2
  double t_end = 1.0;
  std::uint64_t seed = 0;
  double taming_cap = 0.25; // max |drift dt| as a fraction of the min spacing
  double burn_in = 0.0;     // time discarded before recording
  std::size_t thinning = 1; // record every thinning-th step

  void validate() const;
  double effective_dt(const Contour& contour) const;
};

struct Trajectory {
  std::shared_ptr<const Contour> contour;
  std::vector<double> times;
  std::vector<std::vector<double>> samples;  // arclength positions per snapshot
  std::uint64_t total_steps = 0;
  std::uint64_t rejected_steps = 0;  // collision-rejected resamples
};

/// One tamed Euler-Maruyama step in arclength coordinates:
///   s_i <- wrap(s_i + clamp(drift_i dt) + sqrt(kappa dt) g_i).
/// A step that would violate the separation guard is rejected and the whole
/// Gaussian vector is resampled; persistent rejection raises an error
/// advising a smaller dt.
Configuration sde_step(const Configuration& cfg, const GasParams& p,
                       const SdeSettings& settings, RngStream& rng);

/// Second-order plane embedding of an arclength increment:
///   tau ds - (1/2) nu k ds^2.
Complex embed_increment(const Frame& frame, double ds);

/// Iterate sde_step from cfg0, recording thinned snapshots after burn_in.
Trajectory run_trajectory(const Configuration& cfg0, const GasParams& p,
                          const SdeSettings& settings);

}  // namespace cdyson
