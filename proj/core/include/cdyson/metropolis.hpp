#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "cdyson/gas.hpp"

namespace cdyson {

struct McSettings {
  double proposal_sigma = 0.0;  // 0 selects L / (4 N)
  std::size_t sweeps = 1000;    // measurement sweeps (after burn_in)
  std::size_t burn_in = 200;    // adaptation sweeps, discarded
  std::size_t thinning = 1;     // record every thinning-th sweep
  std::uint64_t seed = 0;
  bool adapt_sigma = true;      // tune sigma toward 30-50% acceptance in burn-in

  void validate() const;
  double effective_sigma(const Contour& contour, std::size_t n) const;
};

struct SampleSet {
  std::shared_ptr<const Contour> contour;
  std::vector<std::vector<double>> samples;  // arclength positions per snapshot
  double acceptance_rate = 0.0;              // measurement phase
  double final_sigma = 0.0;
};

/// Single-site Metropolis sampler of the Boltzmann weight
/// prod_{i<j} |z_i - z_j|^{2 beta} prod_k e^{beta W(z_k)}, with Gaussian
/// arclength proposals. Works in log-weights exclusively; the unnormalized
/// density is never exponentiated.
SampleSet mh_chain(const Configuration& cfg0, const GasParams& p,
                   const McSettings& settings);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t batches = 0;
};

/// Batch-means estimate of an observable over the stored configurations.
/// Requires enough samples for at least 10 batches.
Estimate estimate_observable(const SampleSet& samples, const GasParams& p,
                             const std::function<double(const Configuration&)>& f);

}  // namespace cdyson
