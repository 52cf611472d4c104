#include "cdyson/metropolis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdyson/rng.hpp"

namespace cdyson {

void McSettings::validate() const {
  if (proposal_sigma < 0.0) throw std::invalid_argument("mcmc: proposal_sigma must be >= 0");
  if (thinning < 1) throw std::invalid_argument("mcmc: thinning must be >= 1");
}

double McSettings::effective_sigma(const Contour& contour, std::size_t n) const {
  if (proposal_sigma > 0.0) return proposal_sigma;
  return contour.length() / (4.0 * static_cast<double>(n));
}

SampleSet mh_chain(const Configuration& cfg0, const GasParams& p,
                   const McSettings& settings) {
  settings.validate();
  const Contour& contour = cfg0.contour();
  const double length = contour.length();
  const double guard = separation_guard(contour);
  const std::size_t n = cfg0.size();

  std::vector<double> s = cfg0.positions();
  std::vector<Complex> z = cfg0.positions_z();
  RngStream rng(settings.seed);

  double sigma = settings.effective_sigma(contour, n);
  const double sigma_min = 1e-6 * length, sigma_max = 0.45 * length;

  SampleSet out;
  out.contour = cfg0.contour_ptr();
  out.samples.reserve(settings.sweeps / settings.thinning + 1);

  constexpr std::size_t kWindow = 50;  // sweeps per adaptation window
  std::size_t window_accepted = 0, window_proposed = 0;
  std::size_t measured_accepted = 0, measured_proposed = 0;

  const std::size_t total_sweeps = settings.burn_in + settings.sweeps;
  for (std::size_t sweep = 0; sweep < total_sweeps; ++sweep) {
    const bool measuring = sweep >= settings.burn_in;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = rng.normal();
      const double u = rng.uniform_open();
      double sp = std::fmod(s[i] + sigma * g, length);
      if (sp < 0.0) sp += length;
      const Complex zp = contour.position_at(sp);

      ++window_proposed;
      if (measuring) ++measured_proposed;

      bool reject = false;
      double delta_e = 0.0;
      for (std::size_t j = 0; j < n && !reject; ++j) {
        if (j == i) continue;
        const double dist_new = std::abs(zp - z[j]);
        if (dist_new < guard) { reject = true; break; }
        delta_e += 2.0 * (std::log(dist_new) - std::log(std::abs(z[i] - z[j])));
      }
      if (!reject && !p.potential.is_zero())
        delta_e += p.potential.value(zp) - p.potential.value(z[i]);
      // alpha = min(1, exp(beta dE)); symmetric wrapped-Gaussian proposal.
      if (!reject && std::log(u) <= p.beta * delta_e) {
        s[i] = sp;
        z[i] = zp;
        ++window_accepted;
        if (measuring) ++measured_accepted;
      }
    }

    if ((sweep + 1) % kWindow == 0) {
      const double rate = static_cast<double>(window_accepted) /
                          static_cast<double>(window_proposed);
      if (window_accepted == 0)
        throw std::runtime_error(
            "mcmc: zero acceptance over a full sweep window; reduce proposal_sigma");
      if (settings.adapt_sigma && !measuring)
        sigma = std::clamp(sigma * std::exp(1.5 * (rate - 0.4)), sigma_min, sigma_max);
      window_accepted = window_proposed = 0;
    }

    if (measuring && (sweep - settings.burn_in) % settings.thinning == 0)
      out.samples.push_back(s);
  }

  out.acceptance_rate = measured_proposed > 0
                            ? static_cast<double>(measured_accepted) /
                                  static_cast<double>(measured_proposed)
                            : 0.0;
  out.final_sigma = sigma;
  return out;
}

Estimate estimate_observable(const SampleSet& samples, const GasParams&,
                             const std::function<double(const Configuration&)>& f) {
  const std::size_t n = samples.samples.size();
  if (n == 0) throw std::invalid_argument("estimate: empty sample set");

  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k)
    values[k] = f(Configuration::unchecked(samples.contour, samples.samples[k]));

  const std::size_t batches = std::min<std::size_t>(64, n / 10);
  if (batches < 10)
    throw std::runtime_error("estimate: fewer than 10 batches; run a longer chain");
  const std::size_t batch_len = n / batches;

  std::vector<double> mu(batches, 0.0);
  for (std::size_t b = 0; b < batches; ++b) {
    for (std::size_t k = 0; k < batch_len; ++k) mu[b] += values[b * batch_len + k];
    mu[b] /= static_cast<double>(batch_len);
  }
  double mean = 0.0;
  for (double m : mu) mean += m;
  mean /= static_cast<double>(batches);
  double var = 0.0;
  for (double m : mu) var += (m - mean) * (m - mean);
  var /= static_cast<double>(batches - 1);

  Estimate e;
  e.mean = mean;
  e.std_error = std::sqrt(var / static_cast<double>(batches));
  e.batches = batches;
  return e;
}

}  // namespace cdyson
