#include "cdyson/sde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cdyson {

namespace {

double min_circular_gap(std::vector<double> s, double length) {
  if (s.size() < 2) return length;
  std::sort(s.begin(), s.end());
  double gap = length - s.back() + s.front();
  for (std::size_t i = 1; i < s.size(); ++i) gap = std::min(gap, s[i] - s[i - 1]);
  return gap;
}

bool separation_ok(const Contour& contour, const std::vector<double>& s) {
  const double guard = separation_guard(contour);
  std::vector<Complex> z(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) z[i] = contour.position_at(s[i]);
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (std::abs(z[i] - z[j]) < guard) return false;
  return true;
}

Configuration step_impl(const Configuration& cfg, const GasParams& p,
                        const SdeSettings& settings, RngStream& rng,
                        std::uint64_t* rejections) {
  const Contour& contour = cfg.contour();
  const double length = contour.length();
  const double step = settings.effective_dt(contour);
  const auto grad = drift(cfg, p);
  const std::size_t n = cfg.size();

  double cap = std::numeric_limits<double>::infinity();
  if (n >= 2) cap = settings.taming_cap * min_circular_gap(cfg.positions(), length);

  std::vector<double> tamed(n);
  for (std::size_t i = 0; i < n; ++i)
    tamed[i] = std::clamp(grad[i] * step, -cap, cap);

  const double noise_scale = std::sqrt(p.kappa * step);
  std::vector<double> proposal(n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = cfg.positions()[i] + tamed[i] + noise_scale * rng.normal();
      s = std::fmod(s, length);
      if (s < 0.0) s += length;
      proposal[i] = s;
    }
    if (separation_ok(contour, proposal))
      return Configuration::unchecked(cfg.contour_ptr(), std::move(proposal));
    if (rejections) ++*rejections;
  }
  throw std::runtime_error(
      "sde: step rejected 1000 times by the separation guard; reduce dt");
}

}  // namespace

void SdeSettings::validate() const {
  if (dt < 0.0) throw std::invalid_argument("sde: dt must be nonnegative");
  if (t_end < 0.0) throw std::invalid_argument("sde: t_end must be nonnegative");
  if (!(taming_cap > 0.0) || taming_cap > 0.5)
    throw std::invalid_argument("sde: taming_cap must lie in (0, 0.5]");
  if (thinning < 1) throw std::invalid_argument("sde: thinning must be >= 1");
}

double SdeSettings::effective_dt(const Contour& contour) const {
  if (dt > 0.0) return dt;
  const double scale = contour.length() / (2.0 * std::numbers::pi);
  return 1e-4 * scale * scale;  // documented heuristic default
}

Configuration sde_step(const Configuration& cfg, const GasParams& p,
                       const SdeSettings& settings, RngStream& rng) {
  settings.validate();
  return step_impl(cfg, p, settings, rng, nullptr);
}

Complex embed_increment(const Frame& frame, double ds) {
  return frame.tau * ds - 0.5 * frame.nu * frame.curvature * ds * ds;
}

Trajectory run_trajectory(const Configuration& cfg0, const GasParams& p,
                          const SdeSettings& settings) {
  settings.validate();
  const Contour& contour = cfg0.contour();
  const double step = settings.effective_dt(contour);
  const auto total = static_cast<std::uint64_t>(std::llround(settings.t_end / step));

  Trajectory traj;
  traj.contour = cfg0.contour_ptr();

  RngStream rng(settings.seed);
  Configuration cfg = cfg0;
  std::uint64_t recorded_base = 0;
  bool burning = settings.burn_in > 0.0;
  if (!burning) {
    traj.times.push_back(0.0);
    traj.samples.push_back(cfg.positions());
  }

  for (std::uint64_t k = 1; k <= total; ++k) {
    cfg = step_impl(cfg, p, settings, rng, &traj.rejected_steps);
    const double t = static_cast<double>(k) * step;
    traj.total_steps += 1;
    if (burning && t >= settings.burn_in) {
      burning = false;
      recorded_base = k;
    }
    if (!burning && (k - recorded_base) % settings.thinning == 0) {
      traj.times.push_back(t);
      traj.samples.push_back(cfg.positions());
    }
  }
  return traj;
}

}  // namespace cdyson
