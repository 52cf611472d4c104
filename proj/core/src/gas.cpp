#include "cdyson/gas.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cdyson {

GasParams::GasParams(std::size_t n, double beta_value, Potential w)
    : n_particles(n), beta(beta_value), kappa(2.0 / beta_value), potential(std::move(w)) {
  if (n_particles < 1) throw std::invalid_argument("gas: n_particles must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("gas: beta must be positive");
  if (std::abs(beta * kappa - 2.0) > 8.0 * std::numeric_limits<double>::epsilon())
    throw std::logic_error("gas: beta * kappa != 2");
}

double separation_guard(const Contour& contour) { return 1e-12 * contour.length(); }

void check_separation(const Contour& contour, std::span<const Complex> z) {
  const double guard = separation_guard(contour);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (std::abs(z[i] - z[j]) < guard) {
        throw std::domain_error("gas: particles " + std::to_string(i) + " and " +
                                std::to_string(j) + " coincide (chordal distance below " +
                                std::to_string(guard) + ")");
      }
    }
  }
}

Configuration::Configuration(std::shared_ptr<const Contour> contour, std::vector<double> s) {
  if (!contour) throw std::invalid_argument("configuration: null contour");
  contour_ = std::move(contour);
  s_.reserve(s.size());
  for (double v : s) s_.push_back(contour_->wrap(v));
  check_separation(*contour_, positions_z());
}

Configuration Configuration::unchecked(std::shared_ptr<const Contour> contour,
                                       std::vector<double> s) {
  Configuration cfg;
  cfg.contour_ = std::move(contour);
  cfg.s_ = std::move(s);
  for (double& v : cfg.s_) v = cfg.contour_->wrap(v);
  return cfg;
}

std::vector<Complex> Configuration::positions_z() const {
  std::vector<Complex> z(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) z[i] = contour_->position_at(s_[i]);
  return z;
}

std::vector<Frame> Configuration::frames() const {
  std::vector<Frame> f(s_.size());
  for (std::size_t i = 0; i < s_.size(); ++i) f[i] = contour_->frame_at(s_[i]);
  return f;
}

Configuration Configuration::displaced(std::size_t i, double ds) const {
  std::vector<double> s = s_;
  s.at(i) = contour_->wrap(s[i] + ds);
  return Configuration(contour_, std::move(s));
}

double energy(const Configuration& cfg, const GasParams& p) {
  const auto z = cfg.positions_z();
  check_separation(cfg.contour(), z);
  double e = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      e += 2.0 * std::log(std::abs(z[i] - z[j]));
  if (!p.potential.is_zero())
    for (const auto& zi : z) e += p.potential.value(zi);
  return e;
}

std::vector<double> drift(const Configuration& cfg, const GasParams& p) {
  const auto frames = cfg.frames();
  const std::size_t n = frames.size();
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = frames[i].z;
  check_separation(cfg.contour(), z);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) sum += 1.0 / (z[i] - z[j]);
    sum += p.potential.dz(z[i]);
    out[i] = 2.0 * (frames[i].tau * sum).real();
  }
  return out;
}

std::vector<double> drift_second(const Configuration& cfg, const GasParams& p) {
  const auto frames = cfg.frames();
  const std::size_t n = frames.size();
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = frames[i].z;
  check_separation(cfg.contour(), z);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex first = 0.0;   // dE/dz_i
    Complex second = 0.0;  // d^2 E/dz_i^2
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex inv = 1.0 / (z[i] - z[j]);
      first += inv;
      second -= inv * inv;
    }
    first += p.potential.dz(z[i]);
    second += p.potential.dzz(z[i]);
    const double dn = 2.0 * (frames[i].nu * first).real();
    out[i] = -frames[i].curvature * dn +
             2.0 * (frames[i].tau * frames[i].tau * second).real() +
             2.0 * p.potential.dzdzbar(z[i]);
  }
  return out;
}

}  // namespace cdyson
