#include "cdyson/potential.hpp"

#include <cmath>

#include "json_util.hpp"

namespace cdyson {

Potential Potential::zero() { return Potential(); }

Potential Potential::harmonic(std::vector<double> coeffs) {
  Potential w;
  w.kind_ = PotentialKind::Harmonic;
  w.coeffs_ = std::move(coeffs);
  while (!w.coeffs_.empty() && w.coeffs_.back() == 0.0) w.coeffs_.pop_back();
  if (w.coeffs_.empty()) w.kind_ = PotentialKind::Zero;
  return w;
}

Potential Potential::radial(double c) {
  Potential w;
  if (c == 0.0) return w;
  w.kind_ = PotentialKind::Radial;
  w.coeffs_ = {c};
  return w;
}

bool Potential::is_zero() const { return kind_ == PotentialKind::Zero; }

double Potential::value(Complex z) const {
  switch (kind_) {
    case PotentialKind::Zero: return 0.0;
    case PotentialKind::Radial: return coeffs_[0] * std::norm(z);
    case PotentialKind::Harmonic: {
      double acc = 0.0;
      Complex zk = z;
      for (double t : coeffs_) {
        acc += t * zk.real();
        zk *= z;
      }
      return acc;
    }
  }
  return 0.0;
}

Complex Potential::dz(Complex z) const {
  switch (kind_) {
    case PotentialKind::Zero: return 0.0;
    case PotentialKind::Radial: return coeffs_[0] * std::conj(z);
    case PotentialKind::Harmonic: {
      // Re(z^k) = (z^k + conj(z)^k)/2, so d/dz = k z^{k-1} / 2.
      Complex acc = 0.0;
      Complex zk = 1.0;
      for (std::size_t k = 1; k <= coeffs_.size(); ++k) {
        acc += coeffs_[k - 1] * 0.5 * static_cast<double>(k) * zk;
        zk *= z;
      }
      return acc;
    }
  }
  return 0.0;
}

Complex Potential::dzz(Complex z) const {
  switch (kind_) {
    case PotentialKind::Zero:
    case PotentialKind::Radial:
      return 0.0;
    case PotentialKind::Harmonic: {
      Complex acc = 0.0;
      Complex zk = 1.0;
      for (std::size_t k = 2; k <= coeffs_.size(); ++k) {
        if (k > 2) zk *= z;
        acc += coeffs_[k - 1] * 0.5 * static_cast<double>(k) * static_cast<double>(k - 1) * zk;
      }
      return acc;
    }
  }
  return 0.0;
}

double Potential::dzdzbar(Complex) const {
  return kind_ == PotentialKind::Radial ? coeffs_[0] : 0.0;
}

double Potential::tangential(const Frame& f) const {
  if (kind_ == PotentialKind::Zero) return 0.0;
  return 2.0 * (f.tau * dz(f.z)).real();
}

double Potential::tangential2(const Frame& f) const {
  if (kind_ == PotentialKind::Zero) return 0.0;
  const Complex wz = dz(f.z);
  const double dn = 2.0 * (f.nu * wz).real();
  return -f.curvature * dn + 2.0 * (f.tau * f.tau * dzz(f.z)).real() + 2.0 * dzdzbar(f.z);
}

Potential Potential::from_json_string(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("potential: invalid JSON: ") + e.what());
  }
  detail::check_keys(j, "potential", {"kind", "coeffs", "coeff"});
  const auto& kind = detail::require_field(j, "potential", "kind");
  if (!kind.is_string()) throw ConfigError("potential.kind: expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "zero") {
    detail::check_keys(j, "potential", {"kind"});
    return zero();
  }
  if (k == "harmonic") {
    detail::check_keys(j, "potential", {"kind", "coeffs"});
    const auto& coeffs = detail::require_field(j, "potential", "coeffs");
    if (!coeffs.is_array()) throw ConfigError("potential.coeffs: expected an array of numbers");
    std::vector<double> t;
    for (const auto& c : coeffs) t.push_back(detail::as_number(c, "potential.coeffs[]"));
    return harmonic(std::move(t));
  }
  if (k == "radial") {
    detail::check_keys(j, "potential", {"kind", "coeff"});
    return radial(detail::number_field(j, "potential", "coeff"));
  }
  throw ConfigError("potential.kind: must be one of \"zero\", \"harmonic\", \"radial\"");
}

std::string Potential::to_json_string() const {
  detail::json j;
  switch (kind_) {
    case PotentialKind::Zero: j = {{"kind", "zero"}}; break;
    case PotentialKind::Harmonic: j = {{"kind", "harmonic"}, {"coeffs", coeffs_}}; break;
    case PotentialKind::Radial: j = {{"kind", "radial"}, {"coeff", coeffs_[0]}}; break;
  }
  return j.dump();
}

}  // namespace cdyson
