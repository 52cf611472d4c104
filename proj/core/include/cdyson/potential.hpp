#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cdyson/contour.hpp"

namespace cdyson {

enum class PotentialKind { Zero, Harmonic, Radial };

/// Real external potential evaluated on and near the contour. Restricted to
/// families with closed-form Wirtinger derivatives:
///   harmonic:  W(z) = sum_k t_k Re(z^k)
///   radial:    W(z) = c |z|^2
class Potential {
 public:
  Potential() = default;

  static Potential zero();
  static Potential harmonic(std::vector<double> coeffs);  // t_1, t_2, ...
  static Potential radial(double c);

  static Potential from_json_string(const std::string& text);
  std::string to_json_string() const;

  bool is_zero() const;
  PotentialKind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double value(Complex z) const;
  Complex dz(Complex z) const;       // dW/dz
  Complex dzz(Complex z) const;      // d^2 W/dz^2
  double dzdzbar(Complex z) const;   // d^2 W/dz dzbar (real)

  /// Tangential derivative along the contour, 2 Re(tau dW/dz).
  double tangential(const Frame& f) const;
  /// Second tangential derivative: -k d_n W + 2 Re(tau^2 W_zz) + 2 W_zzbar.
  double tangential2(const Frame& f) const;

 private:
  PotentialKind kind_ = PotentialKind::Zero;
  std::vector<double> coeffs_;  // harmonic: t_k; radial: single entry
};

}  // namespace cdyson
