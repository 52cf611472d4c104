#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace cdyson {

using Complex = std::complex<double>;

struct FourierMode {
  int m = 0;
  Complex c;
};

/// A smooth closed plane curve z(u) = sum_m c_m e^{i m u}, u in [0, 2pi).
class ContourSpec {
 public:
  static ContourSpec circle(Complex center, double radius);
  static ContourSpec ellipse(double a, double b);
  static ContourSpec fourier(std::vector<FourierMode> modes);

  static ContourSpec from_json_string(const std::string& text);
  static ContourSpec from_json_file(const std::string& path);
  std::string to_json_string() const;

  Complex position(double u) const;
  Complex velocity(double u) const;      // dz/du
  Complex acceleration(double u) const;  // d^2 z/du^2
  double speed(double u) const { return std::abs(velocity(u)); }

  /// pi * sum_m m |c_m|^2; positive for counterclockwise orientation.
  double signed_area() const;

  /// Reverse orientation in place (c_m <-> c_{-m}).
  void reverse();

  /// True when the only modes are m in {0, 1}: a geometric circle.
  bool is_circle() const;

  const std::vector<FourierMode>& modes() const { return modes_; }

  /// Stable textual key for cache identification.
  std::string canonical_key() const;

 private:
  std::vector<FourierMode> modes_;  // sorted by m, zero modes removed
};

/// Position, frame and curvature of a contour point.
/// tau is the unit counterclockwise tangent, nu = -i tau the outward normal,
/// so tau = i nu holds exactly.
struct Frame {
  Complex z;
  Complex tau;
  Complex nu;
  double curvature = 0.0;
  double s = 0.0;
};

/// Immutable arclength-parametrized contour. Construction validates
/// regularity (|z'| > 0) and simplicity (polyline self-intersection scan at
/// 8x grid density, a documented heuristic), and reorients clockwise input.
/// Safe to share across threads after construction.
class Contour {
 public:
  static std::shared_ptr<const Contour> build(const ContourSpec& spec,
                                              std::size_t grid_size = 1024);

  double length() const { return length_; }
  std::size_t grid_size() const { return grid_; }
  const ContourSpec& spec() const { return spec_; }
  int interpolation_order() const { return 3; }

  /// Cumulative arclength s(u); u is unrestricted, s(u + 2pi) = s(u) + L.
  double arclength(double u) const;

  /// Inverse map u(s); s is interpreted modulo L, result in [0, 2pi).
  double parameter(double s) const;

  /// Wrap an arclength coordinate into [0, L).
  double wrap(double s) const;

  Frame frame_at(double s) const;
  Frame frame_at_parameter(double u) const;

  /// Position only; cheaper than a full frame.
  Complex position_at(double s) const;

 private:
  Contour() = default;

  ContourSpec spec_;
  std::size_t grid_ = 0;
  double length_ = 0.0;
  std::vector<double> s_table_;  // s at u_j = 2 pi j / grid, size grid+1
};

}  // namespace cdyson
