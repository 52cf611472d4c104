#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "cdyson/contour.hpp"
#include "cdyson/spectral.hpp"

namespace cdyson {

/// Boundary correspondence of one side's uniformizing map, tabulated at the
/// uniform angles theta_j = 2 pi j / n of the unit circle:
/// z(u_of_theta[j]) corresponds to e^{i theta_j}.
struct BoundarySide {
  std::size_t n = 0;
  std::vector<double> u_of_theta;   // unwrapped, strictly increasing, degree 1
  std::vector<double> s_of_theta;   // arclength at the same nodes (unwrapped)
  std::vector<double> ds_dtheta;    // = 1/|w'| on the contour, positive
  spectral::TrigSeries u_periodic;  // u(theta) - theta

  double theta_j(std::size_t j) const;
  double u_at(double theta) const;        // u(theta), unwrapped
  double du_dtheta_at(double theta) const;
  double theta_of_u(double u) const;      // inverse correspondence
};

/// Interior and exterior conformal maps of a contour to the unit disk and its
/// complement, normalized by w_int(0) = 0, w'_int(0) > 0 and w_ext(inf) = inf,
/// w'_ext(inf) = 1/r > 0.
struct ConformalPair {
  std::shared_ptr<const Contour> contour;
  BoundarySide interior;
  BoundarySide exterior;
  double conformal_radius = 1.0;  // r
  double psi_int_center = 0.0;    // log w'_int(0)
  std::size_t iterations_int = 0;
  std::size_t iterations_ext = 0;

  std::string to_json_string() const;
  static ConformalPair from_json_string(const std::string& text,
                                        std::shared_ptr<const Contour> contour);
};

struct ConformalSettings {
  // 1024 modes resolve every curve-zoo member to ~1e-10; eccentric interiors
  // (ellipse a/b = 2) fall short of 1e-6 at 512 due to crowding.
  std::size_t modes = 1024;
  double tolerance = 1e-12;      // sup defect of the correspondence iteration
  std::size_t max_iterations = 800;
};

/// Solve both boundary correspondences by Theodorsen iteration with FFT-based
/// conjugation (under-relaxed automatically when the defect grows); the
/// exterior map is obtained from the same machinery on the inverted curve
/// zeta = 1/z. Requires 0 in the interior and a curve star-shaped about 0.
ConformalPair solve_maps(const std::shared_ptr<const Contour>& contour,
                         const ConformalSettings& settings = {});

/// psi = log |w'| traces and outward normal derivatives on the contour,
/// sampled at each side's uniformized nodes.
struct PsiFields {
  std::vector<double> psi_int;     // at interior nodes
  std::vector<double> dn_psi_int;  // outward normal derivative
  std::vector<double> psi_ext;     // at exterior nodes
  std::vector<double> dn_psi_ext;
  double psi_int_center = 0.0;     // psi_int(0) = log w'_int(0)
  double psi_ext_infinity = 0.0;   // psi_ext(inf) = -log r
};

PsiFields eval_psi(const ConformalPair& pair);

}  // namespace cdyson
