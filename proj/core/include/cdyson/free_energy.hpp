#pragma once

#include <functional>
#include <string>

#include "cdyson/conformal.hpp"
#include "cdyson/potential.hpp"

namespace cdyson {

/// Real function on the contour, addressed by the curve parameter u.
class BoundaryFunction {
 public:
  explicit BoundaryFunction(std::function<double(double)> eval_u)
      : f_(std::move(eval_u)) {}

  double operator()(double u) const { return f_(u); }

  static BoundaryFunction constant(double c);
  static BoundaryFunction from_potential(const Potential& w,
                                         std::shared_ptr<const Contour> contour);
  /// Trace of psi_ext = log|w'_ext| on the contour.
  static BoundaryFunction psi_ext_trace(const ConformalPair& pair);

 private:
  std::function<double(double)> f_;
};

struct JumpDiagnostics {
  double tail_int = 0.0;  // top-octave spectral fraction of the pullbacks
  double tail_ext = 0.0;
};

/// Warn above this unresolved-tail fraction.
inline constexpr double kSpectralTailWarn = 1e-8;

/// Neumann jump operator: f on the contour to d_n f_H - d_n f^H, the
/// difference of outward normal derivatives of its interior and exterior
/// harmonic continuations. Computed by pulling f back through each boundary
/// correspondence, applying the disk Dirichlet-to-Neumann multiplier, and
/// rescaling by |w'|.
BoundaryFunction neumann_jump(const BoundaryFunction& f, const ConformalPair& pair,
                              JumpDiagnostics* diagnostics = nullptr);

/// Contour integral of f against arclength, evaluated in the interior
/// uniformized angle (trapezoidal, spectrally accurate).
double integrate_ds(const BoundaryFunction& f, const ConformalPair& pair);

enum class F1Convention { Arclength, Morris };

struct F0F1 {
  double f0 = 0.0;
  double f1 = 0.0;  // under the requested convention
};

/// F0 = beta log r and the order-N free energy coefficient. The two F1
/// conventions differ by (beta - 1) log(2 pi); see FreeEnergyReport.
F0F1 compute_F0_F1(const ConformalPair& pair, const Potential& w, double beta,
                   F1Convention convention = F1Convention::Arclength);

/// Electrostatic O(1) coefficient:
/// (beta / 8 pi) oint g (N g) ds with g = (1 - 1/beta) psi_ext + W.
double compute_F2cl(const ConformalPair& pair, const PsiFields& psi, const Potential& w,
                    double beta);

struct F2qResult {
  double f2_q = 0.0;
  double loewner_contour = 0.0;  // 24 (F2q - log sqrt(beta))
  double loewner_area = 0.0;     // independent Dirichlet-energy route
  bool consistent = true;
};

/// Fluctuation O(1) coefficient and the Loewner energy computed two ways:
/// the boundary integral of psi d_n psi, and the Dirichlet energies evaluated
/// by Parseval in the uniformized coordinates (area integrals reduced by
/// Green's identity). Inconsistency beyond tol is flagged, both returned.
F2qResult compute_F2q(const ConformalPair& pair, const PsiFields& psi, double beta,
                      double tol = 1e-6);

struct FreeEnergyReport {
  double beta = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  F1Convention f1_convention = F1Convention::Arclength;
  double f2_cl = 0.0;
  double f2_q = 0.0;
  double loewner_contour = 0.0;
  double loewner_area = 0.0;
  double loewner_tolerance = 1e-6;
  double correspondence_tolerance = 1e-12;
  bool loewner_consistent = true;
};

FreeEnergyReport free_energy_report(const std::shared_ptr<const Contour>& contour,
                                    const Potential& w, double beta,
                                    const ConformalSettings& settings = {},
                                    F1Convention convention = F1Convention::Arclength);

std::string to_json_string(const FreeEnergyReport& report);

}  // namespace cdyson
