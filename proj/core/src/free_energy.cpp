#include "cdyson/free_energy.hpp"

#include <cmath>
#include <numbers>

#include "json_util.hpp"

namespace cdyson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> pullback(const BoundaryFunction& f, const BoundarySide& side) {
  std::vector<double> values(side.n);
  for (std::size_t j = 0; j < side.n; ++j) values[j] = f(side.u_of_theta[j]);
  return values;
}

}  // namespace

BoundaryFunction BoundaryFunction::constant(double c) {
  return BoundaryFunction([c](double) { return c; });
}

BoundaryFunction BoundaryFunction::from_potential(const Potential& w,
                                                  std::shared_ptr<const Contour> contour) {
  return BoundaryFunction(
      [w, contour](double u) { return w.value(contour->spec().position(u)); });
}

BoundaryFunction BoundaryFunction::psi_ext_trace(const ConformalPair& pair) {
  std::vector<double> psi(pair.exterior.n);
  for (std::size_t j = 0; j < pair.exterior.n; ++j)
    psi[j] = -std::log(pair.exterior.ds_dtheta[j]);
  auto series = spectral::TrigSeries::from_values(psi);
  BoundarySide side = pair.exterior;
  return BoundaryFunction(
      [series, side](double u) { return series(side.theta_of_u(u)); });
}

BoundaryFunction neumann_jump(const BoundaryFunction& f, const ConformalPair& pair,
                              JumpDiagnostics* diagnostics) {
  const auto f_int = pullback(f, pair.interior);
  const auto f_ext = pullback(f, pair.exterior);
  if (diagnostics) {
    diagnostics->tail_int = spectral::tail_fraction(f_int);
    diagnostics->tail_ext = spectral::tail_fraction(f_ext);
  }

  const auto lam_int = spectral::dirichlet_to_neumann(f_int);
  const auto lam_ext = spectral::dirichlet_to_neumann(f_ext);
  const std::size_t n = pair.interior.n;
  std::vector<double> dn_int(n), dn_ext(n);
  for (std::size_t j = 0; j < n; ++j) {
    dn_int[j] = lam_int[j] / pair.interior.ds_dtheta[j];
    dn_ext[j] = -lam_ext[j] / pair.exterior.ds_dtheta[j];
  }
  auto series_int = spectral::TrigSeries::from_values(dn_int);
  auto series_ext = spectral::TrigSeries::from_values(dn_ext);
  BoundarySide side_int = pair.interior;
  BoundarySide side_ext = pair.exterior;
  return BoundaryFunction([series_int, series_ext, side_int, side_ext](double u) {
    return series_int(side_int.theta_of_u(u)) - series_ext(side_ext.theta_of_u(u));
  });
}

double integrate_ds(const BoundaryFunction& f, const ConformalPair& pair) {
  const BoundarySide& side = pair.interior;
  double acc = 0.0;
  for (std::size_t j = 0; j < side.n; ++j)
    acc += f(side.u_of_theta[j]) * side.ds_dtheta[j];
  return acc * kTwoPi / static_cast<double>(side.n);
}

F0F1 compute_F0_F1(const ConformalPair& pair, const Potential& w, double beta,
                   F1Convention convention) {
  F0F1 out;
  out.f0 = beta * std::log(pair.conformal_radius);

  // (1/2pi) oint |w'_ext| W ds = mean of W over the exterior uniformized angle.
  double mean_w = 0.0;
  if (!w.is_zero()) {
    for (std::size_t j = 0; j < pair.exterior.n; ++j)
      mean_w += w.value(pair.contour->spec().position(pair.exterior.u_of_theta[j]));
    mean_w /= static_cast<double>(pair.exterior.n);
  }

  const double r = pair.conformal_radius;
  double f1 = beta * mean_w -
              (beta - 1.0) * std::log(std::numbers::e / (kTwoPi * beta) * r) +
              std::log(kTwoPi) - std::lgamma(beta);
  if (convention == F1Convention::Morris) f1 -= (beta - 1.0) * std::log(kTwoPi);
  out.f1 = f1;
  return out;
}

double compute_F2cl(const ConformalPair& pair, const PsiFields&, const Potential& w,
                    double beta) {
  auto psi_ext = BoundaryFunction::psi_ext_trace(pair);
  auto w_trace = BoundaryFunction::from_potential(w, pair.contour);
  const double c = 1.0 - 1.0 / beta;
  BoundaryFunction g([psi_ext, w_trace, c](double u) { return c * psi_ext(u) + w_trace(u); });
  auto jump = neumann_jump(g, pair);
  BoundaryFunction integrand([g, jump](double u) { return g(u) * jump(u); });
  return beta / (8.0 * std::numbers::pi) * integrate_ds(integrand, pair);
}

F2qResult compute_F2q(const ConformalPair& pair, const PsiFields& psi, double beta,
                      double tol) {
  const std::size_t n = pair.interior.n;

  // Contour route: oint psi d_n psi ds per side, trapezoidal in uniform
  // arclength nodes with trigonometric resampling of the computed fields.
  // The area route below integrates in the uniformized angle instead, so the
  // two quadratures share no node family.
  const Contour& contour = *pair.contour;
  const double length = contour.length();
  auto side_integral = [&](const BoundarySide& side, const std::vector<double>& psi_v,
                           const std::vector<double>& dn_v) {
    const auto psi_series = spectral::TrigSeries::from_values(psi_v);
    const auto dn_series = spectral::TrigSeries::from_values(dn_v);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = length * static_cast<double>(k) / static_cast<double>(n);
      const double theta = side.theta_of_u(contour.parameter(s));
      acc += psi_series(theta) * dn_series(theta);
    }
    return acc * length / static_cast<double>(n);
  };
  const double a_int = side_integral(pair.interior, psi.psi_int, psi.dn_psi_int);
  const double a_ext = side_integral(pair.exterior, psi.psi_ext, psi.dn_psi_ext);

  const double delta = psi.psi_ext_infinity - psi.psi_int_center;
  F2qResult out;
  out.f2_q = (a_int - a_ext) / (24.0 * std::numbers::pi) + delta / 6.0 +
             0.5 * std::log(beta);
  out.loewner_contour = 24.0 * (out.f2_q - 0.5 * std::log(beta));

  // Area route: Dirichlet energies of the harmonic extensions, conformally
  // invariant, evaluated by Parseval in each uniformized coordinate.
  auto dirichlet = [](const std::vector<double>& trace) {
    const auto c = spectral::coefficients(trace);
    const std::size_t m = c.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const int mode = spectral::signed_mode(k, m);
      acc += std::abs(mode) * std::norm(c[k]);
    }
    return kTwoPi * acc;
  };
  out.loewner_area = (dirichlet(psi.psi_int) + dirichlet(psi.psi_ext)) / std::numbers::pi +
                     4.0 * delta;
  out.consistent = std::abs(out.loewner_contour - out.loewner_area) <=
                   tol * std::max(1.0, std::abs(out.loewner_area));
  return out;
}

FreeEnergyReport free_energy_report(const std::shared_ptr<const Contour>& contour,
                                    const Potential& w, double beta,
                                    const ConformalSettings& settings,
                                    F1Convention convention) {
  const auto pair = solve_maps(contour, settings);
  const auto psi = eval_psi(pair);
  const auto f01 = compute_F0_F1(pair, w, beta, convention);
  const auto f2q = compute_F2q(pair, psi, beta);

  FreeEnergyReport report;
  report.beta = beta;
  report.f0 = f01.f0;
  report.f1 = f01.f1;
  report.f1_convention = convention;
  report.f2_cl = compute_F2cl(pair, psi, w, beta);
  report.f2_q = f2q.f2_q;
  report.loewner_contour = f2q.loewner_contour;
  report.loewner_area = f2q.loewner_area;
  report.correspondence_tolerance = settings.tolerance;
  report.loewner_consistent = f2q.consistent;
  return report;
}

std::string to_json_string(const FreeEnergyReport& report) {
  detail::json j = {
      {"beta", report.beta},
      {"F0", report.f0},
      {"F1", report.f1},
      {"F1_convention", report.f1_convention == F1Convention::Arclength ? "arclength" : "morris"},
      {"F2_cl", report.f2_cl},
      {"F2_q", report.f2_q},
      {"loewner_contour", report.loewner_contour},
      {"loewner_area", report.loewner_area},
      {"tolerances",
       {{"loewner_consistency", report.loewner_tolerance},
        {"correspondence_defect", report.correspondence_tolerance}}},
      {"loewner_consistent", report.loewner_consistent},
  };
  return j.dump(2);
}

}  // namespace cdyson
