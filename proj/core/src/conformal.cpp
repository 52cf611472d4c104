#include "cdyson/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json_util.hpp"

namespace cdyson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Polar description of the contour about the origin: phi(u) = arg z(u),
// unwrapped and strictly increasing for a counterclockwise simple curve
// enclosing 0 that is star-shaped about 0.
class PolarTable {
 public:
  explicit PolarTable(const Contour& contour) : contour_(&contour) {
    const std::size_t k = std::max<std::size_t>(contour.grid_size(), 512);
    u_.resize(k + 1);
    phi_.resize(k + 1);
    double prev = std::arg(contour.spec().position(0.0));
    phi_[0] = prev;
    u_[0] = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double u = kTwoPi * static_cast<double>(j) / static_cast<double>(k);
      double phi = std::arg(contour.spec().position(u));
      while (phi < prev - std::numbers::pi) phi += kTwoPi;
      while (phi > prev + std::numbers::pi) phi -= kTwoPi;
      u_[j] = u;
      phi_[j] = phi;
      prev = phi;
    }
    if (std::abs(phi_[k] - phi_[0] - kTwoPi) > 1e-9)
      throw std::invalid_argument(
          "conformal: contour must wind once around the origin (0 must be interior)");
    for (std::size_t j = 0; j < k; ++j) {
      if (!(phi_[j + 1] > phi_[j]))
        throw std::invalid_argument(
            "conformal: contour is not star-shaped about the origin near u = " +
            std::to_string(u_[j]) + "; the correspondence iteration requires arg z(u) "
            "to be monotone");
    }
  }

  double phi_base() const { return phi_[0]; }

  // d arg z / du = Im(z'/z).
  double dphi_du(double u) const {
    const Complex z = contour_->spec().position(u);
    const Complex v = contour_->spec().velocity(u);
    return (v / z).imag();
  }

  // Continuous phi at arbitrary u obtained by re-branching atan2 against the
  // table interpolant (the table is dense enough that the error is < pi).
  double phi_at(double u) const {
    const double wind = std::floor(u / kTwoPi);
    const double u0 = u - wind * kTwoPi;
    const std::size_t k = u_.size() - 1;
    const double x = u0 / kTwoPi * static_cast<double>(k);
    const std::size_t j = std::min(static_cast<std::size_t>(x), k - 1);
    const double w = x - static_cast<double>(j);
    const double guess = (1.0 - w) * phi_[j] + w * phi_[j + 1] + wind * kTwoPi;
    const double raw = std::arg(contour_->spec().position(u0));
    return raw + kTwoPi * std::round((guess - raw) / kTwoPi);
  }

  // Invert phi(u) = target by bracketed Newton.
  double u_of_phi(double target) const {
    const double wind = std::floor((target - phi_[0]) / kTwoPi);
    const double t0 = target - wind * kTwoPi;  // in [phi_0, phi_0 + 2pi)
    const auto it = std::upper_bound(phi_.begin(), phi_.end(), t0);
    std::size_t j = static_cast<std::size_t>(
        std::max<std::ptrdiff_t>(0, it - phi_.begin() - 1));
    j = std::min(j, u_.size() - 2);
    double lo = u_[j], hi = u_[j + 1];
    const double span = phi_[j + 1] - phi_[j];
    double u = lo + (hi - lo) * (span > 0.0 ? (t0 - phi_[j]) / span : 0.5);
    for (int iter = 0; iter < 60; ++iter) {
      const double f = phi_at(u) - t0;
      if (std::abs(f) <= 1e-14) break;
      if (f > 0.0) hi = u; else lo = u;
      double next = u - f / dphi_du(u);
      if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
      u = next;
    }
    return u + wind * kTwoPi;
  }

  double log_abs_z(double u) const { return std::log(std::abs(contour_->spec().position(u))); }

 private:
  const Contour* contour_;
  std::vector<double> u_;
  std::vector<double> phi_;
};

struct TheodorsenResult {
  std::vector<double> offset;  // x(theta) = phi(theta) - theta at uniform theta
  std::size_t iterations = 0;
};

// Fixed point of x = K[log rho(theta + x)] where K is the circle conjugation:
// the boundary correspondence of the disk map onto the region with polar
// radius rho(phi).
template <typename LogRho>
TheodorsenResult theodorsen(LogRho&& log_rho, std::size_t n, double tol,
                            std::size_t max_iter) {
  std::vector<double> x(n, 0.0), y(n);
  double relax = 1.0;
  double prev_defect = std::numeric_limits<double>::infinity();
  std::size_t growing = 0;
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t j = 0; j < n; ++j)
      y[j] = log_rho(kTwoPi * static_cast<double>(j) / static_cast<double>(n) + x[j]);
    const auto xn = spectral::conjugate(y);
    double defect = 0.0;
    for (std::size_t j = 0; j < n; ++j) defect = std::max(defect, std::abs(xn[j] - x[j]));
    for (std::size_t j = 0; j < n; ++j) x[j] = (1.0 - relax) * x[j] + relax * xn[j];
    if (defect <= tol) return {std::move(x), iter};
    if (defect > prev_defect * (1.0 + 1e-12)) {
      if (++growing >= 3) {
        relax = std::max(0.2, relax * 0.6);
        growing = 0;
      }
    } else {
      growing = 0;
    }
    prev_defect = defect;
  }
  throw std::runtime_error("conformal: correspondence iteration did not converge; defect = " +
                           std::to_string(prev_defect));
}

}  // namespace

double BoundarySide::theta_j(std::size_t j) const {
  return kTwoPi * static_cast<double>(j) / static_cast<double>(n);
}

double BoundarySide::u_at(double theta) const { return theta + u_periodic(theta); }

double BoundarySide::du_dtheta_at(double theta) const {
  return 1.0 + u_periodic.derivative_at(theta);
}

double BoundarySide::theta_of_u(double u) const {
  // Bring u into the table's principal window, solve, and shift back.
  const double base = u_of_theta[0];
  const double wind = std::floor((u - base) / kTwoPi);
  const double u0 = u - wind * kTwoPi;
  const auto it = std::upper_bound(u_of_theta.begin(), u_of_theta.end(), u0);
  std::size_t j = static_cast<std::size_t>(
      std::max<std::ptrdiff_t>(0, it - u_of_theta.begin() - 1));
  j = std::min(j, n - 1);
  double lo = theta_j(j);
  double hi = lo + kTwoPi / static_cast<double>(n);
  double theta = 0.5 * (lo + hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = u_at(theta) - u0;
    if (std::abs(f) <= 1e-13) break;
    if (f > 0.0) hi = theta; else lo = theta;
    double next = theta - f / du_dtheta_at(theta);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    theta = next;
  }
  return theta + wind * kTwoPi;
}

ConformalPair solve_maps(const std::shared_ptr<const Contour>& contour,
                         const ConformalSettings& settings) {
  if (!contour) throw std::invalid_argument("conformal: null contour");
  const std::size_t n = settings.modes;
  if (n < 16 || (n & (n - 1)) != 0)
    throw std::invalid_argument("conformal: modes must be a power of two >= 16");

  PolarTable polar(*contour);

  ConformalPair pair;
  pair.contour = contour;

  // Interior: disk onto the region bounded by the curve itself.
  auto interior = theodorsen(
      [&](double phi) { return polar.log_abs_z(polar.u_of_phi(phi)); }, n,
      settings.tolerance, settings.max_iterations);
  // Exterior: disk onto the inverted region zeta = 1/z. The inverted curve has
  // polar angle -phi and radius 1/|z|; theta_ext = -theta_tilde keeps the
  // exterior correspondence counterclockwise.
  auto exterior = theodorsen(
      [&](double phi_tilde) { return -polar.log_abs_z(polar.u_of_phi(-phi_tilde)); }, n,
      settings.tolerance, settings.max_iterations);
  pair.iterations_int = interior.iterations;
  pair.iterations_ext = exterior.iterations;

  const auto x_int = spectral::TrigSeries::from_values(interior.offset);
  const auto x_ext = spectral::TrigSeries::from_values(exterior.offset);

  auto build_side = [&](bool is_exterior) {
    BoundarySide side;
    side.n = n;
    side.u_of_theta.resize(n);
    side.s_of_theta.resize(n);
    side.ds_dtheta.resize(n);
    std::vector<double> u_minus_theta(n);
    double log_abs_sum = 0.0;
    double prev_u = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      double phi, dphi_dtheta;
      if (!is_exterior) {
        phi = theta + interior.offset[j];
        dphi_dtheta = 1.0 + x_int.derivative_at(theta);
      } else {
        // phi(theta) = -phi_tilde(-theta) with phi_tilde = theta_tilde + x_ext.
        const double xt = x_ext(-theta);
        phi = theta - xt;
        dphi_dtheta = 1.0 + x_ext.derivative_at(-theta);
      }
      double u = polar.u_of_phi(phi);
      if (j > 0) u += kTwoPi * std::round((prev_u - u) / kTwoPi);  // keep increasing branch
      prev_u = u;
      const double dphi_du = polar.dphi_du(u);
      if (!(dphi_dtheta > 0.0) || !(dphi_du > 0.0))
        throw std::runtime_error("conformal: boundary correspondence is not monotone");
      const double du_dtheta = dphi_dtheta / dphi_du;
      side.u_of_theta[j] = u;
      side.s_of_theta[j] = contour->arclength(u);
      side.ds_dtheta[j] = contour->spec().speed(u) * du_dtheta;
      u_minus_theta[j] = u - theta;
      log_abs_sum += polar.log_abs_z(u);
    }
    side.u_periodic = spectral::TrigSeries::from_values(u_minus_theta);
    return std::pair{side, log_abs_sum / static_cast<double>(n)};
  };

  auto [side_int, mean_log_int] = build_side(false);
  auto [side_ext, mean_log_ext] = build_side(true);
  pair.interior = std::move(side_int);
  pair.exterior = std::move(side_ext);

  // Normalizations: w'_int(0) = exp(-mean log |z|) over interior nodes;
  // r = w_tilde'(0)^... = exp(mean log |z|) over exterior nodes.
  pair.psi_int_center = -mean_log_int;
  pair.conformal_radius = std::exp(mean_log_ext);
  return pair;
}

PsiFields eval_psi(const ConformalPair& pair) {
  const std::size_t n = pair.interior.n;
  PsiFields psi;
  psi.psi_int.resize(n);
  psi.psi_ext.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    psi.psi_int[j] = -std::log(pair.interior.ds_dtheta[j]);
    psi.psi_ext[j] = -std::log(pair.exterior.ds_dtheta[j]);
  }
  // Outward normal derivative: |w'| times the disk-side radial derivative.
  // Interior multiplier |m|; exterior multiplier -|m| (decay toward infinity).
  const auto lam_int = spectral::dirichlet_to_neumann(psi.psi_int);
  const auto lam_ext = spectral::dirichlet_to_neumann(psi.psi_ext);
  psi.dn_psi_int.resize(n);
  psi.dn_psi_ext.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    psi.dn_psi_int[j] = lam_int[j] / pair.interior.ds_dtheta[j];
    psi.dn_psi_ext[j] = -lam_ext[j] / pair.exterior.ds_dtheta[j];
  }
  psi.psi_int_center = pair.psi_int_center;
  psi.psi_ext_infinity = -std::log(pair.conformal_radius);
  return psi;
}

std::string ConformalPair::to_json_string() const {
  auto side_json = [](const BoundarySide& side) {
    return detail::json{{"u_of_theta", side.u_of_theta},
                        {"s_of_theta", side.s_of_theta},
                        {"ds_dtheta", side.ds_dtheta}};
  };
  detail::json j = {{"modes", interior.n},
                    {"contour_key", contour->spec().canonical_key()},
                    {"conformal_radius", conformal_radius},
                    {"psi_int_center", psi_int_center},
                    {"interior", side_json(interior)},
                    {"exterior", side_json(exterior)}};
  return j.dump();
}

ConformalPair ConformalPair::from_json_string(const std::string& text,
                                              std::shared_ptr<const Contour> contour) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("conformal cache: invalid JSON: ") + e.what());
  }
  if (!contour) throw std::invalid_argument("conformal cache: null contour");
  if (j.at("contour_key").get<std::string>() != contour->spec().canonical_key())
    throw ConfigError("conformal cache: contour key mismatch");

  auto read_side = [&](const detail::json& js) {
    BoundarySide side;
    side.u_of_theta = js.at("u_of_theta").get<std::vector<double>>();
    side.s_of_theta = js.at("s_of_theta").get<std::vector<double>>();
    side.ds_dtheta = js.at("ds_dtheta").get<std::vector<double>>();
    side.n = side.u_of_theta.size();
    std::vector<double> u_minus_theta(side.n);
    for (std::size_t k = 0; k < side.n; ++k)
      u_minus_theta[k] = side.u_of_theta[k] - side.theta_j(k);
    side.u_periodic = spectral::TrigSeries::from_values(u_minus_theta);
    return side;
  };

  ConformalPair pair;
  pair.contour = std::move(contour);
  pair.interior = read_side(j.at("interior"));
  pair.exterior = read_side(j.at("exterior"));
  pair.conformal_radius = j.at("conformal_radius").get<double>();
  pair.psi_int_center = j.at("psi_int_center").get<double>();
  return pair;
}

}  // namespace cdyson
