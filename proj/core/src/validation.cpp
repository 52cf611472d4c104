#include "cdyson/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cdyson/fokker_planck.hpp"
#include "cdyson/io.hpp"
#include "cdyson/stats.hpp"
#include "json_util.hpp"

namespace cdyson {

namespace {

std::vector<double> equispaced(const Contour& contour, std::size_t n) {
  std::vector<double> s(n);
  const double step = contour.length() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = step * (static_cast<double>(i) + 0.5);
  return s;
}

std::vector<double> pooled_gaps(const std::vector<std::vector<double>>& samples,
                                double length) {
  std::vector<double> gaps;
  gaps.reserve(samples.size() * (samples.empty() ? 0 : samples.front().size()));
  for (const auto& s : samples) {
    auto g = circular_gaps(s, length);
    gaps.insert(gaps.end(), g.begin(), g.end());
  }
  return gaps;
}

ValidationCheck check_zero_mode(const std::shared_ptr<const Contour>& contour,
                                const GasParams& p) {
  ValidationCheck check;
  check.name = "stationary_zero_mode";
  check.threshold = 1e-8;
  const auto report = zero_mode_report(contour, p, 40, 20240817);
  check.measured = report.max_residual;
  check.pass = check.measured <= check.threshold;
  check.detail = "max scaled |A* P0| over 40 random configurations";
  return check;
}

ValidationCheck check_sde_vs_mcmc(const std::shared_ptr<const Contour>& contour,
                                  const GasParams& p) {
  ValidationCheck check;
  check.name = "sde_mcmc_gap_ks";
  check.threshold = 0.03;
  if (p.n_particles < 2) {
    check.pass = true;
    check.detail = "skipped for N = 1 (no gap distribution)";
    return check;
  }

  const double L = contour->length();
  const double scale = L / (2.0 * std::numbers::pi);
  const double unit = scale * scale;
  Configuration cfg0(contour, equispaced(*contour, p.n_particles));

  SdeSettings sde;
  sde.dt = 4e-4 * unit;
  sde.t_end = 60.0 * unit;
  sde.burn_in = 8.0 * unit;
  sde.thinning = 50;
  sde.seed = 611953;
  const auto traj = run_trajectory(cfg0, p, sde);

  McSettings mc;
  mc.sweeps = 30000;
  mc.burn_in = 2000;
  mc.thinning = 10;
  mc.seed = 175329;
  const auto chain = mh_chain(cfg0, p, mc);

  const auto gaps_sde = pooled_gaps(traj.samples, L);
  const auto gaps_mc = pooled_gaps(chain.samples, L);
  check.measured = ks_distance(gaps_sde, gaps_mc);
  check.pass = check.measured <= check.threshold;
  check.detail = "two-sample KS distance of nearest-neighbor gaps, " +
                 std::to_string(gaps_sde.size()) + " vs " +
                 std::to_string(gaps_mc.size()) + " samples";
  return check;
}

ValidationCheck check_loewner(const std::shared_ptr<const Contour>& contour,
                              const ConformalSettings& settings) {
  ValidationCheck check;
  check.name = "loewner_consistency";
  check.threshold = 1e-6;
  const auto pair = solve_maps(contour, settings);
  const auto psi = eval_psi(pair);
  const auto f2 = compute_F2q(pair, psi, 2.0);
  const double scale = std::max(1.0, std::abs(f2.loewner_area));
  check.measured = std::abs(f2.loewner_contour - f2.loewner_area) / scale;
  check.pass = check.measured <= check.threshold;
  check.detail = "contour-form vs area-form Loewner energy, I_L = " +
                 format_double(f2.loewner_area);
  if (contour->spec().is_circle()) {
    const bool circle_zero = std::abs(f2.loewner_area) <= 1e-8;
    check.pass = check.pass && circle_zero;
    check.detail += circle_zero ? "; circle energy vanishes" : "; circle energy NONZERO";
  }
  return check;
}

ValidationCheck check_circle_partition(const GasParams& p) {
  ValidationCheck check;
  check.name = "circle_partition_benchmark";
  check.threshold = 1e-8;
  const auto circle = Contour::build(ContourSpec::circle({0.0, 0.0}, 1.0), 256);
  const std::size_t n = std::min<std::size_t>(p.n_particles, 3);
  GasParams bench(n, p.beta);
  QuadratureSettings q;
  q.nodes = 512;
  q.symmetry_reduction = true;
  const double via_quadrature = log_z_quadrature(*circle, bench, q);
  const double via_morris = log_z_morris(n, p.beta);
  check.measured =
      std::abs(via_quadrature - via_morris) / std::max(1.0, std::abs(via_morris));
  check.pass = check.measured <= check.threshold;
  check.detail = "log Z_" + std::to_string(n) + " quadrature vs exact circle value";
  return check;
}

}  // namespace

ValidationReport run_validation(const RunConfig& config) {
  const auto contour = config.build_contour();
  const GasParams p = config.gas();

  ValidationReport report;
  report.checks.push_back(check_zero_mode(contour, p));
  report.checks.push_back(check_sde_vs_mcmc(contour, p));
  report.checks.push_back(check_loewner(contour, config.conformal));
  report.checks.push_back(check_circle_partition(p));
  for (const auto& c : report.checks) report.all_pass = report.all_pass && c.pass;
  return report;
}

std::string ValidationReport::to_json_string() const {
  detail::json checks_json = detail::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"measured", c.measured},
                           {"threshold", c.threshold},
                           {"detail", c.detail}});
  }
  detail::json j = {{"checks", checks_json}, {"all_pass", all_pass}};
  return j.dump(2);
}

}  // namespace cdyson
