#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cdyson/fokker_planck.hpp"
#include "cdyson/rng.hpp"
#include "support/oracles.hpp"

using namespace cdyson;
using namespace cdyson::testing;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smooth periodic test function of all coordinates with analytic tangential
// derivatives: f = prod_i (2 + cos(k_i 2 pi s_i / L + phase_i)).
GridFunction trig_test_function(const std::vector<int>& k, const std::vector<double>& phase,
                                double length) {
  const double w = kTwoPi / length;
  auto factor = [=](const Configuration& cfg, std::size_t i) {
    return 2.0 + std::cos(k[i] * w * cfg.positions()[i] + phase[i]);
  };
  auto value = [=](const Configuration& cfg) {
    double acc = 1.0;
    for (std::size_t i = 0; i < cfg.size(); ++i) acc *= factor(cfg, i);
    return acc;
  };
  auto d1 = [=](const Configuration& cfg, std::size_t i) {
    double acc = -k[i] * w * std::sin(k[i] * w * cfg.positions()[i] + phase[i]);
    for (std::size_t j = 0; j < cfg.size(); ++j)
      if (j != i) acc *= factor(cfg, j);
    return acc;
  };
  auto d2 = [=](const Configuration& cfg, std::size_t i) {
    double acc = -k[i] * w * k[i] * w * std::cos(k[i] * w * cfg.positions()[i] + phase[i]);
    for (std::size_t j = 0; j < cfg.size(); ++j)
      if (j != i) acc *= factor(cfg, j);
    return acc;
  };
  return GridFunction::callable(value, d1, d2);
}

}  // namespace

TEST_CASE("generator on constants and on a pure harmonic") {
  const auto c = unit_circle();
  GasParams p(1, 2.0);  // kappa = 1, zero drift
  const auto one = GridFunction::callable([](const Configuration&) { return 1.0; });
  const auto cosine = GridFunction::callable(
      [](const Configuration& cfg) { return std::cos(cfg.positions()[0]); },
      [](const Configuration& cfg, std::size_t) { return -std::sin(cfg.positions()[0]); },
      [](const Configuration& cfg, std::size_t) { return -std::cos(cfg.positions()[0]); });
  RngStream rng(5);
  for (int k = 0; k < 10; ++k) {
    const auto cfg = random_configuration(c, 1, rng);
    CHECK(std::abs(apply_generator(one, p, cfg)) < 1e-9);
    CHECK(apply_generator(cosine, p, cfg) ==
          doctest::Approx(-0.5 * p.kappa * std::cos(cfg.positions()[0])).epsilon(1e-10));
  }
}

TEST_CASE("generator applied to the energy itself matches the analytic oracle") {
  const auto c = unit_circle();
  GasParams p(2, 2.0);
  const auto e_fn = GridFunction::callable(
      [p](const Configuration& cfg) { return energy(cfg, p); },
      [p](const Configuration& cfg, std::size_t i) { return drift(cfg, p)[i]; },
      [p](const Configuration& cfg, std::size_t i) { return drift_second(cfg, p)[i]; });
  RngStream rng(6);
  for (int k = 0; k < 10; ++k) {
    const auto cfg = random_configuration(c, 2, rng);
    const auto d1 = drift(cfg, p);
    const auto d2 = drift_second(cfg, p);
    double oracle = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      oracle += 0.5 * p.kappa * d2[i] + d1[i] * d1[i];
    CHECK(apply_generator(e_fn, p, cfg) == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("Boltzmann density is the zero mode of the adjoint") {
  RngStream rng(77);
  for (const auto& contour : {unit_circle(), ellipse_2_1(), perturbed_circle()}) {
    for (double beta : {1.0, 2.0}) {
      for (std::size_t n : {2, 4, 8}) {
        GasParams p(n, beta, Potential::harmonic({0.5}));
        const auto cfg = random_configuration(contour, n, rng);
        const auto p0 = boltzmann_density(p, energy(cfg, p));
        // Scale against the largest constituent term, as in the report.
        const double diffusion = [&] {
          double acc = 0.0;
          for (std::size_t i = 0; i < n; ++i) acc += 0.5 * p.kappa * p0.d2(cfg, i);
          return acc;
        }();
        const double residual = apply_adjoint(p0, p, cfg);
        CHECK(std::abs(residual) <= 1e-8 * std::max(1.0, std::abs(diffusion)));
      }
    }
  }
}

TEST_CASE("adjoint on a constant density with one free particle") {
  const auto c = unit_circle();
  GasParams p(1, 2.0);
  const auto one = GridFunction::callable([](const Configuration&) { return 1.0; });
  Configuration cfg(c, {2.2});
  CHECK(std::abs(apply_adjoint(one, p, cfg)) < 1e-9);
}

TEST_CASE("grid adjoint is the exact transpose of the grid generator") {
  const auto c = ellipse_2_1();
  GasParams p(1, 2.0, Potential::harmonic({0.5}));
  const std::size_t n = 256;
  RngStream rng(11);
  std::vector<double> f(n), g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / n;
    f[j] = std::cos(t) + 0.3 * std::sin(3.0 * t);
    g[j] = std::exp(0.4 * std::cos(2.0 * t));
  }
  const auto af = generator_grid1d(*c, p, f);
  const auto ag = adjoint_grid1d(*c, p, g);
  double lhs = 0.0, rhs = 0.0, scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    lhs += af[j] * g[j];
    rhs += f[j] * ag[j];
    scale += std::abs(af[j] * g[j]);
  }
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, scale));
}

TEST_CASE("grid operators converge to the pointwise operators") {
  const auto c = unit_circle();
  GasParams p(1, 2.0, Potential::harmonic({0.5}));
  auto err_at = [&](std::size_t n) {
    std::vector<double> values(n);
    for (std::size_t j = 0; j < n; ++j)
      values[j] = std::exp(0.3 * std::cos(kTwoPi * static_cast<double>(j) / n));
    const auto discrete = adjoint_grid1d(*c, p, values);
    // Continuum reference at node 17.
    const std::size_t j = 17 * n / 256;
    const double s = c->length() * static_cast<double>(j) / n;
    const auto density = GridFunction::callable(
        [&](const Configuration& cfg) { return std::exp(0.3 * std::cos(cfg.positions()[0])); },
        [&](const Configuration& cfg, std::size_t) {
          const double t = cfg.positions()[0];
          return -0.3 * std::sin(t) * std::exp(0.3 * std::cos(t));
        },
        [&](const Configuration& cfg, std::size_t) {
          const double t = cfg.positions()[0];
          return (0.09 * std::sin(t) * std::sin(t) - 0.3 * std::cos(t)) *
                 std::exp(0.3 * std::cos(t));
        });
    Configuration cfg(c, {s});
    return std::abs(discrete[j] - apply_adjoint(density, p, cfg));
  };
  const double coarse = err_at(256), fine = err_at(512);
  CHECK(fine < 0.35 * coarse);  // second-order convergence
}

TEST_CASE("Hamiltonian annihilates exp(E/kappa) and matches the similarity form") {
  RngStream rng(13);
  for (const auto& contour : {unit_circle(), ellipse_2_1()}) {
    GasParams p(3, 2.0, Potential::harmonic({0.4}));
    const auto cfg = random_configuration(contour, 3, rng);
    const double e_ref = energy(cfg, p);

    // f = e^{E/kappa} (shifted) is the zero mode of H.
    const double inv_kappa = 1.0 / p.kappa;
    const auto f0 = GridFunction::callable(
        [&, e_ref](const Configuration& x) {
          return std::exp(inv_kappa * (energy(x, p) - e_ref));
        },
        [&, e_ref](const Configuration& x, std::size_t i) {
          return inv_kappa * drift(x, p)[i] *
                 std::exp(inv_kappa * (energy(x, p) - e_ref));
        },
        [&, e_ref](const Configuration& x, std::size_t i) {
          const double d1 = drift(x, p)[i];
          const double d2 = drift_second(x, p)[i];
          return (inv_kappa * d2 + inv_kappa * inv_kappa * d1 * d1) *
                 std::exp(inv_kappa * (energy(x, p) - e_ref));
        });
    const double h0 = apply_hamiltonian(f0, p, cfg);
    CHECK(std::abs(h0) <= 1e-8 * std::max(1.0, std::abs(apply_generator(f0, p, cfg))));

    // Similarity: e^{-E/kappa} A* (e^{E/kappa} f) equals the explicit H f.
    const auto f = trig_test_function({1, 2, 1}, {0.2, 1.3, 2.9}, contour->length());
    const auto composite = GridFunction::callable(
        [&, e_ref](const Configuration& x) {
          return std::exp(inv_kappa * (energy(x, p) - e_ref)) * f.value(x);
        },
        [&, e_ref](const Configuration& x, std::size_t i) {
          const double q = std::exp(inv_kappa * (energy(x, p) - e_ref));
          return q * (inv_kappa * drift(x, p)[i] * f.value(x) + f.d1(x, i));
        },
        [&, e_ref](const Configuration& x, std::size_t i) {
          const double q = std::exp(inv_kappa * (energy(x, p) - e_ref));
          const double d1 = drift(x, p)[i];
          const double d2 = drift_second(x, p)[i];
          return q * ((inv_kappa * d2 + inv_kappa * inv_kappa * d1 * d1) * f.value(x) +
                      2.0 * inv_kappa * d1 * f.d1(x, i) + f.d2(x, i));
        });
    const double lhs =
        std::exp(-inv_kappa * (energy(cfg, p) - e_ref)) * apply_adjoint(composite, p, cfg);
    const double rhs = apply_hamiltonian(f, p, cfg);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

TEST_CASE("FD-derivative mode agrees with analytic derivatives") {
  const auto c = unit_circle();
  GasParams p(2, 2.0);
  const auto analytic = trig_test_function({1, 2}, {0.4, 1.1}, c->length());
  const auto fd = GridFunction::callable(
      [&](const Configuration& cfg) { return analytic.value(cfg); });
  RngStream rng(21);
  const auto cfg = random_configuration(c, 2, rng);
  CHECK(apply_generator(fd, p, cfg) ==
        doctest::Approx(apply_generator(analytic, p, cfg)).epsilon(1e-5));
}

TEST_CASE("fp1d relaxes to the uniform density without drift") {
  const auto c = ellipse_2_1();
  GasParams p(1, 2.0);
  Fp1dSettings settings;
  settings.grid_size = 256;
  settings.t_end = 60.0;
  const auto density = fp1d_evolve(p, c, settings);
  const double uniform = 1.0 / c->length();
  for (double v : density.values())
    CHECK(std::abs(v - uniform) <= 1e-6 * uniform);
}

TEST_CASE("fp1d converges to the Boltzmann density") {
  // W = 0.5 Re z on the unit circle at beta = 2: stationary density
  // e^{beta W(z(s))} / Z = e^{cos s} / Z.
  const auto c = unit_circle();
  GasParams p(1, 2.0, Potential::harmonic({0.5}));
  Fp1dSettings settings;
  settings.grid_size = 512;
  settings.t_end = 40.0;
  const auto density = fp1d_evolve(p, c, settings);

  const double z_norm = adaptive_simpson(
      [&](double s) { return std::exp(std::cos(s)); }, 0.0, kTwoPi, 1e-13);
  double max_rel = 0.0;
  const auto& values = density.values();
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double s = c->length() * static_cast<double>(j) / values.size();
    const double exact = std::exp(std::cos(s)) / z_norm;
    max_rel = std::max(max_rel, std::abs(values[j] - exact) / exact);
  }
  CHECK(max_rel <= 1e-4);
}

TEST_CASE("fp1d conserves mass to 1e-10 per unit time") {
  const auto c = unit_circle();
  GasParams p(1, 2.0, Potential::harmonic({0.5}));
  const std::size_t n = 256;
  const double h = c->length() / n;
  std::vector<double> density(n);
  for (std::size_t j = 0; j < n; ++j)
    density[j] = 1.0 + 0.5 * std::cos(kTwoPi * static_cast<double>(j) / n);
  double mass0 = 0.0;
  for (double v : density) mass0 += v * h;

  const Fp1dOperator op(*c, p, n);
  const double dt = 0.4 * h * h / p.kappa;
  const double t_total = 2.0;
  const auto steps = static_cast<std::size_t>(t_total / dt);
  for (std::size_t k = 0; k < steps; ++k) {
    const auto rhs = op.adjoint(density);
    for (std::size_t j = 0; j < n; ++j) density[j] += dt * rhs[j];
  }
  double mass1 = 0.0;
  for (double v : density) mass1 += v * h;
  CHECK(std::abs(mass1 - mass0) <= 1e-10 * t_total);
}

TEST_CASE("fp1d rejects a dt above the stability limit") {
  const auto c = unit_circle();
  GasParams p(1, 2.0);
  Fp1dSettings settings;
  settings.grid_size = 128;
  settings.dt = 1.0;
  CHECK_THROWS_WITH_AS(fp1d_evolve(p, c, settings), doctest::Contains("stability"),
                       std::invalid_argument);
}

TEST_CASE("relative entropy against the discrete stationary density decays") {
  const auto c = unit_circle();
  GasParams p(1, 2.0, Potential::harmonic({0.5}));
  const std::size_t n = 128;
  const double h = c->length() / n;
  const auto pi = stationary_grid1d(*c, p, n);

  std::vector<double> density(n);
  for (std::size_t j = 0; j < n; ++j)
    density[j] = (1.0 + 0.8 * std::sin(kTwoPi * static_cast<double>(j) / n)) / c->length();

  auto entropy = [&] {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += h * density[j] * std::log(density[j] / pi[j]);
    return acc;
  };
  const Fp1dOperator op(*c, p, n);
  const double dt = 0.4 * h * h / p.kappa;
  double prev = entropy();
  for (int block = 0; block < 40; ++block) {
    for (int k = 0; k < 200; ++k) {
      const auto rhs = op.adjoint(density);
      for (std::size_t j = 0; j < n; ++j) density[j] += dt * rhs[j];
    }
    const double now = entropy();
    CHECK(now <= prev + 1e-12);
    prev = now;
  }
  // And the discrete stationary state is in fact stationary.
  const auto rhs = adjoint_grid1d(*c, p, pi);
  for (double v : rhs) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("zero mode report covers random configurations") {
  const auto c = perturbed_circle();
  GasParams p(4, 2.0, Potential::harmonic({0.5}));
  const auto report = zero_mode_report(c, p, 25, 991);
  CHECK(report.residuals.size() == 25);
  CHECK(report.max_residual <= 1e-10);
}
