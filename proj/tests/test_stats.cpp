#include <doctest.h>

#include <cmath>

#include "cdyson/rng.hpp"
#include "cdyson/stats.hpp"

using namespace cdyson;

TEST_CASE("ks distance of identical and disjoint samples") {
  std::vector<double> a = {1.0, 2.0, 3.0, 4.0};
  CHECK(ks_distance(a, a) == doctest::Approx(0.0));
  std::vector<double> b = {10.0, 11.0, 12.0};
  CHECK(ks_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("ks distance detects a shift at the expected scale") {
  RngStream rng(5);
  std::vector<double> a(4000), b(4000);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = rng.normal() + 0.25;
  const double d = ks_distance(a, b);
  // For a 0.25-sigma shift the population KS distance is ~0.0987.
  CHECK(d > 0.06);
  CHECK(d < 0.14);
}

TEST_CASE("circular gaps sum to the circumference") {
  std::vector<double> s = {0.5, 4.0, 2.2, 5.9};
  const auto gaps = circular_gaps(s, 2.0 * 3.14159265358979);
  double total = 0.0;
  for (double g : gaps) total += g;
  CHECK(total == doctest::Approx(2.0 * 3.14159265358979).epsilon(1e-12));
  CHECK(std::is_sorted(gaps.begin(), gaps.end()));
}

TEST_CASE("autocorrelation time of white noise is 1/2") {
  RngStream rng(11);
  std::vector<double> x(20000);
  for (auto& v : x) v = rng.normal();
  CHECK(integrated_autocorrelation_time(x) == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("autocorrelation time of an AR(1) chain matches theory") {
  // X_{k+1} = rho X_k + noise: tau_int = (1 + rho) / (2 (1 - rho)).
  const double rho = 0.9;
  RngStream rng(13);
  std::vector<double> x(200000);
  double state = 0.0;
  for (auto& v : x) {
    state = rho * state + rng.normal();
    v = state;
  }
  const double tau = integrated_autocorrelation_time(x);
  const double expected = 0.5 * (1.0 + rho) / (1.0 - rho);
  CHECK(tau == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("chi-square statistic") {
  std::vector<std::size_t> obs = {10, 12, 8};
  std::vector<double> exp = {10.0, 10.0, 10.0};
  CHECK(chi_square_statistic(obs, exp) == doctest::Approx(0.8));
}

TEST_CASE("rng determinism and normal moments") {
  RngStream a(99), b(99);
  for (int k = 0; k < 100; ++k) CHECK(a.normal() == b.normal());
  RngStream c(1);
  double mean = 0.0, second = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double v = c.normal();
    mean += v;
    second += v * v;
  }
  mean /= n;
  second /= n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(second == doctest::Approx(1.0).epsilon(0.01));
}
