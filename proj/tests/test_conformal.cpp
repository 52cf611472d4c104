#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cdyson/conformal.hpp"
#include "cdyson/errors.hpp"
#include "support/oracles.hpp"

using namespace cdyson;
using namespace cdyson::testing;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("circle maps are identities up to scale") {
  for (double radius : {1.0, 2.5}) {
    const auto c = circle_radius(radius);
    const auto pair = solve_maps(c);
    CHECK(pair.conformal_radius == doctest::Approx(radius).epsilon(1e-13));
    CHECK(pair.psi_int_center == doctest::Approx(-std::log(radius)).epsilon(1e-12));
    for (std::size_t j = 0; j < pair.interior.n; j += 37) {
      const double theta = pair.interior.theta_j(j);
      // Boundary correspondences are the identity in the angle.
      double u = std::fmod(pair.interior.u_of_theta[j], kTwoPi);
      if (u < 0.0) u += kTwoPi;
      double diff = std::abs(u - theta);
      diff = std::min(diff, kTwoPi - diff);
      CHECK(diff < 1e-12);
      CHECK(pair.interior.ds_dtheta[j] == doctest::Approx(radius).epsilon(1e-12));
      CHECK(pair.exterior.ds_dtheta[j] == doctest::Approx(radius).epsilon(1e-12));
    }
  }
}

TEST_CASE("ellipse exterior map has conformal radius (a + b) / 2") {
  // Exterior Joukowski map z = r w + q / w with r = (a+b)/2, q = (a-b)/2
  // gives w'_ext(inf) = 1/r.
  const auto e = ellipse_2_1();
  const auto pair = solve_maps(e);
  CHECK(pair.conformal_radius == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("perturbed circle: interior map inverts w + 0.1 w^2") {
  // z(u) = g(e^{iu}) with g(w) = w + 0.1 w^2 univalent, so the interior
  // boundary correspondence is the identity and w'_int(0) = 1/g'(0) = 1.
  const auto c = perturbed_circle();
  const auto pair = solve_maps(c);
  CHECK(pair.psi_int_center == doctest::Approx(0.0).epsilon(1e-8));
  for (std::size_t j = 0; j < pair.interior.n; j += 17) {
    const double theta = pair.interior.theta_j(j);
    double u = pair.interior.u_of_theta[j];
    u = std::fmod(u, kTwoPi);
    if (u < 0.0) u += kTwoPi;
    double diff = std::abs(u - theta);
    diff = std::min(diff, kTwoPi - diff);
    CHECK(diff < 1e-9);
  }
  // psi_int trace: -log|g'(e^{i theta})| = -log|1 + 0.2 e^{i theta}|.
  const auto psi = eval_psi(pair);
  for (std::size_t j = 0; j < pair.interior.n; j += 29) {
    const double theta = pair.interior.theta_j(j);
    const double expected = -std::log(std::abs(1.0 + 0.2 * std::polar(1.0, theta)));
    CHECK(psi.psi_int[j] == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("boundary correspondences are monotone degree-1 circle maps") {
  for (const auto& contour : {ellipse_2_1(), perturbed_circle(),
                              offcenter_circle({0.3, 0.2}, 1.0)}) {
    const auto pair = solve_maps(contour);
    for (const auto* side : {&pair.interior, &pair.exterior}) {
      for (std::size_t j = 0; j < side->n; ++j) {
        const std::size_t jn = (j + 1) % side->n;
        const double du = (jn == 0 ? side->u_of_theta[0] + kTwoPi : side->u_of_theta[jn]) -
                          side->u_of_theta[j];
        CHECK(du > 0.0);
      }
      const double total = side->u_of_theta[side->n - 1] - side->u_of_theta[0];
      CHECK(total < kTwoPi);
      CHECK(side->du_dtheta_at(1.234) > 0.0);
    }
  }
}

TEST_CASE("harmonicity: boundary means reproduce the center and infinity values") {
  for (const auto& contour : {ellipse_2_1(), perturbed_circle(),
                              offcenter_circle({0.3, 0.2}, 1.0)}) {
    const auto pair = solve_maps(contour);
    const auto psi = eval_psi(pair);
    double mean_int = 0.0, mean_ext = 0.0;
    for (std::size_t j = 0; j < pair.interior.n; ++j) {
      mean_int += psi.psi_int[j];
      mean_ext += psi.psi_ext[j];
    }
    mean_int /= static_cast<double>(pair.interior.n);
    mean_ext /= static_cast<double>(pair.exterior.n);
    // Poisson at the disk center / mean-value at infinity.
    CHECK(mean_int == doctest::Approx(psi.psi_int_center).epsilon(1e-9));
    CHECK(mean_ext == doctest::Approx(psi.psi_ext_infinity).epsilon(1e-9));
  }
}

TEST_CASE("psi_ext self-consistency: spectral Jacobian vs finite differences") {
  const auto e = ellipse_2_1();
  const auto pair = solve_maps(e);
  // log|w'_ext| = -log(ds/dtheta): the spectral Jacobian against a 6th-order
  // central difference of the tabulated arclength correspondence.
  const std::size_t n = pair.exterior.n;
  const double h = kTwoPi / static_cast<double>(n);
  auto s_at = [&](std::size_t j, int offset) {
    const long idx = static_cast<long>(j) + offset;
    const long wrapped = ((idx % static_cast<long>(n)) + static_cast<long>(n)) %
                         static_cast<long>(n);
    double s = pair.exterior.s_of_theta[static_cast<std::size_t>(wrapped)];
    if (idx < 0) s -= e->length();
    if (idx >= static_cast<long>(n)) s += e->length();
    return s;
  };
  for (std::size_t j = 64; j < n; j += 97) {
    const double fd = (s_at(j, 3) - 9.0 * s_at(j, 2) + 45.0 * s_at(j, 1) -
                       45.0 * s_at(j, -1) + 9.0 * s_at(j, -2) - s_at(j, -3)) /
                      (60.0 * h);
    const double spectral_log = -std::log(pair.exterior.ds_dtheta[j]);
    const double fd_log = -std::log(fd);
    CHECK(spectral_log == doctest::Approx(fd_log).epsilon(1e-8));
  }
}

TEST_CASE("theta_of_u inverts the correspondence") {
  const auto e = ellipse_2_1();
  const auto pair = solve_maps(e);
  for (double theta : {0.0, 0.9, 2.2, 4.7, 6.1}) {
    const double u = pair.interior.u_at(theta);
    CHECK(pair.interior.theta_of_u(u) == doctest::Approx(theta).epsilon(1e-10));
    const double ue = pair.exterior.u_at(theta);
    CHECK(pair.exterior.theta_of_u(ue) == doctest::Approx(theta).epsilon(1e-10));
  }
}

TEST_CASE("solver rejects a contour that does not enclose the origin") {
  const auto far_circle = Contour::build(ContourSpec::circle({5.0, 0.0}, 1.0), 256);
  CHECK_THROWS_WITH_AS(solve_maps(far_circle), doctest::Contains("origin"),
                       std::invalid_argument);
}

TEST_CASE("serialization round trip preserves the pair") {
  const auto e = ellipse_2_1();
  const auto pair = solve_maps(e);
  const auto text = pair.to_json_string();
  const auto back = ConformalPair::from_json_string(text, e);
  CHECK(back.conformal_radius == pair.conformal_radius);
  CHECK(back.psi_int_center == pair.psi_int_center);
  REQUIRE(back.interior.n == pair.interior.n);
  for (std::size_t j = 0; j < pair.interior.n; j += 101) {
    CHECK(back.interior.u_of_theta[j] == pair.interior.u_of_theta[j]);
    CHECK(back.exterior.ds_dtheta[j] == pair.exterior.ds_dtheta[j]);
  }
  const auto wrong = unit_circle();
  CHECK_THROWS_AS(ConformalPair::from_json_string(text, wrong), ConfigError);
}
