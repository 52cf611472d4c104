#include "cdyson/contour.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json_util.hpp"

namespace cdyson {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 8-point Gauss-Legendre on [-1, 1]; per-cell error is negligible for
// analytic integrands at the grid sizes used here.
constexpr double kGlNode[4] = {0.1834346424956498, 0.5255324099163290,
                               0.7966664774136267, 0.9602898564975363};
constexpr double kGlWeight[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  auto cross = [](Complex p, Complex q) { return p.real() * q.imag() - p.imag() * q.real(); };
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

}  // namespace

ContourSpec ContourSpec::circle(Complex center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be positive");
  std::vector<FourierMode> m;
  if (center != Complex(0.0, 0.0)) m.push_back({0, center});
  m.push_back({1, Complex(radius, 0.0)});
  return fourier(std::move(m));
}

ContourSpec ContourSpec::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ellipse: semi-axes must be positive");
  std::vector<FourierMode> m;
  m.push_back({1, Complex(0.5 * (a + b), 0.0)});
  if (a != b) m.push_back({-1, Complex(0.5 * (a - b), 0.0)});
  return fourier(std::move(m));
}

ContourSpec ContourSpec::fourier(std::vector<FourierMode> modes) {
  std::vector<FourierMode> kept;
  for (const auto& mode : modes)
    if (mode.c != Complex(0.0, 0.0)) kept.push_back(mode);
  std::sort(kept.begin(), kept.end(),
            [](const FourierMode& x, const FourierMode& y) { return x.m < y.m; });
  for (std::size_t i = 1; i < kept.size(); ++i)
    if (kept[i].m == kept[i - 1].m)
      throw std::invalid_argument("fourier: duplicate mode index");
  bool has_oscillating = false;
  for (const auto& mode : kept) has_oscillating |= (mode.m != 0);
  if (!has_oscillating)
    throw std::invalid_argument("fourier: need at least one mode with m != 0");
  ContourSpec spec;
  spec.modes_ = std::move(kept);
  return spec;
}

Complex ContourSpec::position(double u) const {
  Complex z = 0.0;
  for (const auto& mode : modes_) z += mode.c * std::polar(1.0, mode.m * u);
  return z;
}

Complex ContourSpec::velocity(double u) const {
  Complex z = 0.0;
  for (const auto& mode : modes_)
    z += mode.c * Complex(0.0, mode.m) * std::polar(1.0, mode.m * u);
  return z;
}

Complex ContourSpec::acceleration(double u) const {
  Complex z = 0.0;
  for (const auto& mode : modes_)
    z -= mode.c * static_cast<double>(mode.m) * static_cast<double>(mode.m) *
         std::polar(1.0, mode.m * u);
  return z;
}

double ContourSpec::signed_area() const {
  double a = 0.0;
  for (const auto& mode : modes_) a += mode.m * std::norm(mode.c);
  return std::numbers::pi * a;
}

void ContourSpec::reverse() {
  for (auto& mode : modes_) mode.m = -mode.m;
  std::sort(modes_.begin(), modes_.end(),
            [](const FourierMode& x, const FourierMode& y) { return x.m < y.m; });
}

bool ContourSpec::is_circle() const {
  bool plus = false, minus = false;
  for (const auto& mode : modes_) {
    if (mode.m == 0) continue;
    if (mode.m == 1) plus = true;
    else if (mode.m == -1) minus = true;
    else return false;
  }
  return plus != minus;  // exactly one rotating mode, either orientation
}

std::string ContourSpec::canonical_key() const {
  std::ostringstream os;
  os << "fourier";
  for (const auto& mode : modes_)
    os << ";" << mode.m << ":" << fmt_double(mode.c.real()) << ":" << fmt_double(mode.c.imag());
  return os.str();
}

ContourSpec ContourSpec::from_json_string(const std::string& text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("contour: invalid JSON: ") + e.what());
  }
  detail::check_keys(j, "contour", {"type", "center", "radius", "a", "b", "coeffs"});
  const auto& type = detail::require_field(j, "contour", "type");
  if (!type.is_string()) throw ConfigError("contour.type: expected a string");
  const std::string kind = type.get<std::string>();
  if (kind == "circle") {
    detail::check_keys(j, "contour", {"type", "center", "radius"});
    Complex center(0.0, 0.0);
    if (j.contains("center")) {
      const auto& c = j["center"];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
        throw ConfigError("contour.center: expected [re, im]");
      center = Complex(c[0].get<double>(), c[1].get<double>());
    }
    const double radius = detail::number_field(j, "contour", "radius");
    if (!(radius > 0.0)) throw ConfigError("contour.radius: must be positive");
    return circle(center, radius);
  }
  if (kind == "ellipse") {
    detail::check_keys(j, "contour", {"type", "a", "b"});
    const double a = detail::number_field(j, "contour", "a");
    const double b = detail::number_field(j, "contour", "b");
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("contour.a/b: must be positive");
    return ellipse(a, b);
  }
  if (kind == "fourier") {
    detail::check_keys(j, "contour", {"type", "coeffs"});
    const auto& coeffs = detail::require_field(j, "contour", "coeffs");
    if (!coeffs.is_array() || coeffs.empty())
      throw ConfigError("contour.coeffs: expected a non-empty array");
    std::vector<FourierMode> modes;
    std::size_t idx = 0;
    for (const auto& c : coeffs) {
      const std::string path = "contour.coeffs[" + std::to_string(idx++) + "]";
      detail::check_keys(c, path, {"m", "re", "im"});
      const auto& m = detail::require_field(c, path, "m");
      if (!m.is_number_integer()) throw ConfigError(path + ".m: expected an integer");
      modes.push_back({m.get<int>(), Complex(detail::number_or(c, path, "re", 0.0),
                                              detail::number_or(c, path, "im", 0.0))});
    }
    try {
      return fourier(std::move(modes));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("contour.coeffs: ") + e.what());
    }
  }
  throw ConfigError("contour.type: must be one of \"circle\", \"ellipse\", \"fourier\"");
}

ContourSpec ContourSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("contour: cannot open file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

std::string ContourSpec::to_json_string() const {
  detail::json coeffs = detail::json::array();
  for (const auto& mode : modes_)
    coeffs.push_back({{"m", mode.m}, {"re", mode.c.real()}, {"im", mode.c.imag()}});
  detail::json j = {{"type", "fourier"}, {"coeffs", coeffs}};
  return j.dump();
}

// ---------------------------------------------------------------------------

namespace {

double gl8_speed_integral(const ContourSpec& spec, double u0, double u1) {
  const double mid = 0.5 * (u0 + u1);
  const double half = 0.5 * (u1 - u0);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    acc += kGlWeight[i] * (spec.speed(mid - half * kGlNode[i]) +
                           spec.speed(mid + half * kGlNode[i]));
  }
  return acc * half;
}

void check_regularity(const ContourSpec& spec, std::size_t samples) {
  double max_speed = 0.0, min_speed = std::numeric_limits<double>::infinity();
  double min_u = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const double u = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
    const double sp = spec.speed(u);
    max_speed = std::max(max_speed, sp);
    if (sp < min_speed) { min_speed = sp; min_u = u; }
  }
  if (!(min_speed > 1e-9 * max_speed))
    throw std::invalid_argument("contour: degenerate parametrization, |z'(u)| ~ 0 near u = " +
                                std::to_string(min_u));
}

void check_simplicity(const ContourSpec& spec, std::size_t samples) {
  std::vector<Complex> pts(samples);
  double min_x = 1e300, min_y = 1e300, max_seg = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    pts[j] = spec.position(kTwoPi * static_cast<double>(j) / static_cast<double>(samples));
  }
  for (std::size_t j = 0; j < samples; ++j) {
    min_x = std::min(min_x, pts[j].real());
    min_y = std::min(min_y, pts[j].imag());
    max_seg = std::max(max_seg, std::abs(pts[(j + 1) % samples] - pts[j]));
  }
  if (!(max_seg > 0.0))
    throw std::invalid_argument("contour: degenerate curve (zero extent)");

  // Hash segments into a uniform grid so the scan is near-linear.
  const double cell = 2.0 * max_seg;
  std::unordered_map<long long, std::vector<std::size_t>> buckets;
  auto cell_key = [&](double x, double y) {
    const long long cx = static_cast<long long>(std::floor((x - min_x) / cell));
    const long long cy = static_cast<long long>(std::floor((y - min_y) / cell));
    return (cx << 32) ^ (cy & 0xffffffffLL);
  };
  auto insert_segment = [&](std::size_t j) {
    const Complex a = pts[j], b = pts[(j + 1) % samples];
    const long long x0 = static_cast<long long>(std::floor((std::min(a.real(), b.real()) - min_x) / cell));
    const long long x1 = static_cast<long long>(std::floor((std::max(a.real(), b.real()) - min_x) / cell));
    const long long y0 = static_cast<long long>(std::floor((std::min(a.imag(), b.imag()) - min_y) / cell));
    const long long y1 = static_cast<long long>(std::floor((std::max(a.imag(), b.imag()) - min_y) / cell));
    for (long long cx = x0; cx <= x1; ++cx)
      for (long long cy = y0; cy <= y1; ++cy)
        buckets[(cx << 32) ^ (cy & 0xffffffffLL)].push_back(j);
  };
  (void)cell_key;
  for (std::size_t j = 0; j < samples; ++j) insert_segment(j);

  const std::size_t n = samples;
  for (const auto& [key, ids] : buckets) {
    (void)key;
    for (std::size_t p = 0; p < ids.size(); ++p) {
      for (std::size_t q = p + 1; q < ids.size(); ++q) {
        const std::size_t i = ids[p], j = ids[q];
        const std::size_t d = (i > j ? i - j : j - i);
        if (d <= 1 || d == n - 1) continue;  // adjacent segments share a point
        if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) {
          const double ui = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
          const double uj = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
          throw std::invalid_argument(
              "contour: self-intersection detected near u = " + std::to_string(ui) +
              " and u = " + std::to_string(uj));
        }
      }
    }
  }
}

}  // namespace

std::shared_ptr<const Contour> Contour::build(const ContourSpec& spec, std::size_t grid_size) {
  if (grid_size < 64) throw std::invalid_argument("contour: grid_size must be >= 64");
  ContourSpec oriented = spec;
  const double area = oriented.signed_area();
  if (std::abs(area) < 1e-14)
    throw std::invalid_argument("contour: degenerate curve (zero signed area)");
  if (area < 0.0) oriented.reverse();

  check_regularity(oriented, 8 * grid_size);
  check_simplicity(oriented, 8 * grid_size);

  auto contour = std::shared_ptr<Contour>(new Contour());
  contour->spec_ = std::move(oriented);
  contour->grid_ = grid_size;
  contour->s_table_.resize(grid_size + 1);
  contour->s_table_[0] = 0.0;
  const double h = kTwoPi / static_cast<double>(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    contour->s_table_[j + 1] =
        contour->s_table_[j] +
        gl8_speed_integral(contour->spec_, h * static_cast<double>(j), h * static_cast<double>(j + 1));
  }
  contour->length_ = contour->s_table_[grid_size];
  return contour;
}

double Contour::arclength(double u) const {
  const double winding = std::floor(u / kTwoPi);
  const double u0 = u - winding * kTwoPi;  // in [0, 2pi)
  const double h = kTwoPi / static_cast<double>(grid_);
  std::size_t j = std::min(static_cast<std::size_t>(u0 / h), grid_ - 1);
  return winding * length_ + s_table_[j] +
         gl8_speed_integral(spec_, h * static_cast<double>(j), u0);
}

double Contour::wrap(double s) const {
  double r = std::fmod(s, length_);
  if (r < 0.0) r += length_;
  return r;
}

double Contour::parameter(double s) const {
  const double target = wrap(s);
  // Bracket by the monotone table, then Newton with the exact arclength.
  const auto it = std::upper_bound(s_table_.begin(), s_table_.end(), target);
  std::size_t j = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - s_table_.begin() - 1));
  j = std::min(j, grid_ - 1);
  const double h = kTwoPi / static_cast<double>(grid_);
  const double u_cell = h * static_cast<double>(j);
  double lo = u_cell, hi = u_cell + h;
  const double span = s_table_[j + 1] - s_table_[j];
  double u = u_cell + h * (span > 0.0 ? (target - s_table_[j]) / span : 0.5);
  const double tol = 1e-14 * std::max(1.0, length_);
  for (int iter = 0; iter < 60; ++iter) {
    const double f = s_table_[j] + gl8_speed_integral(spec_, u_cell, u) - target;
    if (std::abs(f) <= tol) break;
    if (f > 0.0) hi = u; else lo = u;
    double next = u - f / spec_.speed(u);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  if (u >= kTwoPi) u -= kTwoPi;
  if (u < 0.0) u += kTwoPi;
  return u;
}

Frame Contour::frame_at_parameter(double u) const {
  const Complex v = spec_.velocity(u);
  const Complex a = spec_.acceleration(u);
  const double sp = std::abs(v);
  Frame f;
  f.z = spec_.position(u);
  f.tau = v / sp;
  f.nu = Complex(0.0, -1.0) * f.tau;
  f.curvature = (std::conj(v) * a).imag() / (sp * sp * sp);
  f.s = wrap(arclength(u));
  return f;
}

Frame Contour::frame_at(double s) const {
  Frame f = frame_at_parameter(parameter(s));
  f.s = wrap(s);
  return f;
}

Complex Contour::position_at(double s) const { return spec_.position(parameter(s)); }

}  // namespace cdyson
