#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hkverify/catalog.hpp"
#include "hkverify/errors.hpp"

namespace hkverify::coord {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

/// Chart point, ordered (x, y, z, t) in every model.
struct Point {
  std::array<double, 4> c{};

  double& operator[](std::size_t i) { return c[i]; }
  double operator[](std::size_t i) const { return c[i]; }
  Point shifted(int axis, double h) const {
    Point q = *this;
    q.c[static_cast<std::size_t>(axis)] += h;
    return q;
  }
  friend bool operator==(const Point&, const Point&) = default;
};

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << p[0] << "," << p[1] << "," << p[2] << "," << p[3];
  return os.str();
}

/// Comma-separated reals, e.g. "0.5,-1,0.2,0.1".
inline Point parse_point(const std::string& text) {
  Point p;
  std::stringstream ss(text);
  std::string tok;
  std::size_t k = 0;
  while (std::getline(ss, tok, ',')) {
    if (k == 4) throw ParseError("point", "expected 4 coordinates in '" + text + "'");
    std::size_t used = 0;
    try {
      p[k] = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("point", "invalid coordinate '" + tok + "'");
    }
    if (tok.find_first_not_of(" \t", used) != std::string::npos) throw ParseError("point", "invalid coordinate '" + tok + "'");
    ++k;
  }
  if (k != 4) throw ParseError("point", "expected 4 coordinates in '" + text + "'");
  return p;
}

enum class MetricKind { HyperHermitian, HyperKahlerRescaled, HyperKahlerClosedForm };

inline std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::HyperHermitian: return "HYPERHERMITIAN";
    case MetricKind::HyperKahlerRescaled: return "HYPERKAHLER_RESCALED";
    case MetricKind::HyperKahlerClosedForm: return "HYPERKAHLER_CLOSED_FORM";
  }
  return "?";
}

/// Coordinate realization of one of the catalog groups. Plain value: tests
/// swap fields (e.g. a corrupted coframe) to build negative controls.
struct ModelSpace {
  CaseId id;
  std::function<bool(const Point&)> in_domain;
  std::function<Point(const Point&, const Point&)> product;
  /// Row j holds the components of e^{j+1} on (dx, dy, dz, dt).
  std::function<Mat4(const Point&)> coframe;
  /// Conformal potential f with g = e^f ĥ and θ = df.
  std::function<double(const Point&)> potential;
  /// The closed-form hyper-Kähler metric from the classification, pulled back to (x,y,z,t).
  std::function<Mat4(const Point&)> closed_form;
  Point unit;
  /// Sampling box per coordinate; for case 1 coordinate 0 is the radius range.
  std::array<std::array<double, 2>, 4> sample_box;
  std::string substitution;  ///< chart change used by the closed form, e.g. "s = e^(t/2)"
};

inline void require_domain(const ModelSpace& m, const Point& p) {
  for (double v : p.c)
    if (!std::isfinite(v)) throw DomainError("non-finite coordinate at (" + to_string(p) + ")");
  if (!m.in_domain(p)) throw DomainError("point (" + to_string(p) + ") outside the " + std::string(to_string(m.id)) + " chart");
}

namespace detail {

inline double radius(const Point& p) { return std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]); }

inline ModelSpace abelian_model() {
  ModelSpace m;
  m.id = CaseId::Abelian;
  m.in_domain = [](const Point&) { return true; };
  m.product = [](const Point& p, const Point& q) {
    return Point{{p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]}};
  };
  m.coframe = [](const Point&) -> Mat4 { return Mat4::Identity(); };
  m.potential = [](const Point&) { return 0.0; };
  m.closed_form = [](const Point&) -> Mat4 { return Mat4::Identity(); };
  m.unit = Point{};
  m.sample_box = {{{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}}};
  m.substitution = "none";
  return m;
}

// Nonzero quaternions as 4x4 real matrices; e^j = 2σ_j from Ω = g⁻¹dg.
inline ModelSpace case1_model() {
  ModelSpace m;
  m.id = CaseId::Case1;
  m.in_domain = [](const Point& p) { return radius(p) > 0; };
  m.product = [](const Point& p, const Point& q) {
    const double x = p[0], y = p[1], z = p[2], t = p[3];
    Mat4 G;
    G << x, -y, -z, -t,
         y, x, -t, z,
         z, t, x, -y,
         t, -z, y, x;
    const Vec4 r = G * Vec4(q[0], q[1], q[2], q[3]);
    return Point{{r[0], r[1], r[2], r[3]}};
  };
  m.coframe = [](const Point& p) -> Mat4 {
    const double x = p[0], y = p[1], z = p[2], t = p[3];
    const double r2 = x * x + y * y + z * z + t * t;
    Mat4 S;
    S << x, y, z, t,
         -y, x, t, -z,
         -z, -t, x, y,
         -t, z, -y, x;
    return (2.0 / r2) * S;
  };
  m.potential = [](const Point& p) { return 2.0 * std::log(radius(p)); };
  m.closed_form = [](const Point& p) -> Mat4 {
    const double r = radius(p);
    return Mat4::Identity() / (r * r * r * r);
  };
  m.unit = Point{{1, 0, 0, 0}};
  m.sample_box = {{{0.5, 3.0}, {-2, 2}, {-2, 2}, {-2, 2}}};
  m.substitution = "none (r^-4 (dx^2+dy^2+dz^2+dt^2))";
  return m;
}

inline ModelSpace case2_model() {
  ModelSpace m;
  m.id = CaseId::Case2;
  m.in_domain = [](const Point&) { return true; };
  m.product = [](const Point& p, const Point& q) {
    const double ez = std::exp(p[2]), ct = std::cos(p[3]), st = std::sin(p[3]);
    return Point{{p[0] + ez * (q[0] * ct - q[1] * st), p[1] + ez * (q[0] * st + q[1] * ct), p[2] + q[2], p[3] + q[3]}};
  };
  m.coframe = [](const Point& p) -> Mat4 {
    const double emz = std::exp(-p[2]), ct = std::cos(p[3]), st = std::sin(p[3]);
    Mat4 E;
    E << emz * ct, emz * st, 0, 0,
         -emz * st, emz * ct, 0, 0,
         0, 0, -1, 0,
         0, 0, 0, -1;
    return E;
  };
  m.potential = [](const Point& p) { return -2.0 * p[2]; };
  // (dx^2 + dy^2) + (ds^2 + s^2 dt^2), s = e^z
  m.closed_form = [](const Point& p) -> Mat4 {
    const double s = std::exp(p[2]);
    Mat4 h = Mat4::Zero();
    h(0, 0) = 1;
    h(1, 1) = 1;
    h(2, 2) = s * s;
    h(3, 3) = s * s;
    return h;
  };
  m.unit = Point{};
  m.sample_box = {{{-2, 2}, {-2, 2}, {std::log(0.5), std::log(3.0)}, {-2, 2}}};
  m.substitution = "s = e^z";
  return m;
}

inline ModelSpace case3_model() {
  ModelSpace m;
  m.id = CaseId::Case3;
  m.in_domain = [](const Point&) { return true; };
  m.product = [](const Point& p, const Point& q) {
    const double et = std::exp(p[3]);
    return Point{{p[0] + et * q[0], p[1] + et * q[1], p[2] + et * q[2], p[3] + q[3]}};
  };
  m.coframe = [](const Point& p) -> Mat4 {
    const double emt = std::exp(-p[3]);
    Mat4 E;
    E << 0, 0, 0, 1,
         emt, 0, 0, 0,
         0, emt, 0, 0,
         0, 0, emt, 0;
    return E;
  };
  m.potential = [](const Point& p) { return -2.0 * p[3]; };
  // ds^2 + dx^2 + dy^2 + dz^2, s = e^t
  m.closed_form = [](const Point& p) -> Mat4 {
    Mat4 h = Mat4::Identity();
    h(3, 3) = std::exp(2 * p[3]);
    return h;
  };
  m.unit = Point{};
  m.sample_box = {{{-2, 2}, {-2, 2}, {-2, 2}, {std::log(0.5), std::log(3.0)}}};
  m.substitution = "s = e^t";
  return m;
}

inline ModelSpace case4_model() {
  ModelSpace m;
  m.id = CaseId::Case4;
  m.in_domain = [](const Point&) { return true; };
  m.product = [](const Point& p, const Point& q) {
    const double x = p[0], y = p[1], t = p[3];
    const double eh = std::exp(t / 2), et = std::exp(t);
    return Point{{x + eh * q[0], y + eh * q[1], p[2] + et * q[2] + eh / 4 * (x * q[1] - y * q[0]), t + q[3]}};
  };
  m.coframe = [](const Point& p) -> Mat4 {
    const double x = p[0], y = p[1], t = p[3];
    const double emt = std::exp(-t), emh = std::exp(-t / 2);
    Mat4 E;
    E << 0, 0, 0, 1,
         emt * y / 4, -emt * x / 4, emt, 0,
         emh, 0, 0, 0,
         0, emh, 0, 0;
    return E;
  };
  m.potential = [](const Point& p) { return -1.5 * p[3]; };
  // s(ds^2 + dx^2 + dy^2) + s^-1 (dz - (x dy - y dx)/4)^2, s = e^(t/2)
  m.closed_form = [](const Point& p) -> Mat4 {
    const double x = p[0], y = p[1];
    const double s = std::exp(p[3] / 2);
    const double ds_dt = s / 2;
    Mat4 h = Mat4::Zero();
    h(0, 0) = s;
    h(1, 1) = s;
    h(3, 3) = s * ds_dt * ds_dt;
    const Vec4 w(y / 4, -x / 4, 1, 0);
    h += (w * w.transpose()) / s;
    return h;
  };
  m.unit = Point{};
  m.sample_box = {{{-2, 2}, {-2, 2}, {-2, 2}, {2 * std::log(0.5), 2.0}}};
  m.substitution = "s = e^(t/2)";
  return m;
}

}  // namespace detail

inline ModelSpace model_space(CaseId id) {
  switch (id) {
    case CaseId::Abelian: return detail::abelian_model();
    case CaseId::Case1: return detail::case1_model();
    case CaseId::Case2: return detail::case2_model();
    case CaseId::Case3: return detail::case3_model();
    case CaseId::Case4: return detail::case4_model();
  }
  throw std::invalid_argument("unknown model id");
}

inline Point group_mul(const ModelSpace& m, const Point& p, const Point& q) {
  require_domain(m, p);
  require_domain(m, q);
  return m.product(p, q);
}

/// Σ_ab G_ab e^a e^b for an algebra metric G (identity by default).
inline Mat4 hyperhermitian_metric(const ModelSpace& m, const Point& p, const Mat4& algebra_metric = Mat4::Identity()) {
  const Mat4 E = m.coframe(p);
  return E.transpose() * algebra_metric * E;
}

inline Mat4 metric_at(const ModelSpace& m, const Point& p, MetricKind which) {
  require_domain(m, p);
  switch (which) {
    case MetricKind::HyperHermitian: return hyperhermitian_metric(m, p);
    case MetricKind::HyperKahlerRescaled: return std::exp(-m.potential(p)) * hyperhermitian_metric(m, p);
    case MetricKind::HyperKahlerClosedForm: return m.closed_form(p);
  }
  throw std::invalid_argument("unknown metric kind");
}

inline std::function<Mat4(const Point&)> metric_field(const ModelSpace& m, MetricKind which) {
  return [m, which](const Point& p) { return metric_at(m, p, which); };
}

/// Seed behind every default sample set.
inline constexpr std::uint64_t kDefaultSeed = 0x484B'5631'0001ULL;

/// Deterministic interior sample points. Case 1 draws a direction uniformly
/// and a radius from sample_box[0]; other models draw each coordinate from
/// its box.
inline std::vector<Point> sample_points(const ModelSpace& m, std::size_t count, std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(m.id) * 0x9E37'79B9'7F4A'7C15ULL));
  std::vector<Point> pts;
  pts.reserve(count);
  if (m.id == CaseId::Case1) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> rad(m.sample_box[0][0], m.sample_box[0][1]);
    while (pts.size() < count) {
      Vec4 v(normal(rng), normal(rng), normal(rng), normal(rng));
      if (v.norm() < 1e-6) continue;
      v *= rad(rng) / v.norm();
      pts.push_back(Point{{v[0], v[1], v[2], v[3]}});
    }
    return pts;
  }
  std::array<std::uniform_real_distribution<double>, 4> dist{
      std::uniform_real_distribution<double>(m.sample_box[0][0], m.sample_box[0][1]),
      std::uniform_real_distribution<double>(m.sample_box[1][0], m.sample_box[1][1]),
      std::uniform_real_distribution<double>(m.sample_box[2][0], m.sample_box[2][1]),
      std::uniform_real_distribution<double>(m.sample_box[3][0], m.sample_box[3][1])};
  while (pts.size() < count) {
    Point p;
    for (std::size_t a = 0; a < 4; ++a) p[a] = dist[a](rng);
    pts.push_back(p);
  }
  return pts;
}

}  // namespace hkverify::coord
