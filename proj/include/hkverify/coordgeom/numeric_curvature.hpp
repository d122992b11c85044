#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hkverify/coordgeom/model_space.hpp"
#include "hkverify/coordgeom/numeric_form.hpp"
#include "hkverify/dense_tensor.hpp"

namespace hkverify::coord {

using MetricField = std::function<Mat4(const Point&)>;

/// Default step for nested second differences; see numeric_curvature.
inline constexpr double kCurvatureStep = 1e-4;

struct SectionalSample {
  std::string label;
  Vec4 u;
  Vec4 v;
  double curvature;
};

/// Conventions match curvature_exact: christoffel(i,j,k) is the ∂_k
/// component of ∇_{∂i}∂j; riemann(i,j,k,l) the ∂_l component of R(∂i,∂j)∂k.
struct CurvatureReport {
  Point point;
  Mat4 metric;
  DenseTensor<double, 3> christoffel;
  DenseTensor<double, 4> riemann;
  Mat4 ricci;
  double scalar = 0;
  double max_abs_riemann = 0;
  double max_abs_ricci = 0;
  std::vector<SectionalSample> sectional;  ///< the six coordinate planes
};

namespace detail {

inline DenseTensor<double, 3> fd_christoffel(const MetricField& g, const Point& p, double h) {
  std::array<Mat4, 4> dg;
  for (int a = 0; a < 4; ++a) dg[static_cast<std::size_t>(a)] = (g(p.shifted(a, h)) - g(p.shifted(a, -h))) / (2 * h);
  const Mat4 ginv = g(p).inverse();
  DenseTensor<double, 3> gamma(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        double s = 0;
        for (int l = 0; l < 4; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) - dg[static_cast<std::size_t>(l)](i, j));
        gamma(i, j, k) = s / 2;
      }
  return gamma;
}

inline void fd_riemann(const MetricField& g, const Point& p, double h, DenseTensor<double, 3>& gamma,
                       DenseTensor<double, 4>& riemann) {
  gamma = fd_christoffel(g, p, h);
  std::array<DenseTensor<double, 3>, 4> dgamma;
  for (int m = 0; m < 4; ++m) {
    auto plus = fd_christoffel(g, p.shifted(m, h), h);
    auto minus = fd_christoffel(g, p.shifted(m, -h), h);
    auto& d = dgamma[static_cast<std::size_t>(m)];
    d = DenseTensor<double, 3>(4);
    for (std::size_t n = 0; n < d.data().size(); ++n) d.data()[n] = (plus.data()[n] - minus.data()[n]) / (2 * h);
  }
  riemann = DenseTensor<double, 4>(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          double v = dgamma[static_cast<std::size_t>(i)](j, k, l) - dgamma[static_cast<std::size_t>(j)](i, k, l);
          for (int m = 0; m < 4; ++m) v += gamma(j, k, m) * gamma(i, m, l) - gamma(i, k, m) * gamma(j, m, l);
          riemann(i, j, k, l) = v;
        }
}

template <class T, std::size_t R>
DenseTensor<T, R> richardson(const DenseTensor<T, R>& coarse, const DenseTensor<T, R>& fine) {
  DenseTensor<T, R> out = fine;
  for (std::size_t n = 0; n < out.data().size(); ++n) out.data()[n] = (4 * fine.data()[n] - coarse.data()[n]) / 3;
  return out;
}

}  // namespace detail

/// K(u,v) = g(R(u,v)v, u) / (|u|²|v|² - g(u,v)²)
inline double sectional_curvature(const CurvatureReport& rep, const Vec4& u, const Vec4& v) {
  Vec4 ruvv = Vec4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        const double w = u[i] * v[j] * v[k];
        if (w == 0) continue;
        for (int l = 0; l < 4; ++l) ruvv[l] += w * rep.riemann(i, j, k, l);
      }
  const Mat4& g = rep.metric;
  const double area = u.dot(g * u) * v.dot(g * v) - std::pow(u.dot(g * v), 2);
  return ruvv.dot(g * u) / area;
}

/// Finite-difference Levi-Civita connection and curvature of a metric field.
/// Christoffels come from central differences of g, their derivatives from
/// central differences of the Christoffels; with `richardson` the whole
/// computation runs at h and h/2 and is combined as (4·R(h/2) - R(h))/3.
inline CurvatureReport numeric_curvature(const MetricField& g, const Point& p, double step = kCurvatureStep,
                                         const DomainPredicate& domain = {}, bool richardson = true) {
  require_stencil(p, step, 2, domain);
  CurvatureReport rep;
  rep.point = p;
  rep.metric = g(p);
  Eigen::SelfAdjointEigenSolver<Mat4> spd(rep.metric);
  if (spd.eigenvalues().minCoeff() <= 0) throw DomainError("metric is not positive definite at (" + to_string(p) + ")");

  detail::fd_riemann(g, p, step, rep.christoffel, rep.riemann);
  if (richardson) {
    DenseTensor<double, 3> gamma_fine;
    DenseTensor<double, 4> riemann_fine;
    detail::fd_riemann(g, p, step / 2, gamma_fine, riemann_fine);
    rep.christoffel = detail::richardson(rep.christoffel, gamma_fine);
    rep.riemann = detail::richardson(rep.riemann, riemann_fine);
  }

  rep.ricci = Mat4::Zero();
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i) rep.ricci(j, k) += rep.riemann(i, j, k, i);
  rep.scalar = (rep.metric.inverse().cwiseProduct(rep.ricci)).sum();
  for (double v : rep.riemann.data()) rep.max_abs_riemann = std::max(rep.max_abs_riemann, std::abs(v));
  rep.max_abs_ricci = rep.ricci.cwiseAbs().maxCoeff();

  static const char* names[4] = {"x", "y", "z", "t"};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      Vec4 u = Vec4::Unit(a), v = Vec4::Unit(b);
      rep.sectional.push_back({std::string(names[a]) + "-" + names[b], u, v, sectional_curvature(rep, u, v)});
    }
  return rep;
}

/// Eigenvalues of g⁻¹·Ric (Ricci curvatures along g-orthonormal eigendirections), ascending.
inline Vec4 ricci_eigenvalues(const CurvatureReport& rep) {
  const Mat4 sym = (rep.ricci + rep.ricci.transpose()) / 2;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat4> es(sym, rep.metric);
  return es.eigenvalues();
}

/// Random 2-planes as g-orthonormal pairs. Gram–Schmidt orthogonalizes
/// against the larger of the two draws; near-parallel draws are redrawn.
inline std::vector<std::pair<Vec4, Vec4>> random_planes(const Mat4& g, std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  auto draw = [&] { return Vec4(normal(rng), normal(rng), normal(rng), normal(rng)); };
  auto norm = [&](const Vec4& v) { return std::sqrt(v.dot(g * v)); };
  std::vector<std::pair<Vec4, Vec4>> out;
  out.reserve(count);
  while (out.size() < count) {
    Vec4 a = draw(), b = draw();
    if (norm(b) > norm(a)) std::swap(a, b);
    if (norm(a) < 1e-8) continue;
    a /= norm(a);
    b -= b.dot(g * a) * a;
    if (norm(b) < 1e-6) continue;
    b /= norm(b);
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace hkverify::coord
