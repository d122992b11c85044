#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hkverify/catalog.hpp"
#include "hkverify/coordgeom/checks.hpp"

using namespace hkverify;
using namespace hkverify::coord;

namespace {

Point pt(double x, double y, double z, double t) { return Point{{x, y, z, t}}; }

double max_diff(const Point& a, const Point& b) {
  double m = 0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Case 3 with e^2 = dx instead of e^{-t} dx.
ModelSpace corrupted_case3() {
  ModelSpace m = model_space(CaseId::Case3);
  auto original = m.coframe;
  m.coframe = [original](const Point& p) {
    Mat4 E = original(p);
    E(1, 0) = 1;
    return E;
  };
  return m;
}

}  // namespace

TEST(ModelSpace, CoframeExamples) {
  const Mat4 e2 = model_space(CaseId::Case2).coframe(pt(0, 0, 0, 0));
  EXPECT_EQ(e2.row(0), Eigen::RowVector4d(1, 0, 0, 0));

  const Mat4 e3 = model_space(CaseId::Case3).coframe(pt(0, 0, 0, 0));
  Mat4 rows_t_x_y_z;
  rows_t_x_y_z << 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0;
  EXPECT_EQ(e3, rows_t_x_y_z);

  const Mat4 e1 = model_space(CaseId::Case1).coframe(pt(1, 0, 0, 0));
  EXPECT_EQ(e1.row(0), Eigen::RowVector4d(2, 0, 0, 0));
}

TEST(ModelSpace, CoframesAreInvertibleAtSamples) {
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    for (const auto& p : sample_points(m, 50)) EXPECT_GT(std::abs(m.coframe(p).determinant()), 1e-8) << to_string(id);
  }
}

TEST(GroupMul, Examples) {
  const ModelSpace c3 = model_space(CaseId::Case3);
  EXPECT_LT(max_diff(group_mul(c3, pt(0, 0, 0, 1), pt(1, 0, 0, 0)), pt(std::exp(1.0), 0, 0, 1)), 1e-15);
  const ModelSpace c4 = model_space(CaseId::Case4);
  EXPECT_LT(max_diff(group_mul(c4, pt(1, 0, 0, 0), pt(0, 1, 0, 0)), pt(1, 1, 0.25, 0)), 1e-15);
  EXPECT_THROW(group_mul(model_space(CaseId::Case1), pt(0, 0, 0, 0), pt(1, 0, 0, 0)), DomainError);
}

TEST(GroupMul, UnitAndAssociativity) {
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    const auto pts = sample_points(m, 30, 99);
    for (std::size_t k = 0; k + 2 < pts.size(); k += 3) {
      const Point &a = pts[k], &b = pts[k + 1], &c = pts[k + 2];
      EXPECT_LT(max_diff(group_mul(m, m.unit, a), a), 1e-12) << to_string(id);
      EXPECT_LT(max_diff(group_mul(m, a, m.unit), a), 1e-12) << to_string(id);
      const Point lhs = group_mul(m, group_mul(m, a, b), c), rhs = group_mul(m, a, group_mul(m, b, c));
      EXPECT_LT(max_diff(lhs, rhs), 1e-9 * (1 + max_diff(lhs, Point{}))) << to_string(id);
    }
  }
}

TEST(PointParsing, Accepts4CommaSeparatedReals) {
  EXPECT_EQ(parse_point("0.5,-1,0.2,0.1"), pt(0.5, -1, 0.2, 0.1));
  EXPECT_THROW(parse_point("1,2,3"), ParseError);
  EXPECT_THROW(parse_point("1,2,3,4,5"), ParseError);
  EXPECT_THROW(parse_point("1,2,x,4"), ParseError);
  EXPECT_THROW(parse_point("1,2,3,4abc"), ParseError);
}

TEST(LeftInvariance, Examples) {
  const ModelSpace c2 = model_space(CaseId::Case2);
  EXPECT_TRUE(left_invariance_check(c2, pt(1, 2, 0.3, 0.4), pt(0.5, -1, 0.2, 0.1), 1e-6).passed);
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    const auto v = left_invariance_check(m, m.unit, sample_points(m, 1)[0], 1e-6);
    EXPECT_TRUE(v.passed) << to_string(id);
    EXPECT_LT(v.max_deviation, 1e-9);
  }
  EXPECT_FALSE(left_invariance_check(corrupted_case3(), pt(0, 0, 0, 0.7), pt(0.5, -1, 0.2, 0.1), 1e-6).passed);
}

TEST(FdExteriorDerivative, ConstantFormIsClosed) {
  FormField constant = [](const Point&) {
    NumericForm f(2);
    f.set({0, 1}, 3.0);
    f.set({2, 3}, -1.5);
    return f;
  };
  EXPECT_LT(fd_exterior_derivative(constant, pt(0.3, 0.1, -0.4, 1.0), 1e-5).max_abs(), 1e-10);
}

TEST(FdExteriorDerivative, MatchesStructureEquations) {
  const ModelSpace c2 = model_space(CaseId::Case2);
  const Point p = pt(0.3, -0.2, 0.5, 0.7);
  const NumericForm fd = fd_exterior_derivative(coframe_row_field(c2, 1), p, 1e-5, c2.in_domain);
  EXPECT_LT((fd - pullback(parse_kform("-e13 + e24", 4), c2.coframe(p))).max_abs(), 1e-6);
  EXPECT_LT(fd.antisymmetry_defect(), 1e-12);

  const ModelSpace c4 = model_space(CaseId::Case4);
  for (const auto& q : sample_points(c4, 10)) {
    const NumericForm d2 = fd_exterior_derivative(coframe_row_field(c4, 2), q, 1e-5, c4.in_domain);
    EXPECT_LT((d2 - pullback(parse_kform("-e12 - 1/2 e34", 4), c4.coframe(q))).max_abs(), 1e-6);
  }
}

TEST(FdExteriorDerivative, DomainGuards) {
  const ModelSpace c1 = model_space(CaseId::Case1);
  EXPECT_THROW(fd_exterior_derivative(coframe_row_field(c1, 1), pt(1e-5, 0, 0, 0), 1e-5, c1.in_domain), DomainError);
  EXPECT_THROW(fd_exterior_derivative(coframe_row_field(c1, 1), pt(1, 0, 0, 0), 0.0, c1.in_domain), DomainError);
  EXPECT_THROW(fd_exterior_derivative(coframe_row_field(c1, 1), pt(1e20, 0, 0, 0), 1e-5, c1.in_domain), DomainError);
}

TEST(StructureEquations, CatalogModelsAndNegativeControl) {
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    const auto v = structure_equation_check(m, get_case(id).data.algebra, sample_points(m, 100), 1e-6);
    EXPECT_TRUE(v.passed) << to_string(id);
  }
  const ModelSpace bad = corrupted_case3();
  EXPECT_FALSE(structure_equation_check(bad, get_case(CaseId::Case3).data.algebra, sample_points(bad, 10), 1e-6).passed);
}

TEST(MetricAt, Examples) {
  const ModelSpace c1 = model_space(CaseId::Case1);
  const Point r2 = pt(1, 1, 1, 1);
  EXPECT_LT((metric_at(c1, r2, MetricKind::HyperHermitian) - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((metric_at(c1, r2, MetricKind::HyperKahlerRescaled) - Mat4::Identity() / 4).cwiseAbs().maxCoeff(), 1e-14);
  const ModelSpace c3 = model_space(CaseId::Case3);
  EXPECT_LT((metric_at(c3, pt(0.4, -1, 2, 0), MetricKind::HyperHermitian) - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(metric_at(c1, pt(0, 0, 0, 0), MetricKind::HyperHermitian), DomainError);
  EXPECT_THROW(metric_at(c3, pt(NAN, 0, 0, 0), MetricKind::HyperHermitian), DomainError);
}

TEST(MetricAt, RescaledIsConformalToHyperHermitian) {
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    for (const auto& p : sample_points(m, 20)) {
      const Mat4 g = metric_at(m, p, MetricKind::HyperHermitian);
      const Mat4 h = metric_at(m, p, MetricKind::HyperKahlerRescaled);
      EXPECT_EQ(h, std::exp(-m.potential(p)) * g);
    }
  }
}

TEST(SamplePoints, DeterministicAndInsideTheBoxes) {
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    const auto a = sample_points(m, 40), b = sample_points(m, 40);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_points(m, 40, kDefaultSeed + 1));
    for (const auto& p : a) {
      if (id == CaseId::Case1) {
        EXPECT_GE(coord::detail::radius(p), 0.5);
        EXPECT_LE(coord::detail::radius(p), 3.0);
        continue;
      }
      for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_GE(p[i], m.sample_box[i][0]);
        EXPECT_LE(p[i], m.sample_box[i][1]);
      }
    }
  }
}

TEST(HyperKahlerClosedness, RescaledFormsCloseAndUnrescaledControlFails) {
  for (CaseId id : kAllCases) {
    const ModelSpace m = model_space(id);
    const auto& data = get_case(id).data;
    const auto pts = sample_points(m, 50);
    EXPECT_TRUE(hyperkahler_closedness_check(m, data, pts, 1e-6).passed) << to_string(id);
    EXPECT_EQ(hyperkahler_closedness_check(m, data, pts, 1e-6, kFirstDerivativeStep, false).passed, id == CaseId::Abelian)
        << to_string(id);
  }
}

TEST(NumericCurvature, EuclideanIsFlat) {
  MetricField flat = [](const Point&) { return Mat4(Mat4::Identity()); };
  const CurvatureReport rep = numeric_curvature(flat, pt(0.2, 0.3, -0.1, 1.0));
  for (double v : rep.riemann.data()) EXPECT_LT(std::abs(v), 1e-8);
}

TEST(NumericCurvature, RoundSphereFactor) {
  // 4/(1+|x|²)² δ is the unit round S⁴ in stereographic coordinates
  MetricField sphere = [](const Point& p) {
    const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    return Mat4(4.0 / ((1 + r2) * (1 + r2)) * Mat4::Identity());
  };
  const CurvatureReport rep = numeric_curvature(sphere, pt(0.3, -0.2, 0.5, 0.1));
  for (const auto& s : rep.sectional) EXPECT_NEAR(s.curvature, 1.0, 1e-6) << s.label;
  EXPECT_NEAR(rep.scalar, 12.0, 1e-5);
}

TEST(NumericCurvature, RejectsIndefiniteMetric) {
  MetricField lorentz = [](const Point&) {
    Mat4 g = Mat4::Identity();
    g(3, 3) = -1;
    return g;
  };
  EXPECT_THROW(numeric_curvature(lorentz, pt(0, 0, 0, 0)), DomainError);
}

TEST(NumericCurvature, CatalogSignatures) {
  const ModelSpace c3 = model_space(CaseId::Case3);
  for (const auto& p : sample_points(c3, 3)) {
    const CurvatureReport rep = numeric_curvature(metric_field(c3, MetricKind::HyperHermitian), p, kCurvatureStep, c3.in_domain);
    for (const auto& s : rep.sectional) EXPECT_NEAR(s.curvature, -1.0, 1e-4);
  }
  const ModelSpace c4 = model_space(CaseId::Case4);
  const Point p = sample_points(c4, 1)[0];
  const CurvatureReport rep = numeric_curvature(metric_field(c4, MetricKind::HyperKahlerRescaled), p, kCurvatureStep, c4.in_domain);
  EXPECT_LT(rep.max_abs_ricci, 1e-4);
  EXPECT_GT(rep.max_abs_riemann, 1e-2);
}

TEST(RandomPlanes, AreOrthonormal) {
  std::mt19937_64 rng(5);
  Mat4 g = Mat4::Identity();
  g(0, 1) = g(1, 0) = 0.3;
  g(2, 2) = 2;
  for (const auto& [u, v] : random_planes(g, 100, rng)) {
    EXPECT_NEAR(u.dot(g * u), 1, 1e-12);
    EXPECT_NEAR(v.dot(g * v), 1, 1e-12);
    EXPECT_NEAR(u.dot(g * v), 0, 1e-12);
  }
}

TEST(CrossValidation, Examples) {
  const auto g = MetricOnAlgebra::identity(4);
  const ModelSpace c4 = model_space(CaseId::Case4);
  EXPECT_TRUE(cross_validate_curvature(c4, get_case(CaseId::Case4).data.algebra, g, sample_points(c4, 1)[0], 1e-4).passed);
  const ModelSpace c1 = model_space(CaseId::Case1);
  EXPECT_TRUE(cross_validate_curvature(c1, get_case(CaseId::Case1).data.algebra, g, pt(1, 0, 0, 0), 1e-4).passed);
  const ModelSpace ab = model_space(CaseId::Abelian);
  const auto v = cross_validate_curvature(ab, LieAlgebra(4), g, pt(0.1, 0.2, 0.3, 0.4), 1e-4);
  EXPECT_TRUE(v.passed);
  EXPECT_LT(v.max_deviation, 1e-12);
}

TEST(CrossValidation, DetectsWrongAlgebra) {
  const auto g = MetricOnAlgebra::identity(4);
  const ModelSpace c3 = model_space(CaseId::Case3);
  EXPECT_FALSE(cross_validate_curvature(c3, get_case(CaseId::Case4).data.algebra, g, sample_points(c3, 1)[0], 1e-4).passed);
}

TEST(ClosedForm, RatiosPerCase) {
  const auto ratios = [](CaseId id) { return compare_closed_form(model_space(id), sample_points(model_space(id), 50)); };
  const auto c1 = ratios(CaseId::Case1);
  EXPECT_TRUE(c1.constant);
  EXPECT_NEAR(c1.ratio_max, 4.0, 1e-9);
  EXPECT_TRUE(c1.flagged);
  for (CaseId id : {CaseId::Abelian, CaseId::Case2, CaseId::Case3}) {
    const auto c = ratios(id);
    EXPECT_TRUE(c.unit) << to_string(id);
    EXPECT_FALSE(c.flagged) << to_string(id);
  }
  const auto c4 = ratios(CaseId::Case4);
  EXPECT_FALSE(c4.constant);
  EXPECT_TRUE(c4.flagged);
  EXPECT_NEAR(c4.ratio_min, 1.0, 1e-9);
  EXPECT_NEAR(c4.ratio_max, 4.0, 1e-9);
}

TEST(ClosedForm, Case4ClosedFormIsNotRicciFlat) {
  const ModelSpace c4 = model_space(CaseId::Case4);
  const Point p = sample_points(c4, 1)[0];
  const auto rep = numeric_curvature(metric_field(c4, MetricKind::HyperKahlerClosedForm), p, kCurvatureStep, c4.in_domain);
  EXPECT_GT(rep.max_abs_ricci, 1e-2);
}
