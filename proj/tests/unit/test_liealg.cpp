#include <gtest/gtest.h>

#include <random>

#include "hkverify/catalog.hpp"
#include "hkverify/lie_algebra.hpp"
#include "random_objects.hpp"

using namespace hkverify;

namespace {

LieAlgebra algebra(CaseId id) { return get_case(id).data.algebra; }

Vector vec(std::initializer_list<int> v) {
  Vector out;
  for (int x : v) out.emplace_back(x);
  return out;
}

/// σ(u, v) for a 2-form σ and coefficient vectors u, v.
Scalar eval2(const KForm& s, const Vector& u, const Vector& v) {
  const int n = s.dimension();
  Scalar out = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Scalar w = u[static_cast<std::size_t>(i - 1)] * v[static_cast<std::size_t>(j - 1)];
      if (w != 0) out += w * contract_basis(s, {i, j});
    }
  return out;
}

MetricOnAlgebra random_metric(std::mt19937_64& rng, int n) {
  RationalMatrix a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = fixtures::random_scalar(rng);
  return MetricOnAlgebra(a.transpose() * a + RationalMatrix::identity(n));
}

}  // namespace

TEST(Bracket, Examples) {
  EXPECT_EQ(bracket(algebra(CaseId::Case1), basis_vector(4, 2), basis_vector(4, 3)), basis_vector(4, 4));
  const Vector half_e2{0, Scalar(1) / 2, 0, 0};
  EXPECT_EQ(bracket(algebra(CaseId::Case4), basis_vector(4, 3), basis_vector(4, 4)), half_e2);
  const Vector x{1, Scalar(2) / 3, -1, 5};
  for (CaseId id : kAllCases) EXPECT_EQ(bracket(algebra(id), x, x), Vector(4));
  EXPECT_THROW(bracket(algebra(CaseId::Case1), Vector(3), Vector(4)), DimensionMismatch);
}

TEST(LieAlgebraIngestion, AntisymmetricCompletionAndDuplicates) {
  const LieAlgebra L = LieAlgebra::from_brackets(3, {{1, 2, {{3, 1}}}});
  EXPECT_EQ(L.constant(2, 1, 3), -1);
  EXPECT_THROW(LieAlgebra::from_brackets(3, {{1, 2, {{3, 1}}}, {2, 1, {{3, 1}}}}), std::invalid_argument);
  EXPECT_THROW(LieAlgebra::from_brackets(3, {{1, 4, {{3, 1}}}}), std::invalid_argument);
}

TEST(CeDifferential, Examples) {
  const LieAlgebra c1 = algebra(CaseId::Case1);
  EXPECT_EQ(ce_differential(c1, KForm::basis(4, 2)), parse_kform("-e34", 4));
  EXPECT_EQ(ce_differential(c1, parse_kform("-e12 - e34", 4)), parse_kform("-e134", 4));
  EXPECT_EQ(ce_differential(algebra(CaseId::Case4), KForm::basis(4, 2)), parse_kform("-e12 - 1/2 e34", 4));
  EXPECT_EQ(ce_differential(algebra(CaseId::Case2), parse_kform("-e13 - e24", 4)), parse_kform("2 e234", 4));
  const LieAlgebra ab(4);
  for (int j = 1; j <= 4; ++j) EXPECT_TRUE(ce_differential(ab, KForm::basis(4, j)).is_zero());
  EXPECT_TRUE(ce_differential(c1, KForm::constant(4, 7)).is_zero());
  EXPECT_THROW(ce_differential(c1, KForm::basis(5, 1)), DimensionMismatch);
}

TEST(CeDifferential, OneFormsAreMinusBracketDual) {
  std::mt19937_64 rng(0x11E0'0001ULL);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    const LieAlgebra L = fixtures::random_algebra(rng, n);
    const KForm s = fixtures::random_form(rng, n, 1);
    const KForm ds = ce_differential(L, s);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const Vector br = bracket(L, basis_vector(n, i), basis_vector(n, j));
        Scalar expect = 0;
        for (int k = 1; k <= n; ++k) expect -= s.coefficient({k}) * br[static_cast<std::size_t>(k - 1)];
        ASSERT_EQ(contract_basis(ds, {i, j}), expect);
      }
  }
}

TEST(CeDifferential, TwoFormsMatchAlternatingSum) {
  // dσ(x,y,z) = -σ([x,y],z) + σ([x,z],y) - σ([y,z],x) on left-invariant fields
  std::mt19937_64 rng(0x11E0'0002ULL);
  for (CaseId id : kAllCases) {
    const LieAlgebra L = algebra(id);
    for (int trial = 0; trial < 20; ++trial) {
      const KForm s = fixtures::random_form(rng, 4, 2);
      const KForm ds = ce_differential(L, s);
      for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
          for (int k = 1; k <= 4; ++k) {
            const Vector x = basis_vector(4, i), y = basis_vector(4, j), z = basis_vector(4, k);
            const Scalar expect = -eval2(s, bracket(L, x, y), z) + eval2(s, bracket(L, x, z), y) - eval2(s, bracket(L, y, z), x);
            ASSERT_EQ(contract_basis(ds, {i, j, k}), expect) << to_string(id);
          }
    }
  }
}

TEST(CeDifferential, LeibnizRule) {
  std::mt19937_64 rng(0x11E0'0003ULL);
  for (CaseId id : kAllCases) {
    const LieAlgebra L = algebra(id);
    for (int trial = 0; trial < 50; ++trial) {
      const int p = fixtures::random_grade(rng, 3), q = fixtures::random_grade(rng, 3);
      const KForm a = fixtures::random_form(rng, 4, p), b = fixtures::random_form(rng, 4, q);
      const KForm lhs = ce_differential(L, wedge(a, b));
      const KForm rhs = wedge(ce_differential(L, a), b) + (p % 2 ? Scalar(-1) : Scalar(1)) * wedge(a, ce_differential(L, b));
      ASSERT_EQ(lhs, rhs);
    }
  }
}

TEST(CeDifferential, DSquaredVanishesOnCatalogAlgebras) {
  std::mt19937_64 rng(0x11E0'0004ULL);
  for (int trial = 0; trial < 1000; ++trial) {
    const LieAlgebra L = algebra(kAllCases[static_cast<std::size_t>(trial) % kAllCases.size()]);
    const KForm f = fixtures::random_form(rng, 4, fixtures::random_grade(rng, 4));
    ASSERT_TRUE(ce_differential(L, ce_differential(L, f)).is_zero()) << to_string(f);
  }
}

TEST(Jacobi, Fixtures) {
  EXPECT_TRUE(jacobi_check(algebra(CaseId::Case1)).holds);
  EXPECT_TRUE(jacobi_check(LieAlgebra(4)).holds);
  const LieAlgebra bad = LieAlgebra::from_brackets(4, {{1, 2, {{3, 1}}}, {1, 3, {{1, 1}}}});
  const JacobiVerdict v = jacobi_check(bad);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(*v.witness, (std::array<int, 3>{1, 2, 3}));
  EXPECT_EQ(v.cyclic_sum, vec({0, 0, -1, 0}));
  EXPECT_FALSE(v.dd_vanishes);
}

TEST(Jacobi, EquivalentToDSquaredOnRandomAlgebras) {
  std::mt19937_64 rng(0x11E0'0005ULL);
  int failing = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 5)(rng);
    const LieAlgebra L = fixtures::random_algebra(rng, n, 0.3);
    bool dd_zero = true;
    for (int j = 1; j <= n; ++j) dd_zero = dd_zero && ce_differential(L, ce_differential(L, KForm::basis(n, j))).is_zero();
    const JacobiVerdict v = jacobi_check(L);
    ASSERT_EQ(v.holds, dd_zero);
    if (!v.holds) ++failing;
  }
  EXPECT_GE(failing, 5);
}

TEST(LeviCivita, Fixtures) {
  const auto g = MetricOnAlgebra::identity(4);
  const Connection ab = levi_civita(LieAlgebra(4), g);
  for (const auto& x : ab.data()) EXPECT_EQ(x, 0);

  const Connection c1 = levi_civita(algebra(CaseId::Case1), g);
  EXPECT_EQ(c1(1, 2, 3), Scalar(1) / 2);  // ∇_{e2} e3 = ½ e4
  EXPECT_EQ(c1(1, 3, 2), Scalar(-1) / 2);
  EXPECT_EQ(c1(2, 1, 3), Scalar(-1) / 2);
  EXPECT_EQ(c1(3, 2, 1), Scalar(-1) / 2);

  const Connection c3 = levi_civita(algebra(CaseId::Case3), g);
  EXPECT_EQ(c3(1, 1, 0), 1);   // ∇_{e2} e2 = e1
  EXPECT_EQ(c3(1, 0, 1), -1);  // ∇_{e2} e1 = -e2
}

TEST(LeviCivita, TorsionFreeAndMetricOnRandomMetrics) {
  std::mt19937_64 rng(0x11E0'0006ULL);
  for (CaseId id : kAllCases) {
    const LieAlgebra L = algebra(id);
    for (int trial = 0; trial < 3; ++trial) {
      const MetricOnAlgebra g = random_metric(rng, 4);
      const Connection G = levi_civita(L, g);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          for (int k = 0; k < 4; ++k) ASSERT_EQ(G(i, j, k) - G(j, i, k), L.constant(i + 1, j + 1, k + 1));
          for (int k = 0; k < 4; ++k) {
            Scalar s = 0;
            for (int m = 0; m < 4; ++m) s += G(i, j, m) * g(m, k) + G(i, k, m) * g(j, m);
            ASSERT_EQ(s, 0);
          }
        }
    }
  }
}

TEST(LeviCivita, RejectsNonPositiveMetric) {
  EXPECT_THROW(MetricOnAlgebra(RationalMatrix{{1, 0}, {0, -1}}), std::invalid_argument);
  EXPECT_THROW(MetricOnAlgebra(RationalMatrix{{1, 1}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(levi_civita(algebra(CaseId::Case1), MetricOnAlgebra::identity(3)), DimensionMismatch);
}

TEST(CurvatureExact, SymmetriesOnRandomMetrics) {
  std::mt19937_64 rng(0x11E0'0007ULL);
  for (CaseId id : kAllCases) {
    const MetricOnAlgebra g = random_metric(rng, 4);
    const ExactCurvature c = curvature_exact(algebra(id), g);
    EXPECT_TRUE(c.ricci.is_symmetric()) << to_string(id);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            ASSERT_EQ(c.riemann(i, j, k, l), -c.riemann(j, i, k, l));
            ASSERT_EQ(c.riemann(i, j, k, l) + c.riemann(j, k, i, l) + c.riemann(k, i, j, l), 0);
            Scalar lowered_kl = 0, lowered_lk = 0;
            for (int m = 0; m < 4; ++m) {
              lowered_kl += c.riemann(i, j, k, m) * g(m, l);
              lowered_lk += c.riemann(i, j, l, m) * g(m, k);
            }
            ASSERT_EQ(lowered_kl, -lowered_lk);
          }
  }
}

TEST(CurvatureExact, AbelianIsFlat) {
  const ExactCurvature c = curvature_exact(LieAlgebra(4), MetricOnAlgebra::identity(4));
  for (const auto& x : c.riemann.data()) EXPECT_EQ(x, 0);
  EXPECT_EQ(c.scalar_curvature, 0);
}

TEST(CurvatureExact, CatalogSectionalFixtures) {
  using Table = std::map<std::pair<int, int>, Scalar>;
  const Scalar q = Scalar(1) / 4, s = Scalar(-7) / 16;
  const std::map<CaseId, Table> expected{
      {CaseId::Case1, {{{1, 2}, 0}, {{1, 3}, 0}, {{1, 4}, 0}, {{2, 3}, q}, {{2, 4}, q}, {{3, 4}, q}}},
      {CaseId::Case2, {{{1, 2}, -1}, {{1, 3}, -1}, {{1, 4}, 0}, {{2, 3}, -1}, {{2, 4}, 0}, {{3, 4}, 0}}},
      {CaseId::Case3, {{{1, 2}, -1}, {{1, 3}, -1}, {{1, 4}, -1}, {{2, 3}, -1}, {{2, 4}, -1}, {{3, 4}, -1}}},
      {CaseId::Case4, {{{1, 2}, -1}, {{1, 3}, -q}, {{1, 4}, -q}, {{2, 3}, s}, {{2, 4}, s}, {{3, 4}, s}}},
  };
  const std::map<CaseId, Scalar> scalar{
      {CaseId::Case1, Scalar(3) / 2}, {CaseId::Case2, -6}, {CaseId::Case3, -12}, {CaseId::Case4, Scalar(-45) / 8}};
  for (const auto& [id, table] : expected) {
    const ExactCurvature c = curvature_exact(algebra(id), MetricOnAlgebra::identity(4));
    EXPECT_EQ(c.basis_sectional, table) << to_string(id);
    EXPECT_EQ(c.scalar_curvature, scalar.at(id)) << to_string(id);
  }
  const ExactCurvature c4 = curvature_exact(algebra(CaseId::Case4), MetricOnAlgebra::identity(4));
  for (const auto& [plane, k] : c4.basis_sectional) EXPECT_LT(k, 0);
  const RationalMatrix ricci1 = curvature_exact(algebra(CaseId::Case1), MetricOnAlgebra::identity(4)).ricci;
  const Scalar h = Scalar(1) / 2;
  EXPECT_EQ(ricci1, (RationalMatrix{{0, 0, 0, 0}, {0, h, 0, 0}, {0, 0, h, 0}, {0, 0, 0, h}}));
}

TEST(CurvatureExact, SectionalNumeratorMatchesBasisTable) {
  const auto g = MetricOnAlgebra::identity(4);
  const ExactCurvature c = curvature_exact(algebra(CaseId::Case4), g);
  for (const auto& [plane, k] : c.basis_sectional)
    EXPECT_EQ(sectional_numerator(c, g, basis_vector(4, plane.first), basis_vector(4, plane.second)), k);
}
