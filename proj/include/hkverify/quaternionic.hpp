#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hkverify/exact_matrix.hpp"
#include "hkverify/kform.hpp"
#include "hkverify/lie_algebra.hpp"

namespace hkverify {

/// Endomorphism of the algebra; column j holds J e_j, i.e.
/// J e_j = Σ_i matrix(i, j) e_i.
class Endo {
 public:
  explicit Endo(RationalMatrix m) : m_(std::move(m)) {
    if (!m_.square()) throw DimensionMismatch("endomorphism matrix must be square");
  }
  int dimension() const { return m_.rows(); }
  const RationalMatrix& matrix() const { return m_; }
  Vector apply(const Vector& v) const { return m_.apply(v); }
  friend Endo operator*(const Endo& a, const Endo& b) { return Endo(a.m_ * b.m_); }
  friend bool operator==(const Endo&, const Endo&) = default;

 private:
  RationalMatrix m_;
};

struct HypercomplexStructure {
  Endo J1;
  Endo J2;
  Endo J3;

  /// alpha in 1..3
  const Endo& operator[](int alpha) const {
    switch (alpha) {
      case 1: return J1;
      case 2: return J2;
      case 3: return J3;
    }
    throw std::out_of_range("alpha must be 1, 2 or 3");
  }
  int dimension() const { return J1.dimension(); }
};

struct QuaternionVerdict {
  bool holds = true;
  std::string failed_identity;  ///< first violated identity, e.g. "J1 J2 = J3"
  explicit operator bool() const { return holds; }
};

/// J_α² = -I (α = 1,2,3), J1 J2 = J3, J2 J1 = -J3, checked in that order.
inline QuaternionVerdict quaternion_check(const Endo& J1, const Endo& J2, const Endo& J3) {
  const int n = J1.dimension();
  if (J2.dimension() != n || J3.dimension() != n) throw DimensionMismatch("quaternion triple dimensions differ");
  const RationalMatrix minus_id = -RationalMatrix::identity(n);
  if ((J1 * J1).matrix() != minus_id) return {false, "J1^2 = -I"};
  if ((J2 * J2).matrix() != minus_id) return {false, "J2^2 = -I"};
  if ((J3 * J3).matrix() != minus_id) return {false, "J3^2 = -I"};
  if ((J1 * J2).matrix() != J3.matrix()) return {false, "J1 J2 = J3"};
  if ((J2 * J1).matrix() != -J3.matrix()) return {false, "J2 J1 = -J3"};
  return {};
}

inline QuaternionVerdict quaternion_check(const HypercomplexStructure& H) { return quaternion_check(H.J1, H.J2, H.J3); }

/// N(X,Y) = [JX,JY] - [X,Y] - J([X,JY] + [JX,Y])
inline Vector nijenhuis(const LieAlgebra& L, const Endo& J, const Vector& x, const Vector& y) {
  const int n = L.dimension();
  if (J.dimension() != n) throw DimensionMismatch("endomorphism and algebra dimensions differ");
  if ((J * J).matrix() != -RationalMatrix::identity(n)) throw std::invalid_argument("nijenhuis requires J^2 = -I");
  const Vector jx = J.apply(x);
  const Vector jy = J.apply(y);
  Vector a = bracket(L, jx, jy);
  const Vector b = bracket(L, x, y);
  Vector mixed = bracket(L, x, jy);
  const Vector mixed2 = bracket(L, jx, y);
  for (std::size_t k = 0; k < mixed.size(); ++k) mixed[k] += mixed2[k];
  const Vector j_mixed = J.apply(mixed);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k] + j_mixed[k];
  return a;
}

struct IntegrabilityVerdict {
  bool holds = true;
  int alpha = 0;                    ///< failing structure, 1..3
  std::optional<std::pair<int, int>> pair;  ///< 1-based basis pair
  Vector value;                     ///< nonzero Nijenhuis value on that pair
  explicit operator bool() const { return holds; }
};

/// Nijenhuis tensors of J1..J3 vanish on all basis pairs i < j.
inline IntegrabilityVerdict integrability_check(const LieAlgebra& L, const HypercomplexStructure& H) {
  const int n = L.dimension();
  for (int alpha = 1; alpha <= 3; ++alpha)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Vector v = nijenhuis(L, H[alpha], basis_vector(n, i), basis_vector(n, j));
        for (const auto& x : v)
          if (x != 0) return {false, alpha, std::pair{i, j}, v};
      }
  return {};
}

struct HermitianVerdict {
  bool holds = true;
  int failed_alpha = 0;
  explicit operator bool() const { return holds; }
};

/// J_αᵀ g J_α = g for α = 1,2,3.
inline HermitianVerdict hermitian_check(const MetricOnAlgebra& g, const HypercomplexStructure& H) {
  if (g.dimension() != H.dimension()) throw DimensionMismatch("metric and structure dimensions differ");
  for (int alpha = 1; alpha <= 3; ++alpha) {
    const RationalMatrix& J = H[alpha].matrix();
    if (J.transpose() * g.matrix() * J != g.matrix()) return {false, alpha};
  }
  return {};
}

/// Matrix Ω(i,j) = ω(e_{i+1}, e_{j+1}) of a 2-form.
inline RationalMatrix form_matrix(const KForm& omega) {
  if (omega.grade() != 2) throw DimensionMismatch("expected a 2-form");
  const int n = omega.dimension();
  RationalMatrix m(n, n);
  for (const auto& [idx, c] : omega.terms()) {
    m(idx[0] - 1, idx[1] - 1) = c;
    m(idx[1] - 1, idx[0] - 1) = -c;
  }
  return m;
}

/// ω(X,Y) = g(X, JY); throws std::invalid_argument if g J is not antisymmetric.
inline KForm fundamental_form(const MetricOnAlgebra& g, const Endo& J) {
  if (g.dimension() != J.dimension()) throw DimensionMismatch("metric and endomorphism dimensions differ");
  const RationalMatrix gj = g.matrix() * J.matrix();
  if (!gj.is_antisymmetric()) throw std::invalid_argument("g(X, JY) is not antisymmetric: metric is not Hermitian for J");
  const int n = g.dimension();
  std::vector<std::pair<IndexTuple, Scalar>> entries;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (gj(i, j) != 0) entries.push_back({{i + 1, j + 1}, gj(i, j)});
  return KForm(n, 2, entries);
}

/// Algebra, metric, structure and the three fundamental forms. `omegas` is
/// normally derived; it is a plain field so callers can study perturbed data.
struct HyperHermitianData {
  LieAlgebra algebra;
  MetricOnAlgebra metric;
  HypercomplexStructure structure;
  std::array<KForm, 3> omegas;
};

inline HyperHermitianData make_hyper_hermitian(LieAlgebra L, MetricOnAlgebra g, HypercomplexStructure H) {
  if (L.dimension() != g.dimension() || g.dimension() != H.dimension())
    throw DimensionMismatch("algebra, metric and structure dimensions differ");
  std::array<KForm, 3> omegas{fundamental_form(g, H.J1), fundamental_form(g, H.J2), fundamental_form(g, H.J3)};
  return {std::move(L), std::move(g), std::move(H), std::move(omegas)};
}

struct LeeFormResult {
  KForm theta;
  bool consistent = false;
  bool closed = false;
  std::array<KForm, 3> residuals;  ///< dω_α - θ∧ω_α
  int rank = 0;                    ///< rank of the stacked system
};

/// Solves dω_α = θ∧ω_α (α = 1,2,3) for a single 1-form θ by exact elimination
/// over all basis triples. Inconsistency is reported, not thrown; a
/// degenerate ω_α throws.
inline LeeFormResult lee_form(const LieAlgebra& L, const std::array<KForm, 3>& omegas) {
  const int n = L.dimension();
  for (int a = 0; a < 3; ++a) {
    if (omegas[static_cast<std::size_t>(a)].dimension() != n) throw DimensionMismatch("ω dimension does not match the algebra");
    if (determinant(form_matrix(omegas[static_cast<std::size_t>(a)])) == 0)
      throw std::invalid_argument("ω" + std::to_string(a + 1) + " is degenerate");
  }
  std::array<KForm, 3> d_omega{ce_differential(L, omegas[0]), ce_differential(L, omegas[1]), ce_differential(L, omegas[2])};

  std::vector<IndexTuple> triples;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) triples.push_back({i, j, k});

  const int rows = 3 * static_cast<int>(triples.size());
  RationalMatrix A(rows, n);
  Vector b(static_cast<std::size_t>(rows));
  for (int a = 0; a < 3; ++a) {
    std::vector<KForm> columns;
    for (int m = 1; m <= n; ++m) columns.push_back(wedge(KForm::basis(n, m), omegas[static_cast<std::size_t>(a)]));
    for (std::size_t t = 0; t < triples.size(); ++t) {
      const int r = a * static_cast<int>(triples.size()) + static_cast<int>(t);
      for (int m = 0; m < n; ++m) A(r, m) = columns[static_cast<std::size_t>(m)].coefficient(triples[t]);
      b[static_cast<std::size_t>(r)] = d_omega[static_cast<std::size_t>(a)].coefficient(triples[t]);
    }
  }
  const LinearSolution sol = solve_exact(A, b);

  std::vector<std::pair<IndexTuple, Scalar>> theta_terms;
  for (int m = 0; m < n; ++m)
    if (sol.x[static_cast<std::size_t>(m)] != 0) theta_terms.push_back({{m + 1}, sol.x[static_cast<std::size_t>(m)]});
  KForm theta(n, 1, theta_terms);

  LeeFormResult out{theta, true, ce_differential(L, theta).is_zero(),
                    {KForm(n, 3), KForm(n, 3), KForm(n, 3)}, sol.rank};
  for (int a = 0; a < 3; ++a) {
    auto& res = out.residuals[static_cast<std::size_t>(a)];
    res = d_omega[static_cast<std::size_t>(a)] - wedge(theta, omegas[static_cast<std::size_t>(a)]);
    if (!res.is_zero()) out.consistent = false;
  }
  return out;
}

inline LeeFormResult lee_form(const HyperHermitianData& data) { return lee_form(data.algebra, data.omegas); }

enum class ConformalClass { HyperKahler, ConformallyHyperKahler, LckOnly, NotLck };

inline std::string_view to_string(ConformalClass c) {
  switch (c) {
    case ConformalClass::HyperKahler: return "HYPERKAHLER";
    case ConformalClass::ConformallyHyperKahler: return "CONFORMALLY_HYPERKAHLER";
    case ConformalClass::LckOnly: return "LCK_ONLY";
    case ConformalClass::NotLck: return "NOT_LCK";
  }
  return "?";
}

struct ConformalVerdict {
  ConformalClass classification;
  /// Closed ⇒ exact is used for CONFORMALLY_HYPERKAHLER; valid on simply connected groups.
  bool assumes_simply_connected = false;
};

inline ConformalVerdict conformal_class_verdict(const LeeFormResult& r) {
  if (!r.consistent) return {ConformalClass::NotLck, false};
  if (r.theta.is_zero()) return {ConformalClass::HyperKahler, false};
  if (r.closed) return {ConformalClass::ConformallyHyperKahler, true};
  return {ConformalClass::LckOnly, false};
}

}  // namespace hkverify
