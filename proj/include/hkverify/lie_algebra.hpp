#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hkverify/dense_tensor.hpp"
#include "hkverify/errors.hpp"
#include "hkverify/exact_matrix.hpp"
#include "hkverify/kform.hpp"

namespace hkverify {

/// One row of a bracket table: [e_i, e_j] = Σ_k coeffs[k] e_k (1-based).
struct BracketEntry {
  int i;
  int j;
  std::map<int, Scalar> coeffs;
};

/// Real Lie algebra given by structure constants in a fixed basis e_1..e_n.
/// Antisymmetry is enforced at construction; the Jacobi identity is not
/// (see jacobi_check).
class LieAlgebra {
 public:
  /// The abelian algebra of dimension n.
  explicit LieAlgebra(int n) : n_(n), c_(n) {
    if (n <= 0) throw DimensionMismatch("Lie algebra dimension must be positive");
  }

  /// Antisymmetric completion of a bracket table. Pairs not listed bracket to
  /// zero; listing a pair twice (in either order) is an error.
  static LieAlgebra from_brackets(int n, const std::vector<BracketEntry>& table) {
    LieAlgebra L(n);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : table) {
      auto in_range = [n](int k) { return k >= 1 && k <= n; };
      if (!in_range(e.i) || !in_range(e.j))
        throw DimensionMismatch("bracket [e" + std::to_string(e.i) + ",e" + std::to_string(e.j) + "] out of range");
      if (e.i == e.j) {
        for (const auto& [k, v] : e.coeffs)
          if (v != 0) throw std::invalid_argument("[e" + std::to_string(e.i) + ",e" + std::to_string(e.i) + "] must vanish");
        continue;
      }
      auto key = std::minmax(e.i, e.j);
      if (!seen.insert(key).second)
        throw std::invalid_argument("duplicate bracket entry for pair (" + std::to_string(key.first) + "," +
                                    std::to_string(key.second) + ")");
      for (const auto& [k, v] : e.coeffs) {
        if (!in_range(k)) throw DimensionMismatch("bracket image index " + std::to_string(k) + " out of range");
        L.c_(e.i - 1, e.j - 1, k - 1) += v;
        L.c_(e.j - 1, e.i - 1, k - 1) -= v;
      }
    }
    return L;
  }

  /// Raw constants c[i][j][k] (0-based). Throws unless antisymmetric in (i,j).
  static LieAlgebra from_constants(DenseTensor<Scalar, 3> c) {
    LieAlgebra L(c.extent());
    const int n = c.extent();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (c(i, j, k) != -c(j, i, k)) throw std::invalid_argument("structure constants are not antisymmetric");
    L.c_ = std::move(c);
    return L;
  }

  int dimension() const { return n_; }

  /// c[i][j][k], 1-based: coefficient of e_k in [e_i, e_j].
  const Scalar& constant(int i, int j, int k) const { return c_(i - 1, j - 1, k - 1); }
  const DenseTensor<Scalar, 3>& constants() const { return c_; }

  bool is_abelian() const {
    for (const auto& x : c_.data())
      if (x != 0) return false;
    return true;
  }

  /// Nonzero brackets [e_i, e_j] with i < j, as a table.
  std::vector<BracketEntry> bracket_table() const {
    std::vector<BracketEntry> out;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        BracketEntry e{i + 1, j + 1, {}};
        for (int k = 0; k < n_; ++k)
          if (c_(i, j, k) != 0) e.coeffs[k + 1] = c_(i, j, k);
        if (!e.coeffs.empty()) out.push_back(std::move(e));
      }
    return out;
  }

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  int n_;
  DenseTensor<Scalar, 3> c_;
};

inline Vector basis_vector(int n, int i) {
  Vector v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

inline Vector bracket(const LieAlgebra& L, const Vector& x, const Vector& y) {
  const int n = L.dimension();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw DimensionMismatch("bracket arguments must have length " + std::to_string(n));
  Vector out(static_cast<std::size_t>(n));
  const auto& c = L.constants();
  for (int i = 0; i < n; ++i) {
    if (x[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[static_cast<std::size_t>(j)] == 0) continue;
      Scalar xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      for (int k = 0; k < n; ++k)
        if (c(i, j, k) != 0) out[static_cast<std::size_t>(k)] += xy * c(i, j, k);
    }
  }
  return out;
}

namespace detail {

// d e^k = -Σ_{i<j} c_{ij}^k e^{ij}, from dσ(x,y) = -σ([x,y]).
inline KForm d_basis_one_form(const LieAlgebra& L, int k) {
  const int n = L.dimension();
  std::vector<std::pair<IndexTuple, Scalar>> entries;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (L.constant(i, j, k) != 0) entries.push_back({{i, j}, -L.constant(i, j, k)});
  return KForm(n, 2, entries);
}

// d(e^{i1} ∧ rest) = de^{i1} ∧ rest - e^{i1} ∧ d(rest)
inline KForm d_monomial(const LieAlgebra& L, const std::vector<KForm>& d_basis, const IndexTuple& idx) {
  const int n = L.dimension();
  if (idx.empty()) return KForm(n, 1);
  if (idx.size() == 1) return d_basis[static_cast<std::size_t>(idx.front() - 1)];
  IndexTuple rest(idx.begin() + 1, idx.end());
  KForm head = KForm::basis(n, idx.front());
  KForm rest_form = KForm::monomial(n, rest);
  return wedge(d_basis[static_cast<std::size_t>(idx.front() - 1)], rest_form) - wedge(head, d_monomial(L, d_basis, rest));
}

}  // namespace detail

/// Chevalley–Eilenberg differential on Λ*(g*), with dσ(x,y) = -σ([x,y]) on
/// 1-forms extended by the graded Leibniz rule. Grade 0 maps to zero.
inline KForm ce_differential(const LieAlgebra& L, const KForm& f) {
  const int n = L.dimension();
  if (f.dimension() != n) throw DimensionMismatch("form dimension does not match the algebra");
  std::vector<KForm> d_basis;
  d_basis.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) d_basis.push_back(detail::d_basis_one_form(L, k));
  KForm out(n, f.grade() + 1);
  for (const auto& [idx, c] : f.terms()) out += c * detail::d_monomial(L, d_basis, idx);
  return out;
}

struct JacobiVerdict {
  bool holds = true;
  std::optional<std::array<int, 3>> witness;  ///< 1-based triple (i<j<k) with nonzero cyclic sum
  Vector cyclic_sum;                          ///< the offending sum, empty when holds
  bool dd_vanishes = true;                    ///< d(d e^j) = 0 for every j
  std::optional<int> dd_witness;              ///< first j with d(d e^j) ≠ 0
  explicit operator bool() const { return holds; }
};

/// Checks the Jacobi identity on all basis triples, and independently that
/// d∘d vanishes on every basis 1-form. The two routes must agree.
inline JacobiVerdict jacobi_check(const LieAlgebra& L) {
  const int n = L.dimension();
  JacobiVerdict v;
  for (int i = 1; i <= n && v.holds; ++i)
    for (int j = i + 1; j <= n && v.holds; ++j)
      for (int k = j + 1; k <= n && v.holds; ++k) {
        Vector ei = basis_vector(n, i), ej = basis_vector(n, j), ek = basis_vector(n, k);
        Vector a = bracket(L, bracket(L, ei, ej), ek);
        Vector b = bracket(L, bracket(L, ej, ek), ei);
        Vector c = bracket(L, bracket(L, ek, ei), ej);
        Vector sum(static_cast<std::size_t>(n));
        bool zero = true;
        for (std::size_t m = 0; m < sum.size(); ++m) {
          sum[m] = a[m] + b[m] + c[m];
          if (sum[m] != 0) zero = false;
        }
        if (!zero) {
          v.holds = false;
          v.witness = {i, j, k};
          v.cyclic_sum = std::move(sum);
        }
      }
  for (int j = 1; j <= n; ++j) {
    if (!ce_differential(L, ce_differential(L, KForm::basis(n, j))).is_zero()) {
      v.dd_vanishes = false;
      v.dd_witness = j;
      break;
    }
  }
  if (v.holds != v.dd_vanishes)
    throw std::logic_error("Jacobi identity and d∘d = 0 disagree; the differential is inconsistent");
  return v;
}

/// Symmetric positive definite inner product on the algebra, exact.
class MetricOnAlgebra {
 public:
  explicit MetricOnAlgebra(RationalMatrix g) : g_(std::move(g)) {
    if (!g_.square()) throw DimensionMismatch("metric must be square");
    if (!g_.is_symmetric()) throw std::invalid_argument("metric is not symmetric");
    if (!is_positive_definite(g_)) throw std::invalid_argument("metric is not positive definite");
    inverse_ = *inverse(g_);
  }
  static MetricOnAlgebra identity(int n) { return MetricOnAlgebra(RationalMatrix::identity(n)); }

  int dimension() const { return g_.rows(); }
  const RationalMatrix& matrix() const { return g_; }
  const RationalMatrix& inverse_matrix() const { return inverse_; }
  const Scalar& operator()(int i, int j) const { return g_(i, j); }

  Scalar inner(const Vector& x, const Vector& y) const {
    Vector gy = g_.apply(y);
    Scalar s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
    return s;
  }

  friend bool operator==(const MetricOnAlgebra& a, const MetricOnAlgebra& b) { return a.g_ == b.g_; }

 private:
  RationalMatrix g_;
  RationalMatrix inverse_;
};

/// Γ(i,j,k), 0-based: ∇_{e_i} e_j = Σ_k Γ(i,j,k) e_k.
using Connection = DenseTensor<Scalar, 3>;

namespace detail {
inline void check_same_dimension(const LieAlgebra& L, const MetricOnAlgebra& g) {
  if (L.dimension() != g.dimension()) throw DimensionMismatch("metric and algebra dimensions differ");
}
}  // namespace detail

/// Levi-Civita connection of a left-invariant metric via the Koszul formula
/// 2g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y).
inline Connection levi_civita(const LieAlgebra& L, const MetricOnAlgebra& g) {
  detail::check_same_dimension(L, g);
  const int n = L.dimension();
  // g([e_a, e_b], e_c)
  DenseTensor<Scalar, 3> lowered(n);
  const auto& c = L.constants();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        Scalar s = 0;
        for (int m = 0; m < n; ++m)
          if (c(a, b, m) != 0) s += c(a, b, m) * g(m, d);
        lowered(a, b, d) = s;
      }
  Connection gamma(n);
  const auto& ginv = g.inverse_matrix();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vector koszul(static_cast<std::size_t>(n));
      for (int l = 0; l < n; ++l)
        koszul[static_cast<std::size_t>(l)] = (lowered(i, j, l) - lowered(j, l, i) + lowered(l, i, j)) / 2;
      Vector comp = ginv.apply(koszul);
      for (int k = 0; k < n; ++k) gamma(i, j, k) = comp[static_cast<std::size_t>(k)];
    }
  return gamma;
}

struct ExactCurvature {
  Connection connection;
  /// riemann(i,j,k,l): component l of R(e_i,e_j)e_k, 0-based.
  DenseTensor<Scalar, 4> riemann;
  /// ricci(j,k) = Σ_i riemann(i,j,k,i)
  RationalMatrix ricci;
  Scalar scalar_curvature;
  /// K(e_i, e_j) for 1-based pairs i < j.
  std::map<std::pair<int, int>, Scalar> basis_sectional;
};

/// Unnormalized sectional numerator g(R(x,y)y, x); its sign is the sign of K(x,y).
inline Scalar sectional_numerator(const ExactCurvature& curv, const MetricOnAlgebra& g, const Vector& x, const Vector& y) {
  const int n = g.dimension();
  Vector rxyy(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Scalar w = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(k)];
        if (w == 0) continue;
        for (int l = 0; l < n; ++l) rxyy[static_cast<std::size_t>(l)] += w * curv.riemann(i, j, k, l);
      }
  return g.inner(rxyy, x);
}

/// R(x,y)z = ∇_x∇_y z - ∇_y∇_x z - ∇_{[x,y]} z on left-invariant fields,
/// with Ricci, scalar curvature and basis-plane sectional curvatures.
inline ExactCurvature curvature_exact(const LieAlgebra& L, const MetricOnAlgebra& g) {
  detail::check_same_dimension(L, g);
  const int n = L.dimension();
  ExactCurvature out;
  out.connection = levi_civita(L, g);
  const auto& G = out.connection;
  const auto& c = L.constants();
  out.riemann = DenseTensor<Scalar, 4>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Scalar v = 0;
          for (int m = 0; m < n; ++m) {
            v += G(j, k, m) * G(i, m, l) - G(i, k, m) * G(j, m, l);
            if (c(i, j, m) != 0) v -= c(i, j, m) * G(m, k, l);
          }
          out.riemann(i, j, k, l) = v;
        }
  out.ricci = RationalMatrix(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) out.ricci(j, k) += out.riemann(i, j, k, i);
  const auto& ginv = g.inverse_matrix();
  out.scalar_curvature = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out.scalar_curvature += ginv(j, k) * out.ricci(j, k);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Vector x = basis_vector(n, i), y = basis_vector(n, j);
      Scalar area = g.inner(x, x) * g.inner(y, y) - g.inner(x, y) * g.inner(x, y);
      out.basis_sectional[{i, j}] = sectional_numerator(out, g, x, y) / area;
    }
  return out;
}

}  // namespace hkverify
