#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hkverify/coordgeom/model_space.hpp"
#include "hkverify/kform.hpp"

namespace hkverify::coord {

/// Antisymmetric k-form on R^4 at a point, stored as the full 4^k array of
/// components ω(∂_{a1}, ..., ∂_{ak}) with 0-based coordinate indices.
class NumericForm {
 public:
  static constexpr int kDim = 4;

  explicit NumericForm(int grade) : grade_(grade), data_(size_for(grade), 0.0) {
    if (grade < 0 || grade > kDim) throw DimensionMismatch("numeric form grade out of range");
  }

  int grade() const { return grade_; }

  double operator()(std::span<const int> idx) const { return data_[offset(idx)]; }
  double at(std::initializer_list<int> idx) const { return (*this)(std::span<const int>(idx.begin(), idx.size())); }

  /// Sets the component on an increasing tuple and every permutation of it.
  void set(std::span<const int> increasing, double value) {
    std::vector<int> perm(increasing.begin(), increasing.end());
    std::sort(perm.begin(), perm.end());
    do {
      std::vector<int> tmp = perm;
      IndexTuple as_tuple(tmp.begin(), tmp.end());
      const int sign = sort_with_sign(as_tuple);
      data_[offset(perm)] = sign * value;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  void set(std::initializer_list<int> increasing, double value) {
    set(std::span<const int>(increasing.begin(), increasing.size()), value);
  }

  double max_abs() const {
    double m = 0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Largest deviation from antisymmetry under a single transposition.
  double antisymmetry_defect() const {
    double worst = 0;
    for_each_tuple([&](const std::vector<int>& idx) {
      for (std::size_t a = 0; a + 1 < idx.size(); ++a) {
        std::vector<int> sw = idx;
        std::swap(sw[a], sw[a + 1]);
        worst = std::max(worst, std::abs(data_[offset(idx)] + data_[offset(sw)]));
      }
    });
    return worst;
  }

  NumericForm& operator+=(const NumericForm& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  NumericForm& operator-=(const NumericForm& o) {
    check(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  NumericForm& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend NumericForm operator-(NumericForm a, const NumericForm& b) { return a -= b; }
  friend NumericForm operator+(NumericForm a, const NumericForm& b) { return a += b; }
  friend NumericForm operator*(double s, NumericForm a) { return a *= s; }

  /// Increasing index tuples of length `grade`.
  static std::vector<std::vector<int>> increasing_tuples(int grade) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == grade) {
        out.push_back(cur);
        return;
      }
      for (int a = start; a < kDim; ++a) {
        cur.push_back(a);
        rec(a + 1);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }

 private:
  static std::size_t size_for(int grade) {
    std::size_t s = 1;
    for (int i = 0; i < grade; ++i) s *= kDim;
    return s;
  }
  std::size_t offset(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != grade_) throw DimensionMismatch("wrong number of form arguments");
    std::size_t o = 0;
    for (int i : idx) {
      if (i < 0 || i >= kDim) throw DimensionMismatch("coordinate index out of range");
      o = o * kDim + static_cast<std::size_t>(i);
    }
    return o;
  }
  template <class F>
  void for_each_tuple(F&& f) const {
    std::vector<int> idx(static_cast<std::size_t>(grade_), 0);
    for (std::size_t n = 0; n < data_.size(); ++n) {
      std::size_t r = n;
      for (int k = grade_ - 1; k >= 0; --k) {
        idx[static_cast<std::size_t>(k)] = static_cast<int>(r % kDim);
        r /= kDim;
      }
      f(idx);
    }
  }
  void check(const NumericForm& o) const {
    if (o.grade_ != grade_) throw DimensionMismatch("numeric forms of different grade");
  }

  int grade_;
  std::vector<double> data_;
};

/// Expresses an algebra form Σ c e^{i1..ik} in coordinates through a coframe
/// matrix (row j = e^{j+1}): component on ∂_{a1..ak} is Σ c det(E[i_r][a_s]).
inline NumericForm pullback(const KForm& f, const Mat4& coframe) {
  if (f.dimension() != NumericForm::kDim) throw DimensionMismatch("pullback needs a form on a 4-dimensional algebra");
  NumericForm out(f.grade());
  const int k = f.grade();
  for (const auto& a : NumericForm::increasing_tuples(k)) {
    double v = 0;
    for (const auto& [idx, c] : f.terms()) {
      Eigen::MatrixXd sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) sub(r, s) = coframe(idx[static_cast<std::size_t>(r)] - 1, a[static_cast<std::size_t>(s)]);
      v += to_double(c) * (k == 0 ? 1.0 : sub.determinant());
    }
    out.set(a, v);
  }
  return out;
}

using FormField = std::function<NumericForm(const Point&)>;
using DomainPredicate = std::function<bool(const Point&)>;

/// Stencil guard: every p ± reach·e_a must be a finite point inside the domain,
/// and the step must survive addition at p.
inline void require_stencil(const Point& p, double step, int reach, const DomainPredicate& domain) {
  if (!(step > 0)) throw DomainError("finite-difference step must be positive");
  for (int a = 0; a < 4; ++a) {
    if (p[static_cast<std::size_t>(a)] + step == p[static_cast<std::size_t>(a)])
      throw DomainError("finite-difference step underflows at (" + to_string(p) + ")");
    for (int s : {-reach, reach}) {
      Point q = p.shifted(a, s * step);
      if (domain && !domain(q)) throw DomainError("stencil at (" + to_string(p) + ") leaves the chart domain");
    }
  }
}

/// (dσ)_{i0..ik} = Σ_m (-1)^m ∂_{i_m} σ_{i0..î_m..ik}, partials by central differences.
inline NumericForm fd_exterior_derivative(const FormField& field, const Point& p, double step,
                                          const DomainPredicate& domain = {}) {
  require_stencil(p, step, 1, domain);
  std::array<std::optional<NumericForm>, 4> partial;
  int k = -1;
  for (int a = 0; a < 4; ++a) {
    NumericForm plus = field(p.shifted(a, step));
    NumericForm minus = field(p.shifted(a, -step));
    k = plus.grade();
    partial[static_cast<std::size_t>(a)] = (1.0 / (2 * step)) * (plus - minus);
  }
  NumericForm out(k + 1);
  for (const auto& idx : NumericForm::increasing_tuples(k + 1)) {
    double v = 0;
    for (int m = 0; m <= k; ++m) {
      std::vector<int> rest;
      for (int r = 0; r <= k; ++r)
        if (r != m) rest.push_back(idx[static_cast<std::size_t>(r)]);
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      v += sign * (*partial[static_cast<std::size_t>(idx[static_cast<std::size_t>(m)])])(rest);
    }
    out.set(idx, v);
  }
  return out;
}

}  // namespace hkverify::coord
