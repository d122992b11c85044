#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hkverify/errors.hpp"
#include "hkverify/scalar.hpp"

namespace hkverify {

/// Strictly increasing basis indices, 1-based. Empty denotes grade 0.
using IndexTuple = std::vector<int>;

/// Sorts `indices` in place and returns the permutation sign, or 0 when an
/// index repeats.
inline int sort_with_sign(IndexTuple& indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return 0;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return sign;
}

/// Exact antisymmetric k-form on an n-dimensional space, stored canonically:
/// a sorted map from increasing index tuples to nonzero coefficients.
class KForm {
 public:
  using Terms = std::map<IndexTuple, Scalar>;

  /// The zero form of the given dimension and grade.
  KForm(int dimension, int grade) : dim_(dimension), grade_(grade) {
    if (dimension <= 0) throw DimensionMismatch("dimension must be positive");
    if (grade < 0) throw DimensionMismatch("grade must be non-negative");
  }

  /// Builds a form from (unsorted, possibly repeated) index lists; entries are
  /// sorted with sign, merged and zero-pruned.
  KForm(int dimension, int grade, const std::vector<std::pair<IndexTuple, Scalar>>& entries)
      : KForm(dimension, grade) {
    for (const auto& [idx, coeff] : entries) add_monomial(idx, coeff);
  }

  /// c · e^{i1} ∧ ... ∧ e^{ik}
  static KForm monomial(int dimension, IndexTuple indices, const Scalar& coeff = 1) {
    KForm f(dimension, static_cast<int>(indices.size()));
    f.add_monomial(std::move(indices), coeff);
    return f;
  }
  static KForm basis(int dimension, int index) { return monomial(dimension, {index}); }
  static KForm constant(int dimension, const Scalar& value) { return monomial(dimension, {}, value); }

  int dimension() const { return dim_; }
  int grade() const { return grade_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(IndexTuple indices) const {
    int sign = sort_with_sign(indices);
    if (sign == 0) return 0;
    auto it = terms_.find(indices);
    return it == terms_.end() ? Scalar(0) : sign * it->second;
  }

  KForm& operator+=(const KForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) accumulate(idx, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) accumulate(idx, -c);
    return *this;
  }
  KForm& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [idx, c] : terms_) c *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) { return a *= Scalar(-1); }
  friend KForm operator*(const Scalar& s, KForm a) { return a *= s; }
  friend bool operator==(const KForm&, const KForm&) = default;

 private:
  void check_compatible(const KForm& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("forms live in different dimensions");
    if (grade_ != o.grade_) throw DimensionMismatch("forms have different grades");
  }

  void add_monomial(IndexTuple idx, const Scalar& coeff) {
    if (static_cast<int>(idx.size()) != grade_) throw DimensionMismatch("monomial length does not match grade");
    for (int i : idx)
      if (i < 1 || i > dim_) throw DimensionMismatch("basis index " + std::to_string(i) + " outside 1.." + std::to_string(dim_));
    int sign = sort_with_sign(idx);
    if (sign == 0) return;
    accumulate(idx, sign * coeff);
  }

  void accumulate(const IndexTuple& idx, const Scalar& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  int dim_;
  int grade_;
  Terms terms_;
};

inline KForm wedge(const KForm& a, const KForm& b) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("wedge of forms from incompatible ambient spaces");
  const int grade = a.grade() + b.grade();
  KForm out(a.dimension(), grade);
  if (grade > a.dimension()) return out;
  std::vector<std::pair<IndexTuple, Scalar>> entries;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      IndexTuple idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      entries.emplace_back(std::move(idx), ca * cb);
    }
  }
  return KForm(a.dimension(), grade, entries);
}

inline KForm linear_combine(std::span<const Scalar> coeffs, std::span<const KForm> forms) {
  if (coeffs.size() != forms.size()) throw DimensionMismatch("coefficient and form counts differ");
  if (forms.empty()) throw DimensionMismatch("linear_combine needs at least one form");
  KForm out(forms.front().dimension(), forms.front().grade());
  for (std::size_t i = 0; i < forms.size(); ++i) out += coeffs[i] * forms[i];
  return out;
}

/// Evaluates f on basis vectors e_{args[0]}, ..., e_{args[k-1]} (1-based),
/// with e^{i1...ik}(e_{i1}, ..., e_{ik}) = 1.
inline Scalar contract_basis(const KForm& f, std::span<const int> args) {
  if (static_cast<int>(args.size()) != f.grade())
    throw DimensionMismatch("contract_basis expects " + std::to_string(f.grade()) + " arguments");
  for (int i : args)
    if (i < 1 || i > f.dimension()) throw DimensionMismatch("basis index out of range");
  return f.coefficient(IndexTuple(args.begin(), args.end()));
}

inline Scalar contract_basis(const KForm& f, std::initializer_list<int> args) {
  return contract_basis(f, std::span<const int>(args.begin(), args.size()));
}

// --- e-notation -----------------------------------------------------------
//
// "-e12 - 1/2 e34"; grade-0 terms are bare rationals; "0" is the zero form.
// Dimensions above 9 write tuples as e{1,10}.

inline std::string format_indices(const IndexTuple& idx, int dimension) {
  std::string s = "e";
  if (dimension <= 9) {
    for (int i : idx) s += std::to_string(i);
    return s;
  }
  s += "{";
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + std::to_string(idx[k]);
  return s + "}";
}

inline std::string to_string(const KForm& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : f.terms()) {
    const bool negative = c < 0;
    const Scalar mag = negative ? Scalar(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (idx.empty()) {
      out += to_string(mag);
      continue;
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += format_indices(idx, f.dimension());
  }
  return out;
}

/// Inverse of to_string. Whitespace-insensitive; indices may be unsorted
/// ("e21" is -e12). `grade` is required only to type the zero form.
inline KForm parse_kform(std::string_view text, int dimension, std::optional<int> grade = std::nullopt) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("", "empty form");

  std::vector<std::pair<IndexTuple, Scalar>> entries;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("", why + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (!entries.empty()) {
      fail("expected '+' or '-'");
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    Scalar coeff = 1;
    bool has_coeff = pos > start;
    if (has_coeff) coeff = parse_scalar(std::string_view(s).substr(start, pos - start));
    if (pos < s.size() && s[pos] == '*') ++pos;
    IndexTuple idx;
    if (pos < s.size() && s[pos] == 'e') {
      ++pos;
      if (pos < s.size() && s[pos] == '{') {
        ++pos;
        std::size_t close = s.find('}', pos);
        if (close == std::string::npos) fail("unterminated '{'");
        std::string body = s.substr(pos, close - pos);
        std::size_t b = 0;
        while (b <= body.size()) {
          std::size_t comma = body.find(',', b);
          if (comma == std::string::npos) comma = body.size();
          std::string tok = body.substr(b, comma - b);
          if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) fail("bad index list");
          idx.push_back(std::stoi(tok));
          b = comma + 1;
        }
        pos = close + 1;
      } else {
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) idx.push_back(s[pos++] - '0');
        if (idx.empty()) fail("'e' without indices");
      }
    } else if (!has_coeff) {
      fail("expected a coefficient or basis monomial");
    }
    entries.emplace_back(std::move(idx), sign * coeff);
  }

  // A lone "0" is the zero form of the requested grade.
  std::optional<int> seen;
  for (const auto& [idx, c] : entries) {
    if (idx.empty() && c == 0) continue;
    int g = static_cast<int>(idx.size());
    if (seen && *seen != g) throw ParseError("", "mixed grades in '" + std::string(text) + "'");
    seen = g;
  }
  if (seen && grade && *seen != *grade)
    throw ParseError("", "expected a " + std::to_string(*grade) + "-form, got '" + std::string(text) + "'");
  const int k = seen ? *seen : grade.value_or(0);
  std::erase_if(entries, [](const auto& e) { return e.first.empty() && e.second == 0; });
  try {
    return KForm(dimension, k, entries);
  } catch (const DimensionMismatch& e) {
    throw ParseError("", std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

}  // namespace hkverify
