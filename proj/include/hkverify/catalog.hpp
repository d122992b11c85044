#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hkverify/kform.hpp"
#include "hkverify/lie_algebra.hpp"
#include "hkverify/quaternionic.hpp"

namespace hkverify {

enum class CaseId { Abelian, Case1, Case2, Case3, Case4 };

inline constexpr std::array<CaseId, 5> kAllCases{CaseId::Abelian, CaseId::Case1, CaseId::Case2, CaseId::Case3,
                                                  CaseId::Case4};
inline constexpr std::array<CaseId, 4> kNonAbelianCases{CaseId::Case1, CaseId::Case2, CaseId::Case3, CaseId::Case4};

inline std::string_view to_string(CaseId id) {
  switch (id) {
    case CaseId::Abelian: return "ABELIAN";
    case CaseId::Case1: return "CASE1";
    case CaseId::Case2: return "CASE2";
    case CaseId::Case3: return "CASE3";
    case CaseId::Case4: return "CASE4";
  }
  return "?";
}

/// Accepts "abelian", "0", "1".."4", "case1".."case4" (any case).
inline CaseId parse_case_id(std::string_view text) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.starts_with("case")) s = s.substr(4);
  if (s == "abelian" || s == "0") return CaseId::Abelian;
  if (s == "1") return CaseId::Case1;
  if (s == "2") return CaseId::Case2;
  if (s == "3") return CaseId::Case3;
  if (s == "4") return CaseId::Case4;
  throw std::invalid_argument("unknown catalog case '" + std::string(text) + "'");
}

/// A golden entry that contradicts the rest of its own table. The printed
/// value stays the golden one; `consistent` is what the other entries force.
struct Erratum {
  std::string quantity;  ///< e.g. "domega3"
  KForm printed;
  KForm consistent;
  std::string note;
};

struct CatalogCase {
  CaseId id;
  HyperHermitianData data;
  std::map<int, KForm> expected_de;      ///< d e^j, 1-based j
  std::array<KForm, 3> expected_domega;  ///< d ω_α
  KForm expected_theta;
  std::string description;
  std::vector<Erratum> errata;
};

/// J_α = g⁻¹ Ω_α, where Ω_α(i,j) = ω_α(e_i, e_j). Throws when the induced
/// triple breaks a quaternion identity.
inline HypercomplexStructure induce_structure(const std::array<KForm, 3>& omegas, const MetricOnAlgebra& g) {
  const auto& ginv = g.inverse_matrix();
  auto induce = [&](const KForm& w) {
    if (w.dimension() != g.dimension()) throw DimensionMismatch("ω and metric dimensions differ");
    return Endo(ginv * form_matrix(w));
  };
  HypercomplexStructure H{induce(omegas[0]), induce(omegas[1]), induce(omegas[2])};
  if (auto v = quaternion_check(H); !v) throw std::invalid_argument("induced structure violates " + v.failed_identity);
  return H;
}

namespace detail {

struct CaseTables {
  std::vector<BracketEntry> brackets;
  std::array<const char*, 3> omegas;
  std::array<const char*, 4> de;
  std::array<const char*, 3> domega;
  const char* theta;
  const char* description;
};

inline BracketEntry br(int i, int j, int k, Scalar c = 1) { return {i, j, {{k, c}}}; }

// Brackets and ω tables of the four non-abelian groups; every expected value
// below is a golden fixture, never computed from the library.
inline CaseTables tables(CaseId id) {
  const Scalar half(1, 2);
  switch (id) {
    case CaseId::Abelian:
      return {{},
              {"-e12 - e34", "-e13 + e24", "-e14 - e23"},
              {"0", "0", "0", "0"},
              {"0", "0", "0"},
              "0",
              "abelian: flat R^4"};
    case CaseId::Case1:
      return {{br(2, 3, 4), br(3, 4, 2), br(4, 2, 3)},
              {"-e12 - e34", "-e13 + e24", "-e14 - e23"},
              {"0", "-e34", "e24", "-e23"},
              {"-e134", "e124", "-e123"},
              "e1",
              "su(2) + R: product metric on R x S^3"};
    case CaseId::Case2:
      return {{br(1, 3, 1), br(2, 3, 2), br(1, 4, 2), br(2, 4, 1, -1)},
              {"e14 - e23", "-e12 + e34", "-e13 - e24"},
              {"-e13 + e24", "-e23 - e14", "0", "0"},
              {"-2 e134", "-2 e123", "2 e234"},
              "2 e3",
              "product metric on R x RH^3"};
    case CaseId::Case3:
      return {{br(1, 2, 2), br(1, 3, 3), br(1, 4, 4)},
              {"-e12 - e34", "-e13 + e24", "-e14 - e23"},
              {"0", "-e12", "-e13", "-e14"},
              {"2 e134", "-2 e124", "-2 e123"},
              "-2 e1",
              "real hyperbolic space RH^4"};
    case CaseId::Case4:
      return {{br(3, 4, 2, half), br(1, 2, 2), br(1, 3, 3, half), br(1, 4, 4, half)},
              {"-e12 + e34", "-e13 - e24", "e14 - e23"},
              {"0", "-e12 - 1/2 e34", "-1/2 e13", "-1/2 e14"},
              {"-3/2 e134", "3/2 e124", "3/2 e123"},
              "-3/2 e1",
              "non-symmetric, negative sectional curvature; conformal to a Gibbons-Hawking metric"};
  }
  throw std::invalid_argument("unknown catalog case");
}

}  // namespace detail

inline CatalogCase get_case(CaseId id) {
  constexpr int n = 4;
  const auto t = detail::tables(id);
  LieAlgebra L = LieAlgebra::from_brackets(n, t.brackets);
  MetricOnAlgebra g = MetricOnAlgebra::identity(n);
  std::array<KForm, 3> omegas{parse_kform(t.omegas[0], n, 2), parse_kform(t.omegas[1], n, 2),
                              parse_kform(t.omegas[2], n, 2)};
  HypercomplexStructure H = induce_structure(omegas, g);
  HyperHermitianData data{std::move(L), std::move(g), std::move(H), omegas};

  std::map<int, KForm> de;
  for (int j = 0; j < n; ++j) de.emplace(j + 1, parse_kform(t.de[static_cast<std::size_t>(j)], n, 2));
  std::array<KForm, 3> domega{parse_kform(t.domega[0], n, 3), parse_kform(t.domega[1], n, 3),
                              parse_kform(t.domega[2], n, 3)};
  std::vector<Erratum> errata;
  if (id == CaseId::Case3)
    errata.push_back({"domega3", domega[2], parse_kform("2 e123", n, 3),
                      "printed sign contradicts theta = -2 e1: theta ^ omega3 = 2 e123"});
  return {id,          std::move(data), std::move(de), std::move(domega), parse_kform(t.theta, n, 1),
          t.description, std::move(errata)};
}

}  // namespace hkverify
