#pragma once

#include <json.hpp>

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "hkverify/catalog.hpp"
#include "hkverify/errors.hpp"
#include "hkverify/kform.hpp"
#include "hkverify/lie_algebra.hpp"
#include "hkverify/quaternionic.hpp"

namespace hkverify::io {

using nlohmann::json;

/// Parsed form of the shared input document:
///   {"dim": 4,
///    "brackets": [{"i": 2, "j": 3, "coeffs": {"4": "1"}}, ...],
///    "metric": [[...]],                  (optional, identity by default)
///    "J1": [[...]], "J2": [[...]], "J3": [[...]],
///    "omegas": ["-e12 - e34", ...]}      (optional override of the ω's)
/// Matrices are row-major, J e_j = Σ_i J[i][j] e_i; entries are "p/q" strings
/// or integers. Unknown keys are ignored.
struct VerifyInput {
  std::string description;
  LieAlgebra algebra{1};
  RationalMatrix metric;
  std::array<RationalMatrix, 3> J;
  std::optional<std::array<KForm, 3>> omega_override;
};

inline Scalar scalar_from_json(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_scalar(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected a rational string \"p/q\" or an integer");
}

inline json scalar_to_json(const Scalar& s) { return to_string(s); }

inline RationalMatrix matrix_from_json(const json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) throw ParseError(where, "expected " + std::to_string(n) + " rows");
  RationalMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = v[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError(rw, "expected " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c)
      m(r, c) = scalar_from_json(row[static_cast<std::size_t>(c)], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline json matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline json brackets_to_json(const LieAlgebra& L) {
  json out = json::array();
  for (const auto& e : L.bracket_table()) {
    json coeffs = json::object();
    for (const auto& [k, v] : e.coeffs) coeffs[std::to_string(k)] = scalar_to_json(v);
    out.push_back({{"i", e.i}, {"j", e.j}, {"coeffs", coeffs}});
  }
  return out;
}

inline LieAlgebra algebra_from_json(const json& doc) {
  if (!doc.contains("dim")) throw ParseError("dim", "missing");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<int>() <= 0) throw ParseError("dim", "expected a positive integer");
  const int n = doc["dim"].get<int>();
  std::vector<BracketEntry> table;
  if (doc.contains("brackets")) {
    const auto& br = doc["brackets"];
    if (!br.is_array()) throw ParseError("brackets", "expected an array");
    for (std::size_t e = 0; e < br.size(); ++e) {
      const std::string where = "brackets[" + std::to_string(e) + "]";
      const auto& item = br[e];
      if (!item.is_object()) throw ParseError(where, "expected an object");
      for (const char* key : {"i", "j"})
        if (!item.contains(key) || !item[key].is_number_integer()) throw ParseError(where + "." + key, "expected an integer");
      if (!item.contains("coeffs") || !item["coeffs"].is_object()) throw ParseError(where + ".coeffs", "expected an object");
      BracketEntry entry{item["i"].get<int>(), item["j"].get<int>(), {}};
      for (const auto& [k, v] : item["coeffs"].items()) {
        const std::string cw = where + ".coeffs." + k;
        int idx = 0;
        try {
          std::size_t used = 0;
          idx = std::stoi(k, &used);
          if (used != k.size()) throw std::invalid_argument(k);
        } catch (const std::exception&) {
          throw ParseError(cw, "basis index must be an integer");
        }
        entry.coeffs[idx] += scalar_from_json(v, cw);
      }
      table.push_back(std::move(entry));
    }
  }
  try {
    return LieAlgebra::from_brackets(n, table);
  } catch (const std::invalid_argument& e) {
    throw ParseError("brackets", e.what());
  }
}

inline VerifyInput input_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("", "top-level value must be an object");
  VerifyInput in;
  in.algebra = algebra_from_json(doc);
  const int n = in.algebra.dimension();
  in.description = doc.value("description", std::string("user input"));
  in.metric = doc.contains("metric") ? matrix_from_json(doc["metric"], n, "metric") : RationalMatrix::identity(n);
  for (int a = 0; a < 3; ++a) {
    const std::string key = "J" + std::to_string(a + 1);
    if (!doc.contains(key)) throw ParseError(key, "missing");
    in.J[static_cast<std::size_t>(a)] = matrix_from_json(doc[key], n, key);
  }
  if (doc.contains("omegas")) {
    const auto& om = doc["omegas"];
    if (!om.is_array() || om.size() != 3) throw ParseError("omegas", "expected three 2-forms");
    std::array<KForm, 3> forms{KForm(n, 2), KForm(n, 2), KForm(n, 2)};
    for (std::size_t a = 0; a < 3; ++a) {
      const std::string where = "omegas[" + std::to_string(a) + "]";
      if (!om[a].is_string()) throw ParseError(where, "expected a form in e-notation");
      try {
        forms[a] = parse_kform(om[a].get<std::string>(), n, 2);
      } catch (const ParseError& e) {
        throw ParseError(where, e.what());
      }
    }
    in.omega_override = forms;
  }
  return in;
}

/// Reads and parses an input file; syntax errors carry line/column.
inline VerifyInput read_input_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  json doc;
  try {
    doc = json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  try {
    return input_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path, e.what());
  }
}

/// Catalog fixture in the shared input schema, plus its golden tables under "expected".
inline json catalog_to_json(const CatalogCase& cc) {
  const auto& d = cc.data;
  json doc;
  doc["case"] = std::string(to_string(cc.id));
  doc["description"] = cc.description;
  doc["dim"] = d.algebra.dimension();
  doc["brackets"] = brackets_to_json(d.algebra);
  doc["metric"] = matrix_to_json(d.metric.matrix());
  doc["J1"] = matrix_to_json(d.structure.J1.matrix());
  doc["J2"] = matrix_to_json(d.structure.J2.matrix());
  doc["J3"] = matrix_to_json(d.structure.J3.matrix());
  json de = json::object();
  for (const auto& [j, f] : cc.expected_de) de["e" + std::to_string(j)] = to_string(f);
  doc["expected"] = {
      {"omegas", {to_string(d.omegas[0]), to_string(d.omegas[1]), to_string(d.omegas[2])}},
      {"de", de},
      {"domega", {to_string(cc.expected_domega[0]), to_string(cc.expected_domega[1]), to_string(cc.expected_domega[2])}},
      {"theta", to_string(cc.expected_theta)},
  };
  if (!cc.errata.empty()) {
    json errata = json::array();
    for (const auto& e : cc.errata)
      errata.push_back({{"quantity", e.quantity},
                        {"printed", to_string(e.printed)},
                        {"consistent", to_string(e.consistent)},
                        {"note", e.note}});
    doc["expected"]["errata"] = errata;
  }
  return doc;
}

}  // namespace hkverify::io
