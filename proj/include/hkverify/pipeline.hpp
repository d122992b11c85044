#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hkverify/catalog.hpp"
#include "hkverify/coordgeom/checks.hpp"
#include "hkverify/io.hpp"

namespace hkverify::pipeline {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2 };

struct Options {
  double tol = 1e-6;              ///< first-derivative coordinate checks
  double step = coord::kFirstDerivativeStep;
  double curvature_tol = 1e-4;    ///< second-derivative quantities
  double curvature_step = coord::kCurvatureStep;
  std::uint64_t seed = coord::kDefaultSeed;
  std::size_t structure_points = 100;
  std::size_t closedness_points = 50;
  std::size_t invariance_pairs = 20;
  std::size_t curvature_points = 10;
  bool coordinates = true;
};

struct Stage {
  std::string name;
  bool passed = true;
  json detail = json::object();
};

struct VerificationReport {
  std::string input;
  std::vector<Stage> stages;
  std::optional<std::string> classification;
  std::optional<json> coordinate;
  int exit_status = kOk;
};

inline json to_json(const VerificationReport& r) {
  json stages = json::array();
  for (const auto& s : r.stages) stages.push_back({{"name", s.name}, {"passed", s.passed}, {"detail", s.detail}});
  json out = {{"input", r.input}, {"stages", stages}, {"exit_status", r.exit_status}};
  out["classification"] = r.classification ? json(*r.classification) : json(nullptr);
  if (r.coordinate) out["coordinate"] = *r.coordinate;
  return out;
}

namespace detail {

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

inline bool all_passed(const json& checks) {
  for (const auto& [k, v] : checks.items())
    if (v.contains("passed") && !v["passed"].get<bool>()) return false;
  return true;
}

inline json coordinate_stage(const CatalogCase& cc, const Options& opt) {
  using namespace coord;
  const ModelSpace m = model_space(cc.id);
  const auto& d = cc.data;
  json checks = json::object();

  const auto pts = sample_points(m, opt.structure_points, opt.seed);
  const auto se = structure_equation_check(m, d.algebra, pts, opt.tol, opt.step);
  checks["structure_equations"] = {{"passed", se.passed}, {"points", pts.size()}, {"tol", opt.tol},
                                   {"max_deviation", se.max_deviation}};

  const auto pair_pts = sample_points(m, 2 * opt.invariance_pairs, opt.seed + 1);
  double li_worst = 0;
  bool li_ok = true;
  for (std::size_t k = 0; k < opt.invariance_pairs; ++k) {
    const auto v = left_invariance_check(m, pair_pts[2 * k], pair_pts[2 * k + 1], opt.tol, opt.step);
    li_ok = li_ok && v.passed;
    li_worst = std::max(li_worst, v.max_deviation);
  }
  checks["left_invariance"] = {{"passed", li_ok}, {"pairs", opt.invariance_pairs}, {"max_deviation", li_worst}};

  const std::vector<Point> hk_pts(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(std::min(opt.closedness_points, pts.size())));
  const auto hk = hyperkahler_closedness_check(m, d, hk_pts, opt.tol, opt.step, true);
  checks["hyperkahler_closedness"] = {{"passed", hk.passed}, {"points", hk_pts.size()}, {"max_component", hk.max_component}};
  const auto control = hyperkahler_closedness_check(m, d, hk_pts, opt.tol, opt.step, false);
  const bool expect_closed = d.algebra.is_abelian();
  checks["unrescaled_control"] = {{"passed", control.passed == expect_closed},
                                  {"closed", control.passed},
                                  {"expected_closed", expect_closed},
                                  {"max_component", control.max_component}};

  const auto cpts = sample_points(m, opt.curvature_points, opt.seed + 2);
  double ricci_max = 0, riemann_max = 0, riemann_min = std::numeric_limits<double>::infinity();
  double sec_min = std::numeric_limits<double>::infinity(), sec_max = -std::numeric_limits<double>::infinity();
  double xval = 0, closed_ricci = 0;
  for (const auto& p : cpts) {
    const auto resc = numeric_curvature(metric_field(m, MetricKind::HyperKahlerRescaled), p, opt.curvature_step, m.in_domain);
    ricci_max = std::max(ricci_max, resc.max_abs_ricci);
    riemann_max = std::max(riemann_max, resc.max_abs_riemann);
    riemann_min = std::min(riemann_min, resc.max_abs_riemann);
    const auto hh = numeric_curvature(metric_field(m, MetricKind::HyperHermitian), p, opt.curvature_step, m.in_domain);
    for (const auto& s : hh.sectional) {
      sec_min = std::min(sec_min, s.curvature);
      sec_max = std::max(sec_max, s.curvature);
    }
    xval = std::max(xval, cross_validate_curvature(m, d.algebra, d.metric, p, opt.curvature_tol, opt.curvature_step).max_deviation);
    const auto closed = numeric_curvature(metric_field(m, MetricKind::HyperKahlerClosedForm), p, opt.curvature_step, m.in_domain);
    closed_ricci = std::max(closed_ricci, closed.max_abs_ricci);
  }
  const bool curved = cc.id == CaseId::Case4;
  checks["ricci_flat"] = {{"passed", ricci_max < opt.curvature_tol}, {"metric", "HYPERKAHLER_RESCALED"},
                          {"ricci_max", ricci_max}, {"points", cpts.size()}};
  checks["flatness_split"] = {{"passed", curved ? riemann_min > 1e-2 : riemann_max < opt.curvature_tol},
                              {"expect_flat", !curved},
                              {"riemann_max", riemann_max},
                              {"riemann_min", riemann_min}};
  checks["cross_validation"] = {{"passed", xval < opt.curvature_tol}, {"max_deviation", xval}};
  json out = {{"checks", checks},
              {"hyperhermitian_sectional", {{"min", sec_min}, {"max", sec_max}}}};

  const auto cf = compare_closed_form(m, pts);
  json entries = json::array();
  static const char* names[4] = {"x", "y", "z", "t"};
  for (const auto& e : cf.entries)
    entries.push_back({{"entry", std::string(names[e.row]) + names[e.col]}, {"min", e.min}, {"max", e.max}});
  std::string note;
  if (!cf.constant)
    note = "e^-f g and the closed form differ by a non-constant ratio; e^-f g is forced by the Lee form and is the one verified";
  else if (!cf.unit)
    note = "closed form equals e^-f g up to a constant factor (homothety)";
  else
    note = "closed form equals e^-f g";
  out["closed_form_comparison"] = {{"substitution", m.substitution},
                                   {"ratio_min", cf.ratio_min},
                                   {"ratio_max", cf.ratio_max},
                                   {"constant", cf.constant},
                                   {"unit", cf.unit},
                                   {"pattern_mismatch", cf.pattern_mismatch},
                                   {"flagged", cf.flagged},
                                   {"entries", entries},
                                   {"closed_form_ricci_max", closed_ricci},
                                   {"note", note}};
  out["passed"] = all_passed(checks);
  return out;
}

}  // namespace detail

struct CatalogTarget {
  CaseId id;
};
struct FileTarget {
  std::string path;
};
using Target = std::variant<CatalogTarget, FileTarget>;

/// validate → quaternion → integrability → hermitian → dω tables → Lee form
/// → classification → coordinate checks (catalog targets only). Jacobi,
/// quaternion and hermitian failures stop the run; an integrability failure
/// is recorded, the Lee form is still solved, and classification is withheld.
/// Throws ParseError / std::invalid_argument on unusable input.
inline VerificationReport run_verify(const Target& target, const Options& opt = {}) {
  VerificationReport rep;
  std::optional<CatalogCase> cc;
  io::VerifyInput in;
  if (const auto* c = std::get_if<CatalogTarget>(&target)) {
    cc = get_case(c->id);
    rep.input = "catalog " + std::string(to_string(c->id)) + ": " + cc->description;
    in.algebra = cc->data.algebra;
    in.metric = cc->data.metric.matrix();
    in.J = {cc->data.structure.J1.matrix(), cc->data.structure.J2.matrix(), cc->data.structure.J3.matrix()};
  } else {
    const auto& path = std::get<FileTarget>(target).path;
    in = io::read_input_file(path);
    rep.input = path + ": " + in.description;
  }
  const int n = in.algebra.dimension();
  auto fail = [&rep] {
    rep.exit_status = kCheckFailed;
    return rep;
  };

  const auto jac = jacobi_check(in.algebra);
  Stage js{"jacobi", jac.holds};
  js.detail["dd_vanishes"] = jac.dd_vanishes;
  if (jac.witness) {
    js.detail["witness"] = *jac.witness;
    js.detail["cyclic_sum"] = detail::vector_to_json(jac.cyclic_sum);
  }
  rep.stages.push_back(js);
  if (!jac.holds) return fail();

  std::optional<MetricOnAlgebra> g;
  try {
    g.emplace(in.metric);
  } catch (const std::invalid_argument& e) {
    throw ParseError("metric", e.what());
  }
  HypercomplexStructure H{Endo(in.J[0]), Endo(in.J[1]), Endo(in.J[2])};

  const auto q = quaternion_check(H);
  Stage qs{"quaternion", q.holds};
  if (!q.holds) qs.detail["failed_identity"] = q.failed_identity;
  rep.stages.push_back(qs);
  if (!q.holds) return fail();

  const auto integ = integrability_check(in.algebra, H);
  Stage is{"integrability", integ.holds};
  if (!integ.holds) {
    is.detail["alpha"] = integ.alpha;
    is.detail["pair"] = {integ.pair->first, integ.pair->second};
    is.detail["value"] = detail::vector_to_json(integ.value);
  }
  rep.stages.push_back(is);

  const auto herm = hermitian_check(*g, H);
  Stage hs{"hermitian", herm.holds};
  if (!herm.holds) hs.detail["failed_alpha"] = herm.failed_alpha;
  rep.stages.push_back(hs);
  if (!herm.holds) return fail();

  HyperHermitianData data = make_hyper_hermitian(in.algebra, *g, H);
  if (in.omega_override) data.omegas = *in.omega_override;

  Stage tables{"structure_tables", true};
  json de = json::object();
  for (int j = 1; j <= n; ++j) de["e" + std::to_string(j)] = to_string(ce_differential(data.algebra, KForm::basis(n, j)));
  json omegas = json::array(), domega = json::array();
  for (const auto& w : data.omegas) {
    omegas.push_back(to_string(w));
    domega.push_back(to_string(ce_differential(data.algebra, w)));
  }
  tables.detail = {{"de", de}, {"omegas", omegas}, {"domega", domega}, {"omegas_overridden", in.omega_override.has_value()}};
  if (cc) {
    // A mismatch listed as an erratum is reported, not failed.
    bool match = true;
    json errata = json::array();
    auto compare = [&](const std::string& quantity, const KForm& computed, const KForm& expected) {
      if (computed == expected) return;
      const auto e = std::find_if(cc->errata.begin(), cc->errata.end(), [&](const Erratum& x) {
        return x.quantity == quantity && x.printed == expected && x.consistent == computed;
      });
      if (e == cc->errata.end()) {
        match = false;
        return;
      }
      errata.push_back({{"quantity", quantity}, {"golden", to_string(expected)}, {"computed", to_string(computed)}, {"note", e->note}});
    };
    for (const auto& [j, f] : cc->expected_de) compare("de" + std::to_string(j), ce_differential(data.algebra, KForm::basis(n, j)), f);
    for (std::size_t a = 0; a < 3; ++a)
      compare("domega" + std::to_string(a + 1), ce_differential(data.algebra, data.omegas[a]), cc->expected_domega[a]);
    tables.passed = match;
    tables.detail["matches_catalog"] = match;
    tables.detail["errata"] = errata;
  }
  rep.stages.push_back(tables);

  const LeeFormResult lee = lee_form(data);
  Stage ls{"lee_form", lee.consistent};
  json residuals = json::array();
  for (const auto& r : lee.residuals) residuals.push_back(to_string(r));
  ls.detail = {{"theta", lee.consistent ? json(to_string(lee.theta)) : json(nullptr)},
               {"consistent", lee.consistent},
               {"rank", lee.rank},
               {"residuals", residuals}};
  if (cc) {
    ls.detail["matches_catalog"] = lee.theta == cc->expected_theta;
    ls.passed = ls.passed && lee.theta == cc->expected_theta;
  }
  rep.stages.push_back(ls);

  if (lee.consistent) {
    Stage cs{"closedness", lee.closed};
    cs.detail["dtheta"] = to_string(ce_differential(data.algebra, lee.theta));
    rep.stages.push_back(cs);
  }

  const bool algebraic_ok = std::all_of(rep.stages.begin(), rep.stages.end(), [](const Stage& s) {
    return s.passed || s.name == "lee_form" || s.name == "closedness";
  });
  if (algebraic_ok) {
    const auto verdict = conformal_class_verdict(lee);
    rep.classification = std::string(to_string(verdict.classification));
    Stage cls{"classification",
              verdict.classification == ConformalClass::HyperKahler ||
                  verdict.classification == ConformalClass::ConformallyHyperKahler};
    cls.detail = {{"classification", *rep.classification}, {"assumes_simply_connected", verdict.assumes_simply_connected}};
    rep.stages.push_back(cls);
  }

  if (cc && opt.coordinates) rep.coordinate = detail::coordinate_stage(*cc, opt);

  bool ok = std::all_of(rep.stages.begin(), rep.stages.end(), [](const Stage& s) { return s.passed; });
  if (rep.coordinate) ok = ok && (*rep.coordinate)["passed"].get<bool>();
  rep.exit_status = ok ? kOk : kCheckFailed;
  return rep;
}

inline std::string render_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "input: " << r.input << "\n";
  for (const auto& s : r.stages) {
    os << "  [" << (s.passed ? "ok" : "FAIL") << "] " << s.name;
    if (s.name == "structure_tables") {
      os << "\n";
      for (const auto& [k, v] : s.detail["de"].items()) os << "        d" << k << " = " << v.get<std::string>() << "\n";
      for (std::size_t a = 0; a < s.detail["domega"].size(); ++a)
        os << "        dω" << a + 1 << " = " << s.detail["domega"][a].get<std::string>() << "\n";
      if (s.detail.contains("errata"))
        for (const auto& e : s.detail["errata"])
          os << "        [erratum] " << e["quantity"].get<std::string>() << ": golden " << e["golden"].get<std::string>()
             << ", computed " << e["computed"].get<std::string>() << " (" << e["note"].get<std::string>() << ")\n";
      continue;
    }
    if (s.name == "lee_form") {
      if (s.detail["theta"].is_null())
        os << ": no θ solves dω_α = θ∧ω_α (rank " << s.detail["rank"] << ")";
      else
        os << ": θ = " << s.detail["theta"].get<std::string>() << " (rank " << s.detail["rank"] << ")";
    }
    if (s.name == "classification") os << ": " << s.detail["classification"].get<std::string>();
    if (s.name == "quaternion" && !s.passed) os << ": violates " << s.detail["failed_identity"].get<std::string>();
    os << "\n";
  }
  if (r.coordinate) {
    const auto& c = *r.coordinate;
    os << "  coordinate checks:\n";
    for (const auto& [k, v] : c["checks"].items()) os << "    [" << (v["passed"].get<bool>() ? "ok" : "FAIL") << "] " << k << "\n";
    const auto& cf = c["closed_form_comparison"];
    os << "    closed form ratio " << cf["ratio_min"].get<double>() << " .. " << cf["ratio_max"].get<double>()
       << (cf["flagged"].get<bool>() ? "  [flagged] " : "  ") << cf["note"].get<std::string>() << "\n";
  }
  os << "exit status: " << r.exit_status << "\n";
  return os.str();
}

struct CurvatureRequest {
  CaseId id = CaseId::Case4;
  coord::MetricKind metric = coord::MetricKind::HyperKahlerRescaled;
  std::vector<coord::Point> points;  ///< explicit points; when empty, `samples` seeded points
  std::size_t samples = 10;
  std::uint64_t seed = coord::kDefaultSeed;
  double step = coord::kCurvatureStep;
  double tol = 1e-4;
};

struct CurvatureRun {
  json report;
  int exit_status = kOk;
};

inline coord::MetricKind parse_metric_kind(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::replace(s.begin(), s.end(), '_', '-');
  if (s == "hyperhermitian" || s == "hyper-hermitian") return coord::MetricKind::HyperHermitian;
  if (s == "rescaled" || s == "hyperkahler-rescaled") return coord::MetricKind::HyperKahlerRescaled;
  if (s == "closed-form" || s == "hyperkahler-closed-form") return coord::MetricKind::HyperKahlerClosedForm;
  throw std::invalid_argument("unknown metric selector '" + s + "'");
}

/// Per-point curvature reports plus summary maxima. Points outside the chart
/// are reported individually and make the exit status kInputError.
inline CurvatureRun run_curvature(const CurvatureRequest& req) {
  using namespace coord;
  const ModelSpace m = model_space(req.id);
  const auto points = req.points.empty() ? sample_points(m, req.samples, req.seed) : req.points;
  const MetricField field = metric_field(m, req.metric);
  json per_point = json::array();
  double ricci_max = 0, riemann_max = 0;
  double sec_min = std::numeric_limits<double>::infinity(), sec_max = -std::numeric_limits<double>::infinity();
  std::size_t rejected = 0;
  for (const auto& p : points) {
    json entry = {{"case", std::string(to_string(req.id))}, {"metric", std::string(to_string(req.metric))}, {"point", p.c}};
    try {
      require_domain(m, p);
      const auto rep = numeric_curvature(field, p, req.step, m.in_domain);
      json sectional = json::array();
      bool negative = true;
      for (const auto& s : rep.sectional) {
        sectional.push_back({{"plane", s.label}, {"K", s.curvature}});
        sec_min = std::min(sec_min, s.curvature);
        sec_max = std::max(sec_max, s.curvature);
        negative = negative && s.curvature < 0;
      }
      const Vec4 eig = ricci_eigenvalues(rep);
      entry["ricci_max"] = rep.max_abs_ricci;
      entry["riemann_max"] = rep.max_abs_riemann;
      entry["scalar"] = rep.scalar;
      entry["ricci_eigenvalues"] = {eig[0], eig[1], eig[2], eig[3]};
      entry["sectional"] = sectional;
      entry["verdicts"] = {{"ricci_flat", rep.max_abs_ricci < req.tol},
                           {"flat", rep.max_abs_riemann < req.tol},
                           {"negative_sectional", negative}};
      ricci_max = std::max(ricci_max, rep.max_abs_ricci);
      riemann_max = std::max(riemann_max, rep.max_abs_riemann);
    } catch (const DomainError& e) {
      entry["error"] = e.what();
      ++rejected;
    }
    per_point.push_back(entry);
  }
  json summary = {{"points", points.size()}, {"rejected", rejected}, {"ricci_max", ricci_max}, {"riemann_max", riemann_max}};
  if (sec_min <= sec_max) summary["sectional"] = {{"min", sec_min}, {"max", sec_max}};
  return {{{"case", std::string(to_string(req.id))},
           {"metric", std::string(to_string(req.metric))},
           {"step", req.step},
           {"results", per_point},
           {"summary", summary}},
          rejected ? kInputError : kOk};
}

}  // namespace hkverify::pipeline
