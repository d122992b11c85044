// hkverify: command-line front end for the verification pipeline.
//
//   hkverify verify (--case ID | --input FILE) [--no-coordinates]
//   hkverify curvature --case ID --metric hyperhermitian|rescaled|closed-form
//                      [--point x,y,z,t]... [--samples N]
//   hkverify catalog dump [--case ID]
//
// Shared flags: --format json|text, --tol, --step, --seed.
// Exit status: 0 all checks passed, 1 a mathematical check failed,
// 2 input or usage error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hkverify/io.hpp"
#include "hkverify/pipeline.hpp"

namespace {

using namespace hkverify;
using nlohmann::json;

struct Shared {
  std::string format = "json";
  std::optional<double> tol;
  std::optional<double> step;
  std::optional<std::uint64_t> seed;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--tol", s.tol, "Numeric tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--step", s.step, "Finite-difference step")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", s.seed, "Seed for sampled points");
}

std::string render_catalog_text(const CatalogCase& cc) {
  std::ostringstream os;
  os << to_string(cc.id) << ": " << cc.description << "\n  brackets:";
  for (const auto& e : cc.data.algebra.bracket_table()) {
    os << " [e" << e.i << ",e" << e.j << "] =";
    bool first = true;
    for (const auto& [k, v] : e.coeffs) {
      os << (first ? " " : " + ") << to_string(v) << " e" << k;
      first = false;
    }
    os << ";";
  }
  os << "\n";
  for (int a = 0; a < 3; ++a)
    os << "  ω" << a + 1 << " = " << to_string(cc.data.omegas[static_cast<std::size_t>(a)]) << "   dω" << a + 1 << " = "
       << to_string(cc.expected_domega[static_cast<std::size_t>(a)]) << "\n";
  for (const auto& [j, f] : cc.expected_de) os << "  de" << j << " = " << to_string(f) << "\n";
  os << "  θ = " << to_string(cc.expected_theta) << "\n";
  for (const auto& e : cc.errata)
    os << "  erratum " << e.quantity << ": golden " << to_string(e.printed) << ", consistent " << to_string(e.consistent) << " ("
       << e.note << ")\n";
  return os.str();
}

std::string render_curvature_text(const json& r) {
  std::ostringstream os;
  os << r["case"].get<std::string>() << " " << r["metric"].get<std::string>() << " (step " << r["step"].get<double>() << ")\n";
  for (const auto& e : r["results"]) {
    const auto& p = e["point"];
    os << "  (" << p[0].get<double>() << ", " << p[1].get<double>() << ", " << p[2].get<double>() << ", " << p[3].get<double>() << ")";
    if (e.contains("error")) {
      os << "  rejected: " << e["error"].get<std::string>() << "\n";
      continue;
    }
    os << "  |Ric|max " << e["ricci_max"].get<double>() << "  |Rm|max " << e["riemann_max"].get<double>() << "  scal "
       << e["scalar"].get<double>() << "\n    K:";
    for (const auto& s : e["sectional"]) os << " " << s["plane"].get<std::string>() << "=" << s["K"].get<double>();
    os << "\n";
  }
  const auto& s = r["summary"];
  os << "  summary: " << s["points"] << " points, " << s["rejected"] << " rejected, ricci_max " << s["ricci_max"].get<double>()
     << ", riemann_max " << s["riemann_max"].get<double>() << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for left-invariant hypercomplex structures on 4-dimensional Lie groups"};
  app.require_subcommand(1);

  Shared verify_flags, curv_flags, dump_flags;

  auto* verify = app.add_subcommand("verify", "Run the verification pipeline on a catalog case or an input file");
  std::string verify_case, input_path;
  bool no_coordinates = false;
  auto* case_opt = verify->add_option("--case", verify_case, "Catalog case: 0 (abelian) or 1-4");
  auto* input_opt = verify->add_option("--input", input_path, "JSON input file");
  case_opt->excludes(input_opt);
  verify->add_flag("--no-coordinates", no_coordinates, "Skip the coordinate-level checks");
  add_shared(verify, verify_flags);

  auto* curvature = app.add_subcommand("curvature", "Finite-difference curvature of a coordinate metric");
  std::string curv_case, metric_name = "rescaled";
  std::vector<std::string> point_texts;
  std::size_t samples = 10;
  curvature->add_option("--case", curv_case, "Catalog case: 0 (abelian) or 1-4")->required();
  curvature->add_option("--metric", metric_name, "hyperhermitian | rescaled | closed-form");
  curvature->add_option("--point", point_texts, "Chart point x,y,z,t (repeatable)");
  curvature->add_option("--samples", samples, "Number of seeded sample points when no --point is given")
      ->check(CLI::PositiveNumber);
  add_shared(curvature, curv_flags);

  auto* catalog = app.add_subcommand("catalog", "Catalog access");
  catalog->require_subcommand(1);
  auto* dump = catalog->add_subcommand("dump", "Print a catalog case in the input schema");
  std::string dump_case;
  dump->add_option("--case", dump_case, "Catalog case: 0 (abelian) or 1-4; all cases when omitted");
  add_shared(dump, dump_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pipeline::kInputError;
  }

  try {
    if (*verify) {
      if (verify_case.empty() == input_path.empty()) {
        std::cerr << "verify: exactly one of --case or --input is required\n";
        return pipeline::kInputError;
      }
      pipeline::Options opt;
      if (verify_flags.tol) opt.tol = *verify_flags.tol;
      if (verify_flags.step) opt.step = *verify_flags.step;
      if (verify_flags.seed) opt.seed = *verify_flags.seed;
      opt.coordinates = !no_coordinates;
      pipeline::Target target = verify_case.empty() ? pipeline::Target{pipeline::FileTarget{input_path}}
                                                    : pipeline::Target{pipeline::CatalogTarget{parse_case_id(verify_case)}};
      const auto report = pipeline::run_verify(target, opt);
      if (verify_flags.format == "json")
        std::cout << pipeline::to_json(report).dump(2) << "\n";
      else
        std::cout << pipeline::render_text(report);
      return report.exit_status;
    }

    if (*curvature) {
      pipeline::CurvatureRequest req;
      req.id = parse_case_id(curv_case);
      req.metric = pipeline::parse_metric_kind(metric_name);
      for (const auto& t : point_texts) req.points.push_back(coord::parse_point(t));
      req.samples = samples;
      if (curv_flags.tol) req.tol = *curv_flags.tol;
      if (curv_flags.step) req.step = *curv_flags.step;
      if (curv_flags.seed) req.seed = *curv_flags.seed;
      const auto run = pipeline::run_curvature(req);
      if (curv_flags.format == "json")
        std::cout << run.report.dump(2) << "\n";
      else
        std::cout << render_curvature_text(run.report);
      return run.exit_status;
    }

    if (*dump) {
      std::vector<CaseId> ids;
      if (dump_case.empty())
        ids.assign(kAllCases.begin(), kAllCases.end());
      else
        ids.push_back(parse_case_id(dump_case));
      if (dump_flags.format == "json") {
        if (ids.size() == 1) {
          std::cout << io::catalog_to_json(get_case(ids[0])).dump(2) << "\n";
        } else {
          json all = json::array();
          for (auto id : ids) all.push_back(io::catalog_to_json(get_case(id)));
          std::cout << all.dump(2) << "\n";
        }
      } else {
        for (auto id : ids) std::cout << render_catalog_text(get_case(id));
      }
      return pipeline::kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return pipeline::kInputError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return pipeline::kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return pipeline::kInputError;
  }
  return pipeline::kInputError;
}
