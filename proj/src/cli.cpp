#include "supdiff/cli.hpp"

#include <fstream>

#include "CLI11.hpp"
#include "supdiff/io.hpp"
#include "supdiff/oracle.hpp"

namespace supdiff {

namespace {

struct Emit {
  std::string jsonPath;
  bool quiet = false;

  void operator()(const Json& report, std::ostream& out) const {
    const std::string text = render_text(report);
    if (!jsonPath.empty()) {
      std::ofstream jf(jsonPath);
      if (!jf) throw parse_error("cannot write " + jsonPath);
      jf << report.dump(2) << "\n";
      std::string tpath = jsonPath;
      if (tpath.size() > 5 && tpath.substr(tpath.size() - 5) == ".json")
        tpath = tpath.substr(0, tpath.size() - 5) + ".txt";
      else
        tpath += ".txt";
      std::ofstream tf(tpath);
      if (!tf) throw parse_error("cannot write " + tpath);
      tf << text;
    }
    if (!quiet) out << text;
  }
};

VecQ point_from_csv(const std::string& csv, Eigen::Index dim) {
  const VecQ x = parse_rat_csv(csv);
  if (x.size() != dim)
    throw parse_error("point: expected " + std::to_string(dim) +
                      " coordinates, got " + std::to_string(x.size()));
  return x;
}

const IndexedFamily& family_of(const ProblemSpec& spec) {
  if (!spec.family) throw parse_error("spec has no \"family\" block");
  return *spec.family;
}

int cmd_compute(const ProblemSpec& spec, const std::string& formula,
                const VecQ& x, const CalcOptions& opts, const Emit& emit,
                std::ostream& out) {
  Json report = Json::object();
  report["command"] = "compute";
  report["formula"] = formula;
  report["point"] = json_vec(x);
  try {
    const SubdiffResult r = subdiff_by_name(formula, family_of(spec), x, opts);
    report["status"] = "ok";
    const Json body = json_subdiff(r);
    for (const auto& [k, v] : body.items())
      if (k != "formula") report[k] = v;
    emit(report, out);
    return 0;
  } catch (const hypothesis_error& e) {
    report["status"] = "refused";
    report["reason"] = e.what();
    emit(report, out);
    return 2;
  }
}

int cmd_compare(const ProblemSpec& spec, std::vector<std::string> formulas,
                const VecQ& x, const CalcOptions& opts, const Emit& emit,
                std::ostream& out) {
  const auto& known = formula_names();
  bool all = formulas.empty();
  for (const std::string& id : formulas)
    if (id == "all") all = true;
  if (all) formulas = known;
  for (const std::string& id : formulas)
    if (std::find(known.begin(), known.end(), id) == known.end())
      throw std::invalid_argument("unknown formula \"" + id + "\"");

  struct Entry {
    std::string id;
    std::string status;
    std::optional<Polyhedron> set;
    std::string note;
  };
  std::vector<Entry> entries;
  for (const std::string& id : formulas) {
    Entry e;
    e.id = id;
    try {
      const SubdiffResult r = subdiff_by_name(id, family_of(spec), x, opts);
      e.status = "ok";
      e.set = r.set;
      if (id == "valadier" && r.set.is_empty())
        for (const std::string& n : r.notes)
          if (n.find("active set empty") != std::string::npos) {
            e.status = "not-applicable";
            e.note = n;
          }
    } catch (const hypothesis_error& ex) {
      e.status = "refused";
      e.note = ex.what();
    }
    entries.push_back(std::move(e));
  }
  Entry ref;
  ref.id = "oracle";
  ref.status = "ok";
  ref.set = oracle_subdiff(family_of(spec), x);
  entries.push_back(std::move(ref));

  bool agrees = true;
  for (const Entry& e : entries)
    if (e.status == "ok" && !equals(*e.set, *entries.back().set))
      agrees = false;

  Json report = Json::object();
  report["command"] = "compare";
  report["point"] = json_vec(x);
  Json results = Json::array();
  for (const Entry& e : entries) {
    Json r = Json::object();
    r["formula"] = e.id;
    r["status"] = e.status;
    if (e.set) r["set"] = json_poly(*e.set);
    if (!e.note.empty()) r["note"] = e.note;
    results.push_back(std::move(r));
  }
  report["results"] = std::move(results);
  Json matrix = Json::object();
  for (const Entry& a : entries) {
    Json row = Json::array();
    for (const Entry& b : entries) {
      if (a.status != "ok" || b.status != "ok")
        row.push_back("n/a");
      else
        row.push_back(equals(*a.set, *b.set) ? "equal" : "differs");
    }
    matrix[a.id] = std::move(row);
  }
  report["matrix"] = std::move(matrix);
  report["agrees_with_oracle"] = agrees;
  emit(report, out);
  return agrees ? 0 : 3;
}

int cmd_sip(const ProblemSpec& spec, const std::string& check,
            const std::optional<VecQ>& xbar, std::optional<int> grid,
            const Emit& emit, std::ostream& out) {
  if (!spec.objective) throw parse_error("spec has no \"objective\" block");
  SipProblem p;
  p.dim = spec.dim;
  p.objective = *spec.objective;
  p.constraints = family_of(spec);

  Json report = Json::object();
  report["command"] = "sip";
  report["check"] = check;

  if (check == "slater") {
    const SlaterResult s = slater_check(p, grid);
    report["status"] = s.holds ? "holds" : "does-not-hold";
    report["witness_point"] = s.point ? json_vec(*s.point) : Json(nullptr);
    report["note"] = s.note;
    emit(report, out);
    return s.holds ? 0 : 3;
  }

  if (!xbar) throw parse_error("--point is required for " + check);
  report["point"] = json_vec(*xbar);
  try {
    const Certificate cert = check == "fj"
                                 ? fj_check(p, *xbar, grid)
                                 : kkt_check(p, *xbar,
                                             check == "kkt-continuous", grid);
    report["status"] = cert.holds ? "holds" : "does-not-hold";
    const Json body = json_certificate(cert);
    for (const auto& [k, v] : body.items())
      if (k != "kind" && k != "holds") report[k] = v;
    if (const auto delta = grid_refinement_delta(p, *xbar, grid))
      report["grid_delta"] = json_grid_delta(*delta);
    emit(report, out);
    return cert.holds ? 0 : 3;
  } catch (const hypothesis_error& e) {
    report["status"] = "refused";
    report["reason"] = e.what();
    emit(report, out);
    return 2;
  }
}

int cmd_conj(const ProblemSpec& spec, const std::optional<VecQ>& xstar,
             const Emit& emit, std::ostream& out) {
  if (!spec.discrete) throw parse_error("spec has no \"discrete\" block");
  const DiscreteFunc& g = *spec.discrete;
  Json report = Json::object();
  report["command"] = "conj";
  Polyhedron result;
  std::vector<VecQ> active;
  if (xstar) {
    report["mode"] = "point";
    report["xstar"] = json_vec(*xstar);
    result = conj_subdiff(g, *xstar);
    active = inverse_eps_subdiff(g, *xstar, 0);
  } else {
    report["mode"] = "argmin";
    result = argmin_convexified(g);
    active = inverse_eps_subdiff(g, VecQ::Zero(g.dim), 0);
  }
  Json act = Json::array();
  for (const VecQ& a : active) act.push_back(json_vec(a));
  report["active_samples"] = std::move(act);
  report["set"] = json_poly(result);
  emit(report, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact subdifferentials of polyhedral suprema", "supdiff"};
  app.require_subcommand(1);

  std::string specPath, pointCsv, formula, check, xstarCsv;
  std::vector<std::string> formulas;
  int epsCap = 64, gridVal = 0;
  bool quiet = false, argmin = false;
  std::string jsonPath;

  const auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--spec", specPath, "problem-spec file")->required();
    sub->add_option("--json", jsonPath,
                    "write the JSON report here, plus an adjacent .txt table");
    sub->add_flag("--quiet", quiet, "suppress the stdout table");
  };
  const auto addGrid = [&](CLI::App* sub) {
    sub->add_option("--grid", gridVal, "replace the stored parametric grid")
        ->check(CLI::Range(2, 65536));
  };

  CLI::App* compute = app.add_subcommand(
      "compute", "evaluate one characterization at a point");
  addCommon(compute);
  compute->add_option("--point", pointCsv, "evaluation point, CSV rationals")
      ->required();
  compute->add_option("--formula", formula, "characterization id")->required();
  compute->add_option("--epsilon-cap", epsCap, "epsilon-schedule step cap")
      ->check(CLI::PositiveNumber);
  addGrid(compute);

  CLI::App* compare = app.add_subcommand(
      "compare", "pairwise equality matrix of formulas and the oracle");
  addCommon(compare);
  compare->add_option("--point", pointCsv, "evaluation point, CSV rationals")
      ->required();
  compare->add_option("--formula", formulas,
                      "formula ids to include (default: all)");
  compare->add_option("--epsilon-cap", epsCap, "epsilon-schedule step cap")
      ->check(CLI::PositiveNumber);
  addGrid(compare);

  CLI::App* sip =
      app.add_subcommand("sip", "optimality-condition certificates");
  addCommon(sip);
  sip->add_option("--point", pointCsv, "candidate point, CSV rationals");
  sip->add_option("--check", check, "fj | kkt | kkt-continuous | slater")
      ->required()
      ->check(CLI::IsMember({"fj", "kkt", "kkt-continuous", "slater"}));
  addGrid(sip);

  CLI::App* conj = app.add_subcommand(
      "conj", "conjugate-side subdifferentials of sampled functions");
  addCommon(conj);
  conj->add_option("--point", xstarCsv, "functional, CSV rationals");
  conj->add_flag("--argmin", argmin, "argmin of the convexified hull");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    const ProblemSpec spec = load_spec(specPath);
    const Emit emit{jsonPath, quiet};
    CalcOptions opts;
    opts.epsCap = epsCap;
    std::optional<int> grid;
    if (gridVal > 0) grid = gridVal;
    opts.gridOverride = grid;

    if (compute->parsed())
      return cmd_compute(spec, formula, point_from_csv(pointCsv, spec.dim),
                         opts, emit, out);
    if (compare->parsed())
      return cmd_compare(spec, formulas, point_from_csv(pointCsv, spec.dim),
                         opts, emit, out);
    if (sip->parsed()) {
      std::optional<VecQ> xbar;
      if (!pointCsv.empty()) xbar = point_from_csv(pointCsv, spec.dim);
      return cmd_sip(spec, check, xbar, grid, emit, out);
    }
    std::optional<VecQ> xstar;
    if (argmin && !xstarCsv.empty())
      throw parse_error("--point and --argmin are mutually exclusive");
    if (!argmin && xstarCsv.empty())
      throw parse_error("conj needs --point or --argmin");
    if (!xstarCsv.empty()) xstar = point_from_csv(xstarCsv, spec.dim);
    return cmd_conj(spec, xstar, emit, out);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace supdiff
