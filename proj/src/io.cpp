#include "supdiff/io.hpp"

#include <fstream>
#include <sstream>

namespace supdiff {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw parse_error(where + ": " + msg);
}

void expect_object(const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
}

void expect_array(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
}

void check_keys(const Json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) fail(where, "unknown key \"" + it.key() + "\"");
  }
}

std::string sub(const std::string& where, const std::string& key) {
  return where + "." + key;
}

std::string at(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

int int_from(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::vector<Rat> poly_coeffs_from(const Json& j, const std::string& where) {
  expect_array(j, where);
  if (j.empty()) fail(where, "a polynomial needs at least one coefficient");
  std::vector<Rat> c;
  for (std::size_t i = 0; i < j.size(); ++i)
    c.push_back(rat_from(j[i], at(where, i)));
  return c;
}

FiniteFamily finite_from(const Json& j, Eigen::Index dim,
                         const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"members", "labels", "omega"}, where);
  if (!j.contains("members")) fail(where, "missing \"members\"");
  expect_array(j["members"], sub(where, "members"));
  FiniteFamily fam;
  for (std::size_t i = 0; i < j["members"].size(); ++i)
    fam.members.push_back(
        polyfunc_from(j["members"][i], dim, at(sub(where, "members"), i)));
  if (fam.members.empty()) fail(where, "\"members\" must be nonempty");
  if (j.contains("labels")) {
    expect_array(j["labels"], sub(where, "labels"));
    for (std::size_t i = 0; i < j["labels"].size(); ++i) {
      if (!j["labels"][i].is_string())
        fail(at(sub(where, "labels"), i), "expected a string");
      fam.labels.push_back(j["labels"][i].get<std::string>());
    }
    if (fam.labels.size() != fam.members.size())
      fail(where, "\"labels\" must match \"members\" in length");
  }
  if (j.contains("omega")) {
    const int k = int_from(j["omega"], sub(where, "omega"));
    if (k < 0 || std::size_t(k) >= fam.members.size())
      fail(sub(where, "omega"), "index out of range");
    fam.omega = std::size_t(k);
  }
  return fam;
}

SequenceFamily sequence_from(const Json& j, Eigen::Index dim,
                             const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"prefix", "limit", "slack"}, where);
  if (!j.contains("prefix") || !j.contains("limit"))
    fail(where, "needs \"prefix\" and \"limit\"");
  expect_array(j["prefix"], sub(where, "prefix"));
  SequenceFamily fam;
  for (std::size_t i = 0; i < j["prefix"].size(); ++i)
    fam.prefix.push_back(
        polyfunc_from(j["prefix"][i], dim, at(sub(where, "prefix"), i)));
  if (fam.prefix.empty()) fail(where, "\"prefix\" must be nonempty");
  fam.limit = polyfunc_from(j["limit"], dim, sub(where, "limit"));
  if (j.contains("slack")) {
    fam.slack = rat_from(j["slack"], sub(where, "slack"));
    if (fam.slack < 0) fail(sub(where, "slack"), "must be nonnegative");
  }
  return fam;
}

ParametricFamily parametric_from(const Json& j, Eigen::Index dim,
                                 const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"range", "pieces", "domain", "grid"}, where);
  if (!j.contains("range") || !j.contains("pieces"))
    fail(where, "needs \"range\" and \"pieces\"");
  ParametricFamily fam;
  fam.dim = dim;
  const Json& range = j["range"];
  expect_array(range, sub(where, "range"));
  if (range.size() != 2) fail(sub(where, "range"), "expected [lo, hi]");
  fam.lo = rat_from(range[0], at(sub(where, "range"), 0));
  fam.hi = rat_from(range[1], at(sub(where, "range"), 1));
  if (fam.hi < fam.lo) fail(sub(where, "range"), "needs lo <= hi");
  expect_array(j["pieces"], sub(where, "pieces"));
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    const Json& pj = j["pieces"][i];
    const std::string pw = at(sub(where, "pieces"), i);
    expect_object(pj, pw);
    check_keys(pj, {"slope", "intercept"}, pw);
    if (!pj.contains("slope") || !pj.contains("intercept"))
      fail(pw, "needs \"slope\" and \"intercept\"");
    expect_array(pj["slope"], sub(pw, "slope"));
    if (Eigen::Index(pj["slope"].size()) != dim)
      fail(sub(pw, "slope"), "expected one polynomial per coordinate");
    ParamPiece piece;
    for (std::size_t k = 0; k < pj["slope"].size(); ++k)
      piece.slope.push_back(
          poly_coeffs_from(pj["slope"][k], at(sub(pw, "slope"), k)));
    piece.intercept = poly_coeffs_from(pj["intercept"], sub(pw, "intercept"));
    fam.pieces.push_back(std::move(piece));
  }
  if (fam.pieces.empty()) fail(where, "\"pieces\" must be nonempty");
  fam.domain = j.contains("domain")
                   ? hrep_from(j["domain"], dim, sub(where, "domain"))
                   : full_space_h(dim);
  if (j.contains("grid")) {
    fam.grid = int_from(j["grid"], sub(where, "grid"));
    if (fam.grid < 2) fail(sub(where, "grid"), "needs at least 2 points");
  }
  return fam;
}

}  // namespace

Json json_rat(const Rat& q) { return Json(format_rat(q)); }

Json json_vec(const VecQ& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(format_rat(v[i]));
  return a;
}

Json json_poly(const Polyhedron& p) {
  Json j = Json::object();
  j["dim"] = int(p.dim);
  Json verts = Json::array(), rays = Json::array(), lin = Json::array();
  for (const VecQ& v : p.v.vertices) verts.push_back(json_vec(v));
  for (const VecQ& r : p.v.rays) rays.push_back(json_vec(r));
  for (const VecQ& l : p.v.lineality) lin.push_back(json_vec(l));
  j["vertices"] = std::move(verts);
  j["rays"] = std::move(rays);
  j["lineality"] = std::move(lin);
  return j;
}

Json json_active(const ActiveSet& a) {
  Json j = Json::object();
  j["eps"] = json_rat(a.eps);
  j["includes_limit"] = a.includesLimit;
  Json members = Json::array();
  for (const auto& [view, gap] : a.indices) {
    Json m = Json::object();
    m["view"] = int(view);
    m["gap"] = json_rat(gap);
    members.push_back(std::move(m));
  }
  j["members"] = std::move(members);
  return j;
}

Json json_trace(const std::vector<TraceStep>& steps) {
  Json arr = Json::array();
  for (const TraceStep& s : steps) {
    Json j = Json::object();
    j["eps"] = json_rat(s.eps);
    Json act = Json::array();
    for (std::size_t v : s.active) act.push_back(int(v));
    j["active"] = std::move(act);
    j["includes_limit"] = s.includesLimit;
    j["set"] = json_poly(s.set);
    arr.push_back(std::move(j));
  }
  return arr;
}

Json json_subdiff(const SubdiffResult& r) {
  Json j = Json::object();
  j["formula"] = r.formula;
  j["exact"] = r.exact;
  j["set"] = json_poly(r.set);
  if (!r.preHull.empty()) {
    Json ph = Json::array();
    for (const Polyhedron& p : r.preHull) ph.push_back(json_poly(p));
    j["pre_hull"] = std::move(ph);
  }
  j["active_set"] = json_active(r.activeSnapshot);
  j["eps_trace"] = json_trace(r.epsTrace);
  j["notes"] = r.notes;
  return j;
}

Json json_certificate(const Certificate& c) {
  Json j = Json::object();
  switch (c.kind) {
    case CertKind::FJ: j["kind"] = "fj"; break;
    case CertKind::KKT: j["kind"] = "kkt"; break;
    case CertKind::KKTContinuous: j["kind"] = "kkt-continuous"; break;
  }
  j["holds"] = c.holds;
  Json w = Json::array();
  for (const WitnessTerm& t : c.witness) {
    Json term = Json::object();
    term["generator"] = t.generator;
    term["coefficient"] = json_rat(t.coefficient);
    term["vector"] = json_vec(t.vector);
    w.push_back(std::move(term));
  }
  j["witness"] = std::move(w);
  j["checked_hypotheses"] = c.checkedHypotheses;
  j["notes"] = c.notes;
  return j;
}

Json json_grid_delta(const GridDelta& d) {
  Json j = Json::object();
  j["coarse"] = d.coarse;
  j["fine"] = d.fine;
  j["comparable"] = d.comparable;
  j["recession_equal"] = d.recessionEqual;
  if (d.comparable)
    j["hausdorff"] = json_rat(d.hausdorff);
  else
    j["hausdorff"] = nullptr;
  return j;
}

Rat rat_from(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const parse_error& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rat(j.get<long long>());
  fail(where, "expected a rational \"p/q\" string");
}

VecQ vec_from(const Json& j, Eigen::Index dim, const std::string& where) {
  expect_array(j, where);
  if (dim >= 0 && Eigen::Index(j.size()) != dim)
    fail(where, "expected " + std::to_string(dim) + " entries, got " +
                    std::to_string(j.size()));
  VecQ v(Eigen::Index(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v[Eigen::Index(i)] = rat_from(j[i], at(where, i));
  return v;
}

HRep hrep_from(const Json& j, Eigen::Index dim, const std::string& where) {
  expect_array(j, where);
  HRep h;
  h.dim = dim;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& rj = j[i];
    const std::string rw = at(where, i);
    expect_object(rj, rw);
    check_keys(rj, {"a", "b", "strict"}, rw);
    if (!rj.contains("a") || !rj.contains("b"))
      fail(rw, "a row needs \"a\" and \"b\"");
    HRow row;
    row.a = vec_from(rj["a"], dim, sub(rw, "a"));
    row.b = rat_from(rj["b"], sub(rw, "b"));
    if (rj.contains("strict")) {
      if (!rj["strict"].is_boolean())
        fail(sub(rw, "strict"), "expected a boolean");
      row.strict = rj["strict"].get<bool>();
    }
    h.rows.push_back(std::move(row));
  }
  return h;
}

Polyhedron poly_from(const Json& j, const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"dim", "vertices", "rays", "lineality"}, where);
  if (!j.contains("dim")) fail(where, "missing \"dim\"");
  const int dim = int_from(j["dim"], sub(where, "dim"));
  if (dim < 0) fail(sub(where, "dim"), "must be nonnegative");
  VRep v;
  v.dim = dim;
  auto read = [&](const char* key, std::vector<VecQ>& out) {
    if (!j.contains(key)) return;
    const std::string kw = sub(where, key);
    expect_array(j[key], kw);
    for (std::size_t i = 0; i < j[key].size(); ++i)
      out.push_back(vec_from(j[key][i], dim, at(kw, i)));
  };
  read("vertices", v.vertices);
  read("rays", v.rays);
  read("lineality", v.lineality);
  return from_v(v);
}

PolyFunc polyfunc_from(const Json& j, Eigen::Index dim,
                       const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"pieces", "domain"}, where);
  PolyFunc f;
  f.dim = dim;
  if (j.contains("pieces")) {
    expect_array(j["pieces"], sub(where, "pieces"));
    for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
      const VecQ row =
          vec_from(j["pieces"][i], dim + 1, at(sub(where, "pieces"), i));
      f.pieces.push_back({row.head(dim), row[dim]});
    }
  }
  f.domain = j.contains("domain")
                 ? hrep_from(j["domain"], dim, sub(where, "domain"))
                 : full_space_h(dim);
  return f;
}

IndexedFamily family_from(const Json& j, Eigen::Index dim,
                          const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"finite", "sequence", "parametric"}, where);
  if (j.size() != 1)
    fail(where,
         "expected exactly one of \"finite\", \"sequence\", \"parametric\"");
  if (j.contains("finite"))
    return finite_from(j["finite"], dim, sub(where, "finite"));
  if (j.contains("sequence"))
    return sequence_from(j["sequence"], dim, sub(where, "sequence"));
  return parametric_from(j["parametric"], dim, sub(where, "parametric"));
}

DiscreteFunc discrete_from(const Json& j, Eigen::Index dim,
                           const std::string& where) {
  expect_object(j, where);
  check_keys(j, {"samples"}, where);
  if (!j.contains("samples")) fail(where, "missing \"samples\"");
  expect_array(j["samples"], sub(where, "samples"));
  DiscreteFunc g;
  g.dim = dim;
  for (std::size_t i = 0; i < j["samples"].size(); ++i) {
    const VecQ row =
        vec_from(j["samples"][i], dim + 1, at(sub(where, "samples"), i));
    g.samples.push_back({row.head(dim), row[dim]});
  }
  validate(g);
  return g;
}

ProblemSpec spec_from(const Json& j) {
  const std::string where = "spec";
  expect_object(j, where);
  check_keys(j, {"dim", "family", "objective", "discrete", "meta"}, where);
  if (!j.contains("dim")) fail(where, "missing \"dim\"");
  ProblemSpec s;
  const int dim = int_from(j["dim"], sub(where, "dim"));
  if (dim < 1) fail(sub(where, "dim"), "must be a positive integer");
  s.dim = dim;
  if (j.contains("family"))
    s.family = family_from(j["family"], s.dim, sub(where, "family"));
  if (j.contains("objective"))
    s.objective = polyfunc_from(j["objective"], s.dim, sub(where, "objective"));
  if (j.contains("discrete"))
    s.discrete = discrete_from(j["discrete"], s.dim, sub(where, "discrete"));
  if (j.contains("meta")) s.meta = j["meta"];
  return s;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open spec file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return spec_from(j);
}

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_null()) return "-";
  return j.dump();
}

bool all_scalar(const Json& a) {
  for (const auto& e : a)
    if (e.is_structured()) return false;
  return true;
}

bool all_scalar_arrays(const Json& a) {
  for (const auto& e : a)
    if (!e.is_array() || !all_scalar(e)) return false;
  return true;
}

void flatten(const Json& j, const std::string& key,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) {
      out.push_back({key, "(none)"});
      return;
    }
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), out);
    return;
  }
  if (j.is_array()) {
    if (j.empty()) {
      out.push_back({key, "(none)"});
      return;
    }
    if (all_scalar(j)) {
      std::string line;
      for (const auto& e : j) {
        if (!line.empty()) line += ", ";
        line += scalar_text(e);
      }
      out.push_back({key, line});
      return;
    }
    if (all_scalar_arrays(j)) {
      std::string line;
      for (const auto& e : j) {
        if (!line.empty()) line += "; ";
        std::string tuple;
        for (const auto& c : e) {
          if (!tuple.empty()) tuple += ", ";
          tuple += scalar_text(c);
        }
        line += "(" + tuple + ")";
      }
      out.push_back({key, line});
      return;
    }
    std::size_t i = 0;
    for (const auto& e : j) flatten(e, at(key, i++), out);
    return;
  }
  out.push_back({key, scalar_text(j)});
}

}  // namespace

std::string render_text(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows)
    os << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return os.str();
}

}  // namespace supdiff
