#include "supdiff/sip.hpp"

#include "supdiff/lp.hpp"

namespace supdiff {

namespace {

void check_dims(const SipProblem& p) {
  if (p.objective.dim != p.dim || family_dim(p.constraints) != p.dim)
    throw parse_error("sip: objective/constraint dimension mismatch");
}

/** One column of the pooled membership LP. */
struct PoolColumn {
  std::string name;
  VecQ vec;
  bool nonneg = true;
  bool convex = false;  // participates in the sum-to-one row
};

void add_block(std::vector<PoolColumn>& cols, const std::string& name,
               const Polyhedron& poly, bool vertsConvex) {
  for (std::size_t i = 0; i < poly.v.vertices.size(); ++i)
    cols.push_back({name + ":v" + std::to_string(i), poly.v.vertices[i], true,
                    vertsConvex});
  for (std::size_t i = 0; i < poly.v.rays.size(); ++i)
    cols.push_back({name + ":r" + std::to_string(i), poly.v.rays[i], true,
                    false});
  for (std::size_t i = 0; i < poly.v.lineality.size(); ++i)
    cols.push_back({name + ":l" + std::to_string(i), poly.v.lineality[i],
                    false, false});
}

/** Cone block: every generator conic, the apex contributes nothing. */
void add_cone_block(std::vector<PoolColumn>& cols, const std::string& name,
                    const Polyhedron& cone) {
  for (std::size_t i = 0; i < cone.v.rays.size(); ++i)
    cols.push_back({name + ":r" + std::to_string(i), cone.v.rays[i], true,
                    false});
  for (std::size_t i = 0; i < cone.v.lineality.size(); ++i)
    cols.push_back({name + ":l" + std::to_string(i), cone.v.lineality[i],
                    false, false});
}

/** Finds coefficients with Σ convex = 1, signs respected, Σ z_j·col_j = 0. */
std::optional<std::vector<Rat>> solve_pool(const std::vector<PoolColumn>& cols,
                                           Eigen::Index n) {
  const Eigen::Index m = static_cast<Eigen::Index>(cols.size());
  HRep h;
  h.dim = m;
  auto eq = [&](const VecQ& a, const Rat& b) {
    h.rows.push_back({a, b, false});
    h.rows.push_back({VecQ(-a), -b, false});
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    VecQ a = zero_vec(m);
    for (Eigen::Index j = 0; j < m; ++j) a[j] = cols[j].vec[i];
    eq(a, 0);
  }
  {
    VecQ a = zero_vec(m);
    for (Eigen::Index j = 0; j < m; ++j)
      if (cols[j].convex) a[j] = 1;
    eq(a, 1);
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!cols[j].nonneg) continue;
    VecQ a = zero_vec(m);
    a[j] = -1;
    h.rows.push_back({a, 0, false});
  }
  const LpResult lp = lp_solve(zero_vec(m), h, LpSense::minimize);
  if (lp.status != LpStatus::optimal) return std::nullopt;
  std::vector<Rat> z(cols.size());
  for (Eigen::Index j = 0; j < m; ++j) z[j] = lp.point[j];
  return z;
}

/** Replays the combination and fills the witness; throws when it does not
 *  reproduce zero exactly. */
void install_witness(Certificate& c, const std::vector<PoolColumn>& cols,
                     const std::vector<Rat>& z, Eigen::Index n) {
  VecQ sum = zero_vec(n);
  Rat convexSum = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].nonneg && z[j] < 0)
      throw internal_error("witness: sign constraint violated");
    if (cols[j].convex) convexSum += z[j];
    sum += z[j] * cols[j].vec;
    if (z[j] != 0) c.witness.push_back({cols[j].name, cols[j].vec, z[j]});
  }
  if (convexSum != 1) throw internal_error("witness: weights do not sum to 1");
  for (Eigen::Index i = 0; i < n; ++i)
    if (sum[i] != 0) throw internal_error("witness: replay is not zero");
}

struct KPieces {
  std::vector<Polyhedron> pieces;
  std::vector<std::string> labels;
  bool exact = true;
};

/**
 * The ε-limit constraint set K at xbar: one polyhedron per exactly active
 * member, each the subdifferential of the (optionally restricted) member.
 * `fxbar` is the constraint supremum's value at xbar.
 */
KPieces constraint_K(const std::vector<MemberView>& views, const VecQ& xbar,
                     const Rat& fxbar, const HRep* restriction) {
  std::vector<EpsLimitInput> inputs;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const PolyFunc g =
        restriction ? restrict_to(views[i].fn, *restriction) : views[i].fn;
    const FnValue gv = eval(g, xbar);
    if (!gv.finite)
      throw internal_error("constraint member not finite at the candidate");
    EpsLimitInput in;
    in.label = views[i].label;
    in.lifted = lifted_eps_subdiff_given(conjugate(g), gv.value, xbar);
    in.gap = fxbar - gv.value;
    in.viewIndex = i;
    in.isLimit = views[i].is_limit;
    inputs.push_back(std::move(in));
  }
  const Eigen::Index n = xbar.size();
  const EpsLimitOutput eng =
      eps_limit(inputs, make_point(zero_vec(n)), false, 64);
  KPieces out;
  out.pieces = eng.pieces;
  out.exact = eng.exact;
  for (const EpsLimitInput& in : inputs)
    if (in.gap == 0) out.labels.push_back(in.label);
  if (out.labels.size() != out.pieces.size())
    throw internal_error("constraint K: label/piece count mismatch");
  return out;
}

/** Refusal-or-pass gate for the standing hypothesis f(xbar) = 0. */
void standing_hypothesis(const SupResult& sup, const PolyFunc& objective,
                         const VecQ& xbar, Certificate& c) {
  const FnValue fb = eval(sup.f, xbar);
  if (!fb.finite || fb.value != 0)
    throw hypothesis_error(
        "the standing hypothesis f(xbar) = 0 fails: f(xbar) = " +
        (fb.finite ? format_rat(fb.value) : std::string("+infinity")));
  const FnValue f0b = eval(objective, xbar);
  if (!f0b.finite)
    throw hypothesis_error("f0(xbar) is not finite at the candidate point");
  c.checkedHypotheses.push_back("f(xbar) = 0");
  c.checkedHypotheses.push_back("f0(xbar) finite");
}

void surrogate_note(const SupResult& sup, Certificate& c) {
  if (sup.surrogate)
    c.notes.push_back(
        "surrogate: the constraint family is infinite; results apply to its "
        "stored finite representation");
  for (const std::string& w : sup.warnings) c.notes.push_back(w);
}

}  // namespace

SlaterResult slater_check(const SipProblem& p, std::optional<int> grid) {
  check_dims(p);
  const SupResult sup = sup_function(p.constraints, grid);
  const Eigen::Index n = p.dim;

  HRep rows;
  rows.dim = n + 1;
  for (const AffinePiece& pc : effective_pieces(sup.f)) {
    VecQ a = zero_vec(n + 1);
    a.head(n) = pc.a;
    a[n] = -1;
    rows.rows.push_back({a, -pc.b, false});
  }
  auto add_dom = [&](const HRep& dom) {
    for (const HRow& r : dom.rows) {
      VecQ a = zero_vec(n + 1);
      a.head(n) = r.a;
      rows.rows.push_back({a, r.b, false});
    }
  };
  add_dom(sup.f.domain);
  add_dom(p.objective.domain);

  VecQ c = zero_vec(n + 1);
  c[n] = 1;
  const LpResult lp = lp_solve(c, rows, LpSense::minimize);
  if (lp.status == LpStatus::infeasible)
    return {false, std::nullopt,
            "dom f0 does not meet the closure of dom f"};
  VecQ start;
  if (lp.status == LpStatus::optimal) {
    if (lp.value >= 0)
      return {false, std::nullopt,
              "the constraint supremum's minimum over the closed domain is " +
                  format_rat(lp.value) + ", not negative"};
    start = lp.point.head(n);
  } else {
    HRep bounded = rows;
    VecQ a = zero_vec(n + 1);
    a[n] = 1;
    bounded.rows.push_back({a, -1, false});
    const auto pt = feasible_point(bounded);
    if (!pt) throw internal_error("slater: unbounded LP without a deep point");
    start = pt->head(n);
  }

  // Walk toward a strictly feasible anchor until strict rows are honored.
  const HRep both = concat(p.objective.domain, sup.f.domain);
  const auto anchor = strict_feasible_point(both);
  if (!anchor)
    return {false, std::nullopt,
            "dom f0 and dom f share no point honoring the strict rows"};
  Rat lambda = 0;
  for (int k = 0; k <= 2; ++k) {
    if (k > 0) {
      if (lambda == 0) {
        // exact threshold: keep the combination's value negative
        const FnValue va = eval(sup.f, *anchor);
        const FnValue vs0 = [&] {
          PolyFunc relaxed = sup.f;
          relaxed.domain = cleared(relaxed.domain);
          return eval(relaxed, start);
        }();
        if (!va.finite || !vs0.finite)
          throw internal_error("slater: anchor or start value not finite");
        const Rat bad = va.value > 0 ? va.value : Rat(0);
        lambda = -vs0.value / (2 * (bad - vs0.value));
      } else {
        lambda /= 2;
      }
    }
    const VecQ x0 = (1 - lambda) * start + lambda * (*anchor);
    if (!hrep_contains(p.objective.domain, x0, true)) continue;
    const FnValue v = eval(sup.f, x0);
    if (!v.finite || v.value >= 0) continue;
    return {true, x0, "f(x0) = " + format_rat(v.value)};
  }
  throw internal_error("slater: walk failed to reach a strict witness");
}

Certificate fj_check(const SipProblem& p, const VecQ& xbar,
                     std::optional<int> grid) {
  check_dims(p);
  if (xbar.size() != p.dim)
    throw std::invalid_argument("fj_check: point dimension mismatch");
  const SupResult sup = sup_function(p.constraints, grid);
  const std::vector<MemberView> views = member_views(p.constraints, grid);

  Certificate c;
  c.kind = CertKind::FJ;
  standing_hypothesis(sup, p.objective, xbar, c);
  surrogate_note(sup, c);

  const Polyhedron S0 =
      eps_subdiff(restrict_to(p.objective, sup.f.domain), xbar, 0);
  if (S0.is_empty())
    throw internal_error("objective subdifferential empty at a domain point");
  const HRep restriction = concat(sup.f.domain, p.objective.domain);
  const KPieces K = constraint_K(views, xbar, 0, &restriction);
  if (!K.exact) c.notes.push_back("constraint K flagged inexact by the engine");

  std::vector<PoolColumn> cols;
  add_block(cols, "f0", S0, true);
  for (std::size_t i = 0; i < K.pieces.size(); ++i)
    add_block(cols, "K[" + K.labels[i] + "]", K.pieces[i], true);
  const auto z = solve_pool(cols, p.dim);
  c.holds = z.has_value();
  if (z) {
    install_witness(c, cols, *z, p.dim);
  } else {
    c.notes.push_back(
        "zero admits no convex combination of the objective and constraint "
        "subdifferential generators");
  }
  return c;
}

Certificate kkt_check(const SipProblem& p, const VecQ& xbar,
                      bool continuousVariant, std::optional<int> grid) {
  check_dims(p);
  if (xbar.size() != p.dim)
    throw std::invalid_argument("kkt_check: point dimension mismatch");
  const SlaterResult slater = slater_check(p, grid);
  if (!slater.holds)
    throw hypothesis_error("the Slater condition fails (" + slater.note +
                           "); ask for the Fritz-John certificate instead");
  const SupResult sup = sup_function(p.constraints, grid);
  const std::vector<MemberView> views = member_views(p.constraints, grid);

  Certificate c;
  c.kind = continuousVariant ? CertKind::KKTContinuous : CertKind::KKT;
  c.checkedHypotheses.push_back("Slater condition (witness x0 = " +
                                format_vec(*slater.point) + ")");
  standing_hypothesis(sup, p.objective, xbar, c);
  surrogate_note(sup, c);

  std::vector<PoolColumn> cols;
  std::size_t objectiveCols = 0;
  if (!continuousVariant) {
    const Polyhedron S0 =
        eps_subdiff(restrict_to(p.objective, sup.f.domain), xbar, 0);
    const HRep restriction = concat(sup.f.domain, p.objective.domain);
    const KPieces K = constraint_K(views, xbar, 0, &restriction);
    if (!K.exact)
      c.notes.push_back("constraint K flagged inexact by the engine");
    add_block(cols, "f0", S0, true);
    objectiveCols = cols.size();
    for (std::size_t i = 0; i < K.pieces.size(); ++i)
      add_block(cols, "K[" + K.labels[i] + "]", K.pieces[i], false);
  } else {
    if (!interior_point(concat(sup.f.domain, p.objective.domain)))
      throw hypothesis_error(
          "dom f0 and dom f share no interior point, so continuity of the "
          "constraint supremum cannot be verified there");
    c.checkedHypotheses.push_back("dom f0 intersected with dom f has an interior point");
    const Polyhedron S0 = eps_subdiff(p.objective, xbar, 0);
    const KPieces K0 = constraint_K(views, xbar, 0, nullptr);
    if (!K0.exact)
      c.notes.push_back("constraint K flagged inexact by the engine");
    const Polyhedron N = normal_cone_rows(sup.f.domain, xbar).set;
    add_block(cols, "f0", S0, true);
    objectiveCols = cols.size();
    for (std::size_t i = 0; i < K0.pieces.size(); ++i)
      add_block(cols, "K[" + K0.labels[i] + "]", K0.pieces[i], false);
    add_cone_block(cols, "N", N);
  }

  const auto z = solve_pool(cols, p.dim);
  c.holds = z.has_value();
  if (z) {
    install_witness(c, cols, *z, p.dim);
    bool anyMultiplier = false;
    for (std::size_t j = objectiveCols; j < cols.size(); ++j)
      if ((*z)[j] != 0) anyMultiplier = true;
    if (!anyMultiplier)
      c.notes.push_back("all constraint multipliers are zero");
  } else {
    c.notes.push_back(
        "zero is not reachable from the objective subdifferential plus the "
        "constraint cone");
  }
  return c;
}

namespace {

Rat point_to_hull(const VecQ& v, const Polyhedron& hull) {
  const Eigen::Index n = v.size();
  HRep h;
  h.dim = n + 1;
  for (const HRow& r : hull.facets.rows) {
    VecQ a = zero_vec(n + 1);
    a.head(n) = r.a;
    h.rows.push_back({a, r.b, false});
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    VecQ a = zero_vec(n + 1);
    a[i] = -1;
    a[n] = -1;
    h.rows.push_back({a, -v[i], false});
    a[i] = 1;
    h.rows.push_back({a, v[i], false});
  }
  VecQ c = zero_vec(n + 1);
  c[n] = 1;
  const LpResult lp = lp_solve(c, h, LpSense::minimize);
  if (lp.status != LpStatus::optimal)
    throw internal_error("point_to_hull: distance LP did not solve");
  return lp.value;
}

Polyhedron recession_of(const Polyhedron& p) {
  VRep v;
  v.dim = p.dim;
  v.vertices.push_back(zero_vec(p.dim));
  v.rays = p.v.rays;
  v.lineality = p.v.lineality;
  return from_v(v);
}

}  // namespace

std::optional<GridDelta> grid_refinement_delta(const SipProblem& p,
                                               const VecQ& xbar,
                                               std::optional<int> grid) {
  check_dims(p);
  const auto* par = std::get_if<ParametricFamily>(&p.constraints);
  if (!par) return std::nullopt;
  GridDelta d;
  d.coarse = grid.value_or(par->grid);
  d.fine = 2 * d.coarse;
  d.hausdorff = 0;

  auto hull_at = [&](int g) -> std::optional<Polyhedron> {
    const SupResult sup = sup_function(p.constraints, g);
    const FnValue fb = eval(sup.f, xbar);
    if (!fb.finite) return std::nullopt;
    const HRep restriction = concat(sup.f.domain, p.objective.domain);
    const KPieces K = constraint_K(member_views(p.constraints, g), xbar,
                                   fb.value, &restriction);
    return hull_union(K.pieces);
  };
  const auto a = hull_at(d.coarse);
  const auto b = hull_at(d.fine);
  if (!a || !b) return d;
  if (a->is_empty() || b->is_empty()) {
    d.comparable = a->is_empty() && b->is_empty();
    d.recessionEqual = d.comparable;
    return d;
  }
  d.recessionEqual = equals(recession_of(*a), recession_of(*b));
  if (!d.recessionEqual) return d;
  d.comparable = true;
  for (const VecQ& v : a->v.vertices) {
    const Rat dist = point_to_hull(v, *b);
    if (dist > d.hausdorff) d.hausdorff = dist;
  }
  for (const VecQ& v : b->v.vertices) {
    const Rat dist = point_to_hull(v, *a);
    if (dist > d.hausdorff) d.hausdorff = dist;
  }
  return d;
}

}  // namespace supdiff
