#include "supdiff/supcalc.hpp"

#include <map>

#include "supdiff/linalg.hpp"
#include "supdiff/lp.hpp"

namespace supdiff {

namespace {

bool any_limit(const std::vector<EpsLimitInput>& inputs,
               const std::vector<std::size_t>& active) {
  for (std::size_t i : active)
    if (inputs[i].isLimit) return true;
  return false;
}

}  // namespace

EpsLimitOutput eps_limit(const std::vector<EpsLimitInput>& inputs,
                         const Polyhedron& normal, bool hullInside,
                         int epsCap) {
  for (const EpsLimitInput& in : inputs) {
    if (in.gap < 0) throw std::invalid_argument("eps_limit: negative gap");
    if (in.lifted.dim != normal.dim + 1)
      throw std::invalid_argument("eps_limit: lifted graph dimension mismatch");
  }
  EpsLimitOutput out;

  std::vector<std::size_t> active0;
  Rat maxGap = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].gap == 0) active0.push_back(i);
    if (inputs[i].gap > maxGap) maxGap = inputs[i].gap;
  }

  auto slice_plus = [&](std::size_t i, const Rat& e) {
    return minkowski_sum(slice_last(inputs[i].lifted, e), normal);
  };

  for (std::size_t i : active0) out.pieces.push_back(slice_plus(i, 0));
  out.set = hull_union(out.pieces);

  /*
   * Schedule run.  The slices of one member differ only in right-hand
   * sides, so they shrink to the ε = 0 slice; once the active set freezes
   * to the gap-zero members the intersection over ε is exactly the set
   * computed above.  The loop produces the trace and the certificate.
   */
  std::map<std::size_t, Polyhedron> lastPart;
  bool certified = false;
  int postFreeze = 0;
  Rat eps = maxGap + 1;
  for (int k = 0; k <= epsCap && !certified; ++k, eps /= 4) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (inputs[i].gap <= eps) active.push_back(i);
    std::vector<Polyhedron> parts;
    for (std::size_t i : active) parts.push_back(slice_plus(i, eps));
    for (std::size_t j = 0; j < active.size(); ++j) {
      const auto it = lastPart.find(active[j]);
      if (it != lastPart.end() && !is_subset(parts[j], it->second))
        throw internal_error("eps_limit: slice grew as eps decreased");
      lastPart.insert_or_assign(active[j], parts[j]);
    }
    TraceStep step;
    step.eps = eps;
    step.active = active;
    step.includesLimit = any_limit(inputs, active);
    step.set = hull_union(parts);
    out.trace.push_back(std::move(step));

    if (active != active0) continue;
    bool settled = true;
    for (std::size_t j = 0; settled && j < active.size(); ++j)
      settled = equals(parts[j], out.pieces[j]);
    if (settled) {
      certified = true;
      out.notes.push_back("engine: active set frozen at eps=" + format_rat(eps) +
                          " with slices equal to their eps=0 sets");
    } else if (++postFreeze >= 3) {
      certified = true;
      out.notes.push_back(
          "engine: active set frozen at eps=" + format_rat(eps) +
          "; slices still contracting, and since their rows vary only in the "
          "right-hand side the limit equals the eps=0 sets");
    }
  }
  if (!certified) {
    out.exact = false;
    out.notes.push_back(
        "engine: the active set did not freeze within the step cap; returning "
        "the eps=0 set, flagged inexact");
  }
  TraceStep final0;
  final0.eps = 0;
  final0.active = active0;
  final0.includesLimit = any_limit(inputs, active0);
  final0.set = out.set;
  out.trace.push_back(std::move(final0));
  return out;
}

namespace {

struct Prepared {
  std::vector<MemberView> views;
  SupResult sup;
  FnValue fx;
  std::vector<Rat> gaps;
};

Prepared prepare(const IndexedFamily& fam, const VecQ& x,
                 const CalcOptions& opts) {
  Prepared p;
  p.views = member_views(fam, opts.gridOverride);
  p.sup = sup_function(fam, opts.gridOverride);
  if (x.size() != p.sup.f.dim)
    throw std::invalid_argument("subdiff: point dimension mismatch");
  p.fx = eval(p.sup.f, x);
  if (p.fx.finite) {
    for (const MemberView& v : p.views) {
      const FnValue val = eval(v.fn, x);
      if (!val.finite)
        throw internal_error("member value not finite below a finite supremum");
      p.gaps.push_back(p.fx.value - val.value);
    }
  }
  return p;
}

ActiveSet snapshot(const Prepared& p, const IndexedFamily& fam, const Rat& eps) {
  ActiveSet as;
  as.eps = eps;
  if (!p.fx.finite) return as;
  const auto* fin = std::get_if<FiniteFamily>(&fam);
  for (std::size_t i = 0; i < p.views.size(); ++i) {
    if (p.gaps[i] > eps) continue;
    if (p.views[i].is_limit) {
      as.includesLimit = true;
      continue;
    }
    as.indices.emplace_back(i, p.gaps[i]);
    if (fin && fin->omega && *fin->omega == i) as.includesLimit = true;
  }
  return as;
}

bool in_interior(const HRep& h, const VecQ& x) {
  for (const HRow& row : h.rows) {
    bool zero = true;
    for (Eigen::Index j = 0; j < row.a.size(); ++j)
      if (row.a[j] != 0) zero = false;
    if (zero) {
      if (row.b < 0 || (row.strict && row.b <= 0)) return false;
      continue;
    }
    if (!(row.a.dot(x) < row.b)) return false;
  }
  return true;
}

struct Surrogacy {
  bool exact = true;
  std::vector<std::string> notes;
};

Surrogacy classify(const IndexedFamily& fam, const CalcOptions& opts) {
  Surrogacy s;
  if (std::holds_alternative<SequenceFamily>(fam)) {
    s.notes.push_back(
        "surrogate: the sequence is its stored prefix plus the declared "
        "limit; exact when the declared limit dominates the tail");
  } else if (const auto* par = std::get_if<ParametricFamily>(&fam)) {
    s.exact = false;
    s.notes.push_back(
        "surrogate: parametric index set discretized on a grid of " +
        std::to_string(opts.gridOverride.value_or(par->grid)) +
        " points; exactness applies to the discretized family only");
  }
  return s;
}

SubdiffResult shell(const std::string& formula, const Prepared& p,
                    const IndexedFamily& fam, const Surrogacy& s) {
  SubdiffResult r;
  r.formula = formula;
  r.set = make_empty(p.sup.f.dim);
  r.exact = s.exact;
  r.notes = s.notes;
  for (const std::string& w : p.sup.warnings) r.notes.push_back(w);
  r.activeSnapshot = snapshot(p, fam, 0);
  return r;
}

/** Handles the f(x) ∉ R convention; true when the caller should return. */
bool finite_gate(SubdiffResult& r, const Prepared& p) {
  if (p.fx.finite) return false;
  r.notes.push_back(
      "convention: f(x) is not finite, so the subdifferential is empty");
  return true;
}

HRep subspace_rows(const std::vector<VecQ>& L, Eigen::Index n) {
  HRep h;
  h.dim = n;
  for (const VecQ& w : orth_complement(L, n)) {
    h.rows.push_back(HRow{w, 0, false});
    h.rows.push_back(HRow{VecQ(-w), 0, false});
  }
  return h;
}

void check_L(const std::vector<VecQ>& L, const VecQ& x, Surrogacy& s) {
  if (L.empty()) return;
  if (!in_span(L, x))
    throw hypothesis_error("the restriction subspace L must contain x");
  s.notes.push_back("checked: x lies in the restriction subspace L");
}

PolyFunc restricted_member(const PolyFunc& fn, const std::vector<VecQ>& L,
                           const HRep& domSup) {
  if (L.empty()) return restrict_to(fn, domSup);
  return restrict_to(fn, L, domSup);
}

enum class NormalKind { none, domF, LdomF };

struct EngineSpec {
  const char* name;
  bool restricted;
  bool hullInside;
  NormalKind normal;
  bool needCll;
};

SubdiffResult run_engine_formula(const EngineSpec& spec,
                                 const IndexedFamily& fam, const VecQ& x,
                                 const CalcOptions& opts) {
  Surrogacy s = classify(fam, opts);
  if (spec.needCll) {
    if (!closure_condition_check(fam, opts.gridOverride))
      throw hypothesis_error(std::string("closure condition (cll) fails: "
                                         "cl(sup f_t) differs from sup(cl "
                                         "f_t); ") +
                             spec.name + " requires it (f1 and fe2 do not)");
    s.notes.push_back("checked: closure condition (cll) holds");
  }
  Prepared p = prepare(fam, x, opts);
  check_L(opts.L, x, s);
  SubdiffResult r = shell(spec.name, p, fam, s);
  if (finite_gate(r, p)) return r;

  const Eigen::Index n = p.sup.f.dim;
  Polyhedron normal = make_point(zero_vec(n));
  if (spec.normal == NormalKind::domF) {
    normal = normal_cone_rows(p.sup.f.domain, x).set;
  } else if (spec.normal == NormalKind::LdomF) {
    const HRep rows = opts.L.empty()
                          ? p.sup.f.domain
                          : concat(subspace_rows(opts.L, n), p.sup.f.domain);
    normal = normal_cone_rows(rows, x).set;
  }
  if (normal.is_empty())
    throw internal_error("normal cone empty at a domain point");

  std::vector<EpsLimitInput> inputs;
  for (std::size_t i = 0; i < p.views.size(); ++i) {
    const PolyFunc g = spec.restricted
                           ? restricted_member(p.views[i].fn, opts.L,
                                               p.sup.f.domain)
                           : p.views[i].fn;
    const FnValue gv = eval(g, x);
    if (!gv.finite) throw internal_error("restricted member not finite at x");
    EpsLimitInput in;
    in.label = p.views[i].label;
    in.lifted = lifted_eps_subdiff_given(conjugate(g), gv.value, x);
    in.gap = p.gaps[i];
    in.viewIndex = i;
    in.isLimit = p.views[i].is_limit;
    inputs.push_back(std::move(in));
  }
  if (spec.restricted)
    r.notes.push_back(
        "members restricted by the indicator of L intersected with dom f (L defaults to the "
        "full space)");

  EpsLimitOutput eng = eps_limit(inputs, normal, spec.hullInside, opts.epsCap);
  r.set = eng.set;
  r.epsTrace = std::move(eng.trace);
  if (!spec.hullInside) r.preHull = std::move(eng.pieces);
  r.exact = r.exact && eng.exact;
  for (const std::string& note : eng.notes) r.notes.push_back(note);
  return r;
}

SubdiffResult form5_core(const std::string& name, const IndexedFamily& fam,
                         const VecQ& x, const CalcOptions& opts, Surrogacy s) {
  Prepared p = prepare(fam, x, opts);
  check_L(opts.L, x, s);
  SubdiffResult r = shell(name, p, fam, s);
  if (finite_gate(r, p)) return r;

  std::vector<Polyhedron> parts;
  for (std::size_t i = 0; i < p.views.size(); ++i) {
    if (p.gaps[i] != 0) continue;
    const PolyFunc g =
        restricted_member(p.views[i].fn, opts.L, p.sup.f.domain);
    parts.push_back(eps_subdiff(g, x, 0));
  }
  r.notes.push_back(
      "members restricted by the indicator of L intersected with dom f (L defaults to the "
      "full space)");
  if (parts.empty()) {
    r.notes.push_back("active set empty; nothing to hull");
    return r;
  }
  r.set = hull_union(parts);
  r.preHull = std::move(parts);
  return r;
}

}  // namespace

SubdiffResult subdiff_valadier(const IndexedFamily& fam, const VecQ& x,
                               const CalcOptions& opts) {
  Surrogacy s = classify(fam, opts);
  if (std::holds_alternative<SequenceFamily>(fam)) {
    s.exact = false;
    s.notes.push_back(
        "surrogate: Valadier's formula ranges over exactly active members of "
        "the stored prefix; the declared limit is not an index of T");
  }
  Prepared p = prepare(fam, x, opts);
  SubdiffResult r = shell("valadier", p, fam, s);
  if (finite_gate(r, p)) return r;
  if (!in_interior(p.sup.f.domain, x))
    r.notes.push_back(
        "warning: x is not interior to dom f, so continuity of f at x is not "
        "guaranteed; Valadier's formula assumes it");
  std::vector<Polyhedron> parts;
  for (std::size_t i = 0; i < p.views.size(); ++i) {
    if (p.views[i].is_limit || p.gaps[i] != 0) continue;
    parts.push_back(eps_subdiff(p.views[i].fn, x, 0));
  }
  if (parts.empty()) {
    r.notes.push_back("active set empty; use the compactified formula");
    return r;
  }
  r.set = hull_union(parts);
  r.preHull = std::move(parts);
  return r;
}

SubdiffResult subdiff_form5(const IndexedFamily& fam, const VecQ& x,
                            const CalcOptions& opts) {
  if (std::holds_alternative<SequenceFamily>(fam))
    throw hypothesis_error(
        "form5 needs a compact index surrogate (finite or discretized "
        "parametric); use the compactified formula for sequences");
  return form5_core("form5", fam, x, opts, classify(fam, opts));
}

SubdiffResult subdiff_fe1(const IndexedFamily& fam, const VecQ& x,
                          const CalcOptions& opts) {
  return run_engine_formula(
      {"fe1", false, true, NormalKind::domF, true}, fam, x, opts);
}

SubdiffResult subdiff_fe2(const IndexedFamily& fam, const VecQ& x,
                          const CalcOptions& opts) {
  return run_engine_formula(
      {"fe2", true, true, NormalKind::none, false}, fam, x, opts);
}

SubdiffResult subdiff_f1(const IndexedFamily& fam, const VecQ& x,
                         const CalcOptions& opts) {
  return run_engine_formula(
      {"f1", true, false, NormalKind::none, false}, fam, x, opts);
}

SubdiffResult subdiff_f1b(const IndexedFamily& fam, const VecQ& x,
                          const CalcOptions& opts) {
  return run_engine_formula(
      {"f1b", false, false, NormalKind::LdomF, true}, fam, x, opts);
}

SubdiffResult subdiff_khay(const IndexedFamily& fam, const VecQ& x,
                           const CalcOptions& opts) {
  Prepared p = prepare(fam, x, opts);
  if (!interior_point(p.sup.f.domain))
    throw hypothesis_error(
        "f is nowhere continuous: dom f has no interior point, so the "
        "continuity hypothesis cannot be verified");
  SubdiffResult r = run_engine_formula(
      {"khay", false, false, NormalKind::none, false}, fam, x, opts);
  r.notes.push_back(
      "checked: dom f has an interior point, where a finite max of affine "
      "pieces is continuous");
  if (p.fx.finite) {
    const Polyhedron ndom = normal_cone_rows(p.sup.f.domain, x).set;
    r.set = minkowski_sum(r.set, ndom);
    r.notes.push_back(
        "normal cone of dom f added outside the hull; the hull of finitely "
        "many polyhedra is already closed, so no closure step is needed");
  }
  return r;
}

SubdiffResult subdiff_brondsted(const IndexedFamily& fam, const VecQ& x,
                                const CalcOptions& opts) {
  if (!std::holds_alternative<FiniteFamily>(fam))
    throw hypothesis_error(
        "the Brondsted formula is stated for finite families with T = T(x)");
  Prepared p = prepare(fam, x, opts);
  if (!in_interior(p.sup.f.domain, x))
    throw hypothesis_error(
        "the Brondsted formula assumes f continuous near x; x is not "
        "interior to dom f");
  if (!p.fx.finite)
    throw internal_error("interior domain point with non-finite value");
  for (const Rat& gap : p.gaps)
    if (gap != 0)
      throw hypothesis_error(
          "the Brondsted formula assumes every member exactly active at x "
          "(T = T(x)); some member has a positive gap");
  SubdiffResult r = run_engine_formula(
      {"brondsted", false, true, NormalKind::none, false}, fam, x, opts);
  r.notes.push_back("checked: f continuous near x (x interior to dom f)");
  r.notes.push_back("checked: every member exactly active at x");
  return r;
}

SubdiffResult subdiff_compactified(const IndexedFamily& fam, const VecQ& x,
                                   bool useTilde, const CalcOptions& opts) {
  const std::string name = useTilde ? "compactified-tilde" : "compactified";
  if (const auto* seq = std::get_if<SequenceFamily>(&fam)) {
    Surrogacy s;
    s.notes.push_back(
        "surrogate: the compactification point is realized by the declared "
        "limit, appended as the omega member");
    if (useTilde)
      s.notes.push_back(
          "tilde selection: prefix filtered to the members exactly active at "
          "x; for declared-limit families the result coincides with the "
          "unfiltered compactified formula");
    {
      IndexedFamily probe = fam;
      for (const std::string& w : sup_function(probe).warnings)
        s.notes.push_back(w);
    }
    const IndexedFamily aug = augmented_family(*seq, useTilde, &x);
    return form5_core(name, aug, x, opts, std::move(s));
  }
  Surrogacy s = classify(fam, opts);
  if (std::holds_alternative<ParametricFamily>(fam)) {
    s.notes.push_back(
        "a compact parametric index set is its own compactification; "
        "evaluating the grid surrogate");
  } else {
    s.notes.push_back(
        "finite family: the compactified formula reduces to the finite-index "
        "formula");
  }
  if (useTilde && !std::holds_alternative<SequenceFamily>(fam))
    s.notes.push_back(
        "tilde selection applies to sequence families; no effect here");
  return form5_core(name, fam, x, opts, std::move(s));
}

const std::vector<std::string>& formula_names() {
  static const std::vector<std::string> names = {
      "valadier", "form5", "fe1",       "fe2",          "f1",
      "f1b",      "khay",  "brondsted", "compactified", "compactified-tilde"};
  return names;
}

SubdiffResult subdiff_by_name(const std::string& id, const IndexedFamily& fam,
                              const VecQ& x, const CalcOptions& opts) {
  if (id == "valadier") return subdiff_valadier(fam, x, opts);
  if (id == "form5") return subdiff_form5(fam, x, opts);
  if (id == "fe1") return subdiff_fe1(fam, x, opts);
  if (id == "fe2") return subdiff_fe2(fam, x, opts);
  if (id == "f1") return subdiff_f1(fam, x, opts);
  if (id == "f1b") return subdiff_f1b(fam, x, opts);
  if (id == "khay") return subdiff_khay(fam, x, opts);
  if (id == "brondsted") return subdiff_brondsted(fam, x, opts);
  if (id == "compactified") return subdiff_compactified(fam, x, false, opts);
  if (id == "compactified-tilde")
    return subdiff_compactified(fam, x, true, opts);
  throw std::invalid_argument("unknown formula: " + id);
}

}  // namespace supdiff
