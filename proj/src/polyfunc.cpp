#include "supdiff/polyfunc.hpp"

#include "supdiff/linalg.hpp"
#include "supdiff/lp.hpp"

namespace supdiff {

PolyFunc make_infinite(Eigen::Index dim) {
  PolyFunc f;
  f.dim = dim;
  f.domain = empty_h(dim);
  return f;
}

PolyFunc indicator(const HRep& domain) {
  PolyFunc f;
  f.dim = domain.dim;
  f.pieces.push_back(AffinePiece{zero_vec(domain.dim), 0});
  f.domain = domain;
  return f;
}

FnValue eval(const PolyFunc& f, const VecQ& x) {
  if (x.size() != f.dim) throw std::invalid_argument("eval: dimension mismatch");
  if (!hrep_contains(f.domain, x, true)) return {false, 0};
  Rat best = 0;
  bool seen = false;
  for (const AffinePiece& p : f.pieces) {
    const Rat v = p.a.dot(x) + p.b;
    if (!seen || v > best) {
      best = v;
      seen = true;
    }
  }
  return {true, best};
}

bool is_proper(const PolyFunc& f) { return hrep_strict_feasible(f.domain); }

PolyFunc closure(const PolyFunc& f) {
  if (!is_proper(f)) return make_infinite(f.dim);
  PolyFunc g = f;
  g.domain = cleared(f.domain);
  return g;
}

bool is_lsc(const PolyFunc& f) {
  if (!is_proper(f)) return true;
  const HRep closed = cleared(f.domain);
  for (const HRow& row : f.domain.rows) {
    if (!row.strict) continue;
    const LpResult r = lp_solve(row.a, closed, LpSense::maximize);
    if (r.status == LpStatus::optimal && r.value == row.b) return false;
    if (r.status == LpStatus::unbounded)
      throw internal_error("is_lsc: row unbounded over its own clearing");
  }
  return true;
}

Polyhedron effective_domain(const PolyFunc& f) { return from_h(f.domain); }

Polyhedron closed_epigraph(const PolyFunc& f) {
  HRep h;
  h.dim = f.dim + 1;
  for (const AffinePiece& p : effective_pieces(f)) {
    HRow row;
    row.a = zero_vec(f.dim + 1);
    row.a.head(f.dim) = p.a;
    row.a[f.dim] = -1;
    row.b = -p.b;
    h.rows.push_back(std::move(row));
  }
  const HRep dom = is_proper(f) ? cleared(f.domain) : f.domain;
  for (const HRow& d : dom.rows) {
    HRow row;
    row.a = zero_vec(f.dim + 1);
    row.a.head(f.dim) = d.a;
    row.b = d.b;
    h.rows.push_back(std::move(row));
  }
  return from_h(h);
}

PolyFunc conjugate(const PolyFunc& f) {
  if (!is_proper(f))
    throw hypothesis_error("conjugate: function is identically +infinity");
  const Polyhedron epi = closed_epigraph(f);
  if (epi.is_empty()) throw internal_error("conjugate: empty epigraph of a proper function");

  PolyFunc g;
  g.dim = f.dim;
  g.domain.dim = f.dim;
  for (const VecQ& vert : epi.v.vertices) {
    AffinePiece p;
    p.a = vert.head(f.dim);
    p.b = -vert[f.dim];
    g.pieces.push_back(std::move(p));
  }
  auto push_row = [&g, &f](const VecQ& gen, bool flip) {
    HRow row;
    row.a = flip ? VecQ(-gen.head(f.dim)) : VecQ(gen.head(f.dim));
    row.b = flip ? Rat(-gen[f.dim]) : gen[f.dim];
    bool zero = true;
    for (Eigen::Index j = 0; j < f.dim; ++j)
      if (row.a[j] != 0) zero = false;
    if (zero) {
      if (row.b >= 0) return;  // trivial, e.g. the vertical ray (0, 1)
      throw internal_error("conjugate: generator forces an empty domain");
    }
    g.domain.rows.push_back(std::move(row));
  };
  for (const VecQ& ray : epi.v.rays) push_row(ray, false);
  for (const VecQ& lin : epi.v.lineality) {
    push_row(lin, false);
    push_row(lin, true);
  }
  if (g.pieces.empty())
    throw internal_error("conjugate: epigraph without vertices");
  return g;
}

namespace {

/** Rows of {s : f*(s) − ⟨s, x⟩ ≤ ε − fx}, ε as a fixed value or a column. */
HRep subdiff_rows(const PolyFunc& conj, const Rat& fx, const VecQ& x,
                  const Rat* eps_value) {
  const Eigen::Index n = conj.dim;
  const bool lifted = eps_value == nullptr;
  HRep h;
  h.dim = lifted ? n + 1 : n;
  for (const AffinePiece& p : conj.pieces) {
    HRow row;
    row.a = zero_vec(h.dim);
    row.a.head(n) = p.a - x;
    if (lifted) {
      row.a[n] = -1;
      row.b = -p.b - fx;
    } else {
      row.b = *eps_value - p.b - fx;
    }
    h.rows.push_back(std::move(row));
  }
  for (const HRow& d : conj.domain.rows) {
    HRow row;
    row.a = zero_vec(h.dim);
    row.a.head(n) = d.a;
    row.b = d.b;
    h.rows.push_back(std::move(row));
  }
  if (lifted) {
    HRow row;
    row.a = zero_vec(h.dim);
    row.a[n] = -1;
    row.b = 0;
    h.rows.push_back(std::move(row));
  }
  return h;
}

}  // namespace

Polyhedron eps_subdiff_given(const PolyFunc& conj, const Rat& fx, const VecQ& x,
                             const Rat& eps) {
  return from_h(subdiff_rows(conj, fx, x, &eps));
}

Polyhedron eps_subdiff(const PolyFunc& f, const VecQ& x, const Rat& eps) {
  const FnValue fx = eval(f, x);
  if (!fx.finite) return make_empty(f.dim);
  return eps_subdiff_given(conjugate(f), fx.value, x, eps);
}

Polyhedron lifted_eps_subdiff_given(const PolyFunc& conj, const Rat& fx,
                                    const VecQ& x) {
  return from_h(subdiff_rows(conj, fx, x, nullptr));
}

Polyhedron lifted_eps_subdiff(const PolyFunc& f, const VecQ& x) {
  const FnValue fx = eval(f, x);
  if (!fx.finite) return make_empty(f.dim + 1);
  return lifted_eps_subdiff_given(conjugate(f), fx.value, x);
}

PolyFunc restrict_to(const PolyFunc& f, const HRep& extra) {
  if (extra.dim != f.dim) throw std::invalid_argument("restrict_to: dimension mismatch");
  PolyFunc g = f;
  g.domain = concat(f.domain, extra);
  return g;
}

PolyFunc restrict_to(const PolyFunc& f, const std::vector<VecQ>& L_basis,
                     const HRep& D) {
  HRep extra;
  extra.dim = f.dim;
  for (const VecQ& w : orth_complement(L_basis, f.dim)) {
    extra.rows.push_back(HRow{w, 0, false});
    extra.rows.push_back(HRow{VecQ(-w), 0, false});
  }
  return restrict_to(restrict_to(f, extra), D);
}

std::vector<AffinePiece> effective_pieces(const PolyFunc& f) {
  if (!f.pieces.empty()) return f.pieces;
  return {AffinePiece{zero_vec(f.dim), 0}};
}

namespace {

/** max over the a-domain of p − b ≤ 0, i.e. piece p never exceeds b there. */
bool piece_below(const AffinePiece& p, const PolyFunc& b, const HRep& dom) {
  const Eigen::Index n = dom.dim;
  HRep h;
  h.dim = n + 1;
  for (const AffinePiece& q : effective_pieces(b)) {
    HRow row;
    row.a = zero_vec(n + 1);
    row.a.head(n) = q.a - p.a;
    row.a[n] = 1;
    row.b = p.b - q.b;
    h.rows.push_back(std::move(row));
  }
  for (const HRow& d : dom.rows) {
    HRow row;
    row.a = zero_vec(n + 1);
    row.a.head(n) = d.a;
    row.b = d.b;
    h.rows.push_back(std::move(row));
  }
  VecQ obj = zero_vec(n + 1);
  obj[n] = 1;
  const LpResult r = lp_solve(obj, h, LpSense::maximize);
  if (r.status == LpStatus::infeasible)
    throw internal_error("piece_below: empty domain slipped through");
  return r.status == LpStatus::optimal && r.value <= 0;
}

}  // namespace

bool same_function_closed(const PolyFunc& a, const PolyFunc& b) {
  if (a.dim != b.dim) throw std::invalid_argument("same_function_closed: dimension mismatch");
  const bool pa = is_proper(a), pb = is_proper(b);
  if (!pa || !pb) return pa == pb;
  for (const HRow& row : a.domain.rows)
    if (row.strict) throw std::invalid_argument("same_function_closed: strict rows");
  for (const HRow& row : b.domain.rows)
    if (row.strict) throw std::invalid_argument("same_function_closed: strict rows");
  if (!equals(from_h(a.domain), from_h(b.domain))) return false;
  for (const AffinePiece& p : effective_pieces(a))
    if (!piece_below(p, b, a.domain)) return false;
  for (const AffinePiece& q : effective_pieces(b))
    if (!piece_below(q, a, b.domain)) return false;
  return true;
}

}  // namespace supdiff
