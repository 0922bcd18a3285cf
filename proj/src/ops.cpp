#include "supdiff/ops.hpp"

#include <algorithm>

namespace supdiff {

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim != b.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (a.is_empty() || b.is_empty()) return make_empty(a.dim);
  VRep v;
  v.dim = a.dim;
  for (const VecQ& p : a.v.vertices)
    for (const VecQ& q : b.v.vertices) v.vertices.push_back(p + q);
  v.rays = a.v.rays;
  v.rays.insert(v.rays.end(), b.v.rays.begin(), b.v.rays.end());
  v.lineality = a.v.lineality;
  v.lineality.insert(v.lineality.end(), b.v.lineality.begin(), b.v.lineality.end());
  return from_v(v);
}

Polyhedron hull_union(const std::vector<Polyhedron>& parts) {
  if (parts.empty()) throw std::invalid_argument("hull_union: no parts");
  VRep v;
  v.dim = parts.front().dim;
  for (const Polyhedron& p : parts) {
    if (p.dim != v.dim) throw std::invalid_argument("hull_union: dimension mismatch");
    if (p.is_empty()) continue;
    v.vertices.insert(v.vertices.end(), p.v.vertices.begin(), p.v.vertices.end());
    v.rays.insert(v.rays.end(), p.v.rays.begin(), p.v.rays.end());
    v.lineality.insert(v.lineality.end(), p.v.lineality.begin(), p.v.lineality.end());
  }
  if (v.vertices.empty()) return make_empty(v.dim);
  return from_v(v);
}

NormalConeResult normal_cone_rows(const HRep& dom, const VecQ& x) {
  NormalConeResult res;
  if (!hrep_contains(dom, x, false)) {
    res.outside_closure = true;
    res.set = make_empty(dom.dim);
    return res;
  }
  if (!hrep_contains(dom, x, true)) {
    res.set = make_empty(dom.dim);
    return res;
  }
  VRep v;
  v.dim = dom.dim;
  v.vertices.push_back(zero_vec(dom.dim));
  for (const HRow& row : dom.rows)
    if (row.a.dot(x) == row.b) v.rays.push_back(row.a);
  res.set = from_v(v);
  return res;
}

NormalConeResult normal_cone(const Polyhedron& a, const VecQ& x) {
  return normal_cone_rows(a.h, x);
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
  return from_h(concat(a.h, b.h));
}

Polyhedron polar(const Polyhedron& a) {
  HRep h;
  h.dim = a.dim;
  for (const VecQ& vert : a.v.vertices) h.rows.push_back({vert, Rat(1), false});
  for (const VecQ& r : a.v.rays) h.rows.push_back({r, Rat(0), false});
  for (const VecQ& l : a.v.lineality) {
    h.rows.push_back({l, Rat(0), false});
    h.rows.push_back({VecQ(-l), Rat(0), false});
  }
  return from_h(h);
}

bool contains(const Polyhedron& a, const VecQ& x) {
  if (a.is_empty()) return false;
  return hrep_contains(a.h, x, true);
}

bool is_subset(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim != b.dim) throw std::invalid_argument("is_subset: dimension mismatch");
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  for (const HRow& row : b.facets.rows) {
    for (const VecQ& vert : a.v.vertices)
      if (!(row.a.dot(vert) <= row.b)) return false;
    for (const VecQ& r : a.v.rays)
      if (!(row.a.dot(r) <= 0)) return false;
    for (const VecQ& l : a.v.lineality)
      if (row.a.dot(l) != 0) return false;
  }
  return true;
}

bool equals(const Polyhedron& a, const Polyhedron& b) {
  return is_subset(a, b) && is_subset(b, a);
}

namespace {

bool row_trivial(const HRow& row) {
  for (Eigen::Index j = 0; j < row.a.size(); ++j)
    if (row.a[j] != 0) return false;
  if (row.strict) return row.b > 0;
  return row.b >= 0;
}

bool row_infeasible_constant(const HRow& row) {
  for (Eigen::Index j = 0; j < row.a.size(); ++j)
    if (row.a[j] != 0) return false;
  if (row.strict) return row.b <= 0;
  return row.b < 0;
}

/** Drops rows implied by the closures of the remaining rows. */
void prune_rows(HRep& h) {
  for (size_t i = 0; i < h.rows.size();) {
    HRep others;
    others.dim = h.dim;
    for (size_t j = 0; j < h.rows.size(); ++j)
      if (j != i) others.rows.push_back(h.rows[j]);
    const HRow& row = h.rows[i];
    const LpResult r = lp_solve(row.a, cleared(others), LpSense::maximize);
    bool implied = false;
    if (r.status == LpStatus::infeasible) implied = true;
    if (r.status == LpStatus::optimal &&
        (r.value < row.b || (r.value == row.b && !row.strict)))
      implied = true;
    if (implied)
      h.rows.erase(h.rows.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
}

}  // namespace

HRep project_rows(const HRep& h, const std::vector<Eigen::Index>& coords) {
  std::vector<bool> keep(static_cast<size_t>(h.dim), false);
  for (Eigen::Index c : coords) {
    if (c < 0 || c >= h.dim) throw std::invalid_argument("project: coordinate out of range");
    keep[static_cast<size_t>(c)] = true;
  }
  HRep cur = h;
  for (Eigen::Index drop = h.dim - 1; drop >= 0; --drop) {
    if (keep[static_cast<size_t>(drop)]) continue;
    std::vector<HRow> pos, neg, zero;
    for (const HRow& row : cur.rows) {
      if (row.a[drop] > 0)
        pos.push_back(row);
      else if (row.a[drop] < 0)
        neg.push_back(row);
      else
        zero.push_back(row);
    }
    HRep next;
    next.dim = cur.dim;
    next.rows = zero;
    for (const HRow& p : pos) {
      for (const HRow& q : neg) {
        HRow combo;
        combo.a = (-q.a[drop]) * p.a + p.a[drop] * q.a;
        combo.b = (-q.a[drop]) * p.b + p.a[drop] * q.b;
        combo.strict = p.strict || q.strict;
        if (row_infeasible_constant(combo)) return empty_h(static_cast<Eigen::Index>(coords.size()));
        if (!row_trivial(combo)) next.rows.push_back(combo);
      }
    }
    prune_rows(next);
    cur = next;
  }
  HRep out;
  out.dim = static_cast<Eigen::Index>(coords.size());
  for (const HRow& row : cur.rows) {
    HRow nr;
    nr.a = VecQ(out.dim);
    for (size_t k = 0; k < coords.size(); ++k) nr.a[static_cast<Eigen::Index>(k)] = row.a[coords[k]];
    nr.b = row.b;
    nr.strict = row.strict;
    if (row_infeasible_constant(nr)) return empty_h(out.dim);
    if (!row_trivial(nr)) out.rows.push_back(nr);
  }
  return out;
}

Polyhedron project(const Polyhedron& a, const std::vector<Eigen::Index>& coords) {
  if (a.is_empty()) return make_empty(static_cast<Eigen::Index>(coords.size()));
  return from_h(project_rows(a.h, coords));
}

Polyhedron slice_last(const Polyhedron& lifted, const Rat& e) {
  const Eigen::Index d = lifted.dim - 1;
  HRep h;
  h.dim = d;
  for (const HRow& row : lifted.h.rows) {
    HRow nr;
    nr.a = row.a.head(d);
    nr.b = row.b - row.a[d] * e;
    nr.strict = row.strict;
    if (row_infeasible_constant(nr)) return make_empty(d);
    if (!row_trivial(nr)) h.rows.push_back(nr);
  }
  return from_h(h);
}

Polyhedron translate(const Polyhedron& a, const VecQ& t) {
  if (a.is_empty()) return make_empty(a.dim);
  VRep v = a.v;
  for (VecQ& vert : v.vertices) vert += t;
  return from_v(v);
}

Polyhedron conic_hull(const std::vector<Polyhedron>& parts) {
  if (parts.empty()) throw std::invalid_argument("conic_hull: no parts");
  VRep v;
  v.dim = parts.front().dim;
  v.vertices.push_back(zero_vec(v.dim));
  for (const Polyhedron& p : parts) {
    if (p.is_empty()) continue;
    for (const VecQ& vert : p.v.vertices) {
      bool zero = true;
      for (Eigen::Index j = 0; j < vert.size(); ++j)
        if (vert[j] != 0) zero = false;
      if (!zero) v.rays.push_back(vert);
    }
    v.rays.insert(v.rays.end(), p.v.rays.begin(), p.v.rays.end());
    v.lineality.insert(v.lineality.end(), p.v.lineality.begin(), p.v.lineality.end());
  }
  return from_v(v);
}

}  // namespace supdiff
