#include "supdiff/polyhedron.hpp"

#include <algorithm>

#include "supdiff/dd.hpp"
#include "supdiff/linalg.hpp"

namespace supdiff {

namespace {

/** Zeroes the pivot coordinates of w against a canonical RREF basis. */
VecQ reduce_mod_span(VecQ w, const std::vector<VecQ>& basis) {
  for (const VecQ& l : basis) {
    Eigen::Index piv = -1;
    for (Eigen::Index j = 0; j < l.size(); ++j) {
      if (l[j] != 0) {
        piv = j;
        break;
      }
    }
    if (piv < 0) continue;
    const Rat c = w[piv] / l[piv];
    w -= c * l;
  }
  return w;
}

VRep v_from_rows(const HRep& h) {
  const Eigen::Index d = h.dim;
  std::vector<VecQ> lifted;
  for (const HRow& row : h.rows) {
    VecQ m(d + 1);
    m.head(d) = row.a;
    m[d] = -row.b;
    lifted.push_back(m);
  }
  {
    VecQ m = zero_vec(d + 1);
    m[d] = -1;
    lifted.push_back(m);
  }
  const ConeGenerators cone = dd_cone(lifted, d + 1);

  VRep v;
  v.dim = d;
  std::vector<VecQ> lin_heads;
  for (const VecQ& l : cone.lin) {
    if (l[d] != 0) throw internal_error("v_from_rows: lineality escapes the lift");
    lin_heads.push_back(l.head(d));
  }
  v.lineality = canonical_span_basis(lin_heads, d);

  for (const VecQ& r : cone.rays) {
    if (r[d] < 0) throw internal_error("v_from_rows: generator below the lift");
    if (r[d] > 0) {
      VecQ vert = r.head(d) / r[d];
      v.vertices.push_back(reduce_mod_span(std::move(vert), v.lineality));
    } else {
      VecQ dir = reduce_mod_span(r.head(d), v.lineality);
      bool zero = true;
      for (Eigen::Index j = 0; j < d; ++j)
        if (dir[j] != 0) zero = false;
      if (!zero) v.rays.push_back(primitive(dir));
    }
  }
  sort_unique(v.vertices);
  sort_unique(v.rays);
  if (v.vertices.empty()) {
    v.rays.clear();
    v.lineality.clear();
  }
  return v;
}

HRep facets_from_v(const VRep& v) {
  const Eigen::Index d = v.dim;
  HRep out;
  out.dim = d;
  if (v.vertices.empty()) {
    HRow row;
    row.a = zero_vec(d);
    row.b = -1;
    out.rows.push_back(row);
    return out;
  }
  std::vector<VecQ> rows;
  auto lift = [&](const VecQ& head, const Rat& last) {
    VecQ m(d + 1);
    m.head(d) = head;
    m[d] = last;
    rows.push_back(m);
  };
  for (const VecQ& vert : v.vertices) lift(vert, 1);
  for (const VecQ& r : v.rays) lift(r, 0);
  for (const VecQ& l : v.lineality) {
    lift(l, 0);
    lift(-l, 0);
  }
  const ConeGenerators polar = dd_cone(rows, d + 1);

  auto add_row = [&](const VecQ& g) {
    VecQ a = g.head(d);
    bool zero = true;
    for (Eigen::Index j = 0; j < d; ++j)
      if (a[j] != 0) zero = false;
    if (zero) {
      if (-g[d] < 0) throw internal_error("facets_from_v: infeasible facet for nonempty set");
      return;
    }
    VecQ joint(d + 1);
    joint.head(d) = a;
    joint[d] = -g[d];
    joint = primitive(joint);
    HRow row;
    row.a = joint.head(d);
    row.b = joint[d];
    out.rows.push_back(row);
  };
  for (const VecQ& g : polar.rays) add_row(g);
  for (const VecQ& g : polar.lin) {
    add_row(g);
    add_row(-g);
  }
  std::sort(out.rows.begin(), out.rows.end(), [](const HRow& x, const HRow& y) {
    if (!vec_eq(x.a, y.a)) return lex_less(x.a, y.a);
    return x.b < y.b;
  });
  out.rows.erase(std::unique(out.rows.begin(), out.rows.end(),
                             [](const HRow& x, const HRow& y) {
                               return vec_eq(x.a, y.a) && x.b == y.b;
                             }),
                 out.rows.end());
  return out;
}

}  // namespace

HRep full_space_h(Eigen::Index dim) {
  HRep h;
  h.dim = dim;
  return h;
}

HRep empty_h(Eigen::Index dim) {
  HRep h;
  h.dim = dim;
  HRow row;
  row.a = zero_vec(dim);
  row.b = -1;
  h.rows.push_back(row);
  return h;
}

bool hrep_contains(const HRep& h, const VecQ& x, bool respect_strict) {
  if (x.size() != h.dim) throw internal_error("hrep_contains: dimension mismatch");
  for (const HRow& row : h.rows) {
    const Rat lhs = row.a.dot(x);
    if (respect_strict && row.strict) {
      if (!(lhs < row.b)) return false;
    } else {
      if (!(lhs <= row.b)) return false;
    }
  }
  return true;
}

HRep cleared(const HRep& h) {
  HRep out = h;
  for (HRow& row : out.rows) row.strict = false;
  return out;
}

HRep concat(const HRep& a, const HRep& b) {
  if (a.dim != b.dim) throw internal_error("concat: dimension mismatch");
  HRep out = a;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  return out;
}

Polyhedron from_h(const HRep& h) {
  Polyhedron p;
  p.dim = h.dim;
  p.h = h;
  p.v = v_from_rows(cleared(h));
  p.facets = facets_from_v(p.v);
  return p;
}

Polyhedron from_v(const VRep& raw) {
  VRep clean;
  clean.dim = raw.dim;
  clean.vertices = raw.vertices;
  for (const VecQ& r : raw.rays) {
    bool zero = true;
    for (Eigen::Index j = 0; j < r.size(); ++j)
      if (r[j] != 0) zero = false;
    if (!zero) clean.rays.push_back(primitive(r));
  }
  for (const VecQ& l : raw.lineality) {
    bool zero = true;
    for (Eigen::Index j = 0; j < l.size(); ++j)
      if (l[j] != 0) zero = false;
    if (!zero) clean.lineality.push_back(l);
  }
  sort_unique(clean.vertices);
  sort_unique(clean.rays);

  Polyhedron p;
  p.dim = raw.dim;
  if (clean.vertices.empty()) {
    p.h = empty_h(raw.dim);
    p.facets = p.h;
    p.v.dim = raw.dim;
    return p;
  }
  p.facets = facets_from_v(clean);
  p.h = p.facets;
  p.v = v_from_rows(p.facets);
  return p;
}

Polyhedron make_empty(Eigen::Index dim) {
  return from_h(empty_h(dim));
}

Polyhedron make_full(Eigen::Index dim) {
  return from_h(full_space_h(dim));
}

Polyhedron make_point(const VecQ& x) {
  VRep v;
  v.dim = x.size();
  v.vertices.push_back(x);
  return from_v(v);
}

Polyhedron dd_convert(const Polyhedron& p) {
  return p;
}

}  // namespace supdiff
