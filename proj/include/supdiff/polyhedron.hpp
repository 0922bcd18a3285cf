#pragma once

#include "supdiff/rational.hpp"

namespace supdiff {

/**
 * One linear condition ⟨a, x⟩ ≤ b, or ⟨a, x⟩ < b when strict is set.
 * Strict rows exist solely to represent non-closed domains of functions.
 */
struct HRow {
  VecQ a;
  Rat b;
  bool strict = false;
};

struct HRep {
  Eigen::Index dim = 0;
  std::vector<HRow> rows;
};

/**
 * Generator description co(vertices) + cone(rays) + span(lineality).
 * A V-rep always denotes a closed set; it is empty iff vertices is empty.
 */
struct VRep {
  Eigen::Index dim = 0;
  std::vector<VecQ> vertices;
  std::vector<VecQ> rays;
  std::vector<VecQ> lineality;
};

/**
 * A polyhedron carrying three coordinated descriptions:
 *  - h: the rows it was constructed from (may contain strict rows),
 *  - facets: canonical non-strict facet rows of the closure,
 *  - v: canonical minimal generators of the closure.
 * The closure described by facets and v is always the same set, and it is
 * the closure of the (possibly non-closed) set described by h.
 */
struct Polyhedron {
  Eigen::Index dim = 0;
  HRep h;
  HRep facets;
  VRep v;

  bool is_empty() const { return v.vertices.empty(); }
};

HRep full_space_h(Eigen::Index dim);
HRep empty_h(Eigen::Index dim);

/** Membership in the set described by rows; strict rows honored by default. */
bool hrep_contains(const HRep& h, const VecQ& x, bool respect_strict = true);

HRep cleared(const HRep& h);
HRep concat(const HRep& a, const HRep& b);

/** Builds both canonical descriptions from rows via double description. */
Polyhedron from_h(const HRep& h);

/** Builds both canonical descriptions from generators via double description. */
Polyhedron from_v(const VRep& v);

Polyhedron make_empty(Eigen::Index dim);
Polyhedron make_full(Eigen::Index dim);
Polyhedron make_point(const VecQ& x);

/** Ensures both representations are present; identity in this implementation. */
Polyhedron dd_convert(const Polyhedron& p);

}  // namespace supdiff
