#pragma once

#include "supdiff/lp.hpp"
#include "supdiff/polyhedron.hpp"

namespace supdiff {

/** Normal cone of the set described by dom at x. */
struct NormalConeResult {
  Polyhedron set;
  bool outside_closure = false;
};

/** Result is empty as soon as either summand is empty. */
Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);

/**
 * Closed convex hull of the union of the parts (empty parts ignored).
 * For finitely many closed polyhedra the convex hull of the union is
 * computed from the concatenated generators.
 */
Polyhedron hull_union(const std::vector<Polyhedron>& parts);

/** Strict-aware membership first; cone of the active rows at x. */
NormalConeResult normal_cone(const Polyhedron& a, const VecQ& x);
NormalConeResult normal_cone_rows(const HRep& dom, const VecQ& x);

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);

/** Polar set {y : ⟨y, x⟩ ≤ 1 for all x in a}. */
Polyhedron polar(const Polyhedron& a);

/** Membership in the set a was constructed from (strict rows honored). */
bool contains(const Polyhedron& a, const VecQ& x);

/** Inclusion and equality of closures. */
bool is_subset(const Polyhedron& a, const Polyhedron& b);
bool equals(const Polyhedron& a, const Polyhedron& b);

/** Coordinate projection via Fourier-Motzkin with exact redundancy pruning. */
Polyhedron project(const Polyhedron& a, const std::vector<Eigen::Index>& coords);
HRep project_rows(const HRep& h, const std::vector<Eigen::Index>& coords);

/** Slice {x : (x, e) in lifted}; the last coordinate is substituted. */
Polyhedron slice_last(const Polyhedron& lifted, const Rat& e);

/** Translate by a fixed vector. */
Polyhedron translate(const Polyhedron& a, const VecQ& t);

/** Conical hull generators: vertices become rays; result is a closed cone. */
Polyhedron conic_hull(const std::vector<Polyhedron>& parts);

}  // namespace supdiff
