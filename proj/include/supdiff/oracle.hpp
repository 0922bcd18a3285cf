#pragma once

#include "supdiff/family.hpp"

namespace supdiff {

/**
 * Reference subdifferential, computed without any of the formula machinery:
 * s ∈ ∂f(x) iff f(y) ≥ f(x) + ⟨s, y − x⟩ for all y, which on the generators
 * (vertices, rays, lineality) of the closed epigraph of f turns into finitely
 * many linear rows in s.  Every formula result is checked against this.
 *
 * f is the exact pointwise supremum of the family's member views, so for
 * Sequence/Parametric inputs the oracle answers for the same surrogate the
 * formulas compute on.  Returns the empty set when f(x) is not finite.
 */
Polyhedron oracle_subdiff(const IndexedFamily& fam, const VecQ& x,
                          std::optional<int> gridOverride = {});

/**
 * Membership test for a single candidate, by one LP over the epigraph rows:
 * s ∈ ∂f(x) iff inf { τ − ⟨s, y⟩ : (y, τ) ∈ epi f } ≥ f(x) − ⟨s, x⟩.
 * No generator enumeration, so it double-checks oracle_subdiff too.
 */
bool oracle_membership(const IndexedFamily& fam, const VecQ& x,
                       const VecQ& xstar,
                       std::optional<int> gridOverride = {});

}  // namespace supdiff
