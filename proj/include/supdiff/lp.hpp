#pragma once

#include <optional>

#include "supdiff/polyhedron.hpp"

namespace supdiff {

enum class LpSense { minimize, maximize };
enum class LpStatus { optimal, unbounded, infeasible };

/**
 * Result of an exact LP over {x : Ax ≤ b} with free variables.
 *
 * optimal:    point attains value; dual y ≥ 0 satisfies Aᵀy = -c for
 *             minimization (Aᵀy = c for maximization) and reproduces the
 *             value exactly (value = -bᵀy, resp. bᵀy).
 * unbounded:  point is feasible and ray improves forever (A·ray ≤ 0 with
 *             c·ray < 0 for minimization, > 0 for maximization).
 * infeasible: dual y ≥ 0 is a Farkas certificate (Aᵀy = 0, bᵀy < 0).
 *
 * All certificates are re-verified exactly before being returned.
 */
struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat value;
  VecQ point;
  VecQ dual;
  VecQ ray;
};

/** Exact rational simplex with Bland's rule. Strict rows are rejected. */
LpResult lp_solve(const VecQ& objective, const HRep& feasible, LpSense sense);

/** A point of the closure of the rows, if any. */
std::optional<VecQ> feasible_point(const HRep& h);

/** A point satisfying weak rows weakly and strict rows strictly, if any. */
std::optional<VecQ> strict_feasible_point(const HRep& h);

/** A point satisfying every row strictly (interior of the closure). */
std::optional<VecQ> interior_point(const HRep& h);

bool hrep_feasible(const HRep& h);
bool hrep_strict_feasible(const HRep& h);

}  // namespace supdiff
