#pragma once

#include "supdiff/rational.hpp"

namespace supdiff {

/**
 * Generators of a polyhedral cone {y : ⟨m_i, y⟩ ≤ 0 for all i}:
 * the cone equals span(lin) + cone(rays), span(lin) is its lineality space,
 * and the rays project to the extreme rays of the pointed quotient cone.
 */
struct ConeGenerators {
  std::vector<VecQ> lin;
  std::vector<VecQ> rays;
};

/**
 * Incremental double description over exact rationals.  Constraints are
 * processed in the given order; lineality is tracked explicitly and new rays
 * are admitted through the combinatorial adjacency test on true tight sets.
 */
ConeGenerators dd_cone(const std::vector<VecQ>& rows, Eigen::Index dim);

}  // namespace supdiff
