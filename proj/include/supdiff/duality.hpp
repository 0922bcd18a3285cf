#pragma once

#include "supdiff/family.hpp"

namespace supdiff {

/**
 * A sampled nonconvex function: g(x_i) = value_i, +∞ elsewhere.  Finiteness
 * of the sample list makes g proper and lsc, every conjugate-side set below
 * exactly enumerable, and the lsc hull of g equal to g itself.
 */
struct DiscreteFunc {
  Eigen::Index dim = 0;
  std::vector<std::pair<VecQ, Rat>> samples;
};

/** Throws parse_error on an empty list, dimension mismatch, or repeated
 *  sample points. */
void validate(const DiscreteFunc& g);

/** f = g* = max_i (⟨x_i, ·⟩ − g_i): proper, finite and continuous on all of
 *  R^n, one affine piece per sample. */
PolyFunc conjugate_discrete(const DiscreteFunc& g);

/**
 * ∂f(xstar) for f = g*: the convex hull of the sample points active at xstar
 * plus N_{dom f}(xstar).  dom f is the whole space here, so the normal
 * summand is {0}; the identity with the inverted subdifferential of g makes
 * the hull of active samples the entire answer.
 */
Polyhedron conj_subdiff(const DiscreteFunc& g, const VecQ& xstar);

/** (∂_ε g)⁻¹(xstar) = {x_i : ⟨x_i, xstar⟩ − g_i ≥ f(xstar) − ε}, in sample
 *  order.  Nondecreasing in ε; ε = 0 lists the active samples. */
std::vector<VecQ> inverse_eps_subdiff(const DiscreteFunc& g, const VecQ& xstar,
                                      const Rat& eps);

/**
 * Argmin of the convexified hull of g: the convex hull of the minimizing
 * samples.  Also evaluated as ∂f(0) through the conjugate machinery; the two
 * must coincide exactly (internal_error otherwise), which is the duality
 * identity this module exists to check.
 */
Polyhedron argmin_convexified(const DiscreteFunc& g);

}  // namespace supdiff
