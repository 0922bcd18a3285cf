#pragma once

#include <optional>

#include "supdiff/ops.hpp"
#include "supdiff/polyhedron.hpp"

namespace supdiff {

/** One affine piece x ↦ ⟨a, x⟩ + b. */
struct AffinePiece {
  VecQ a;
  Rat b;
};

/**
 * A polyhedral convex function
 *
 *   f(x) = max_k (⟨a_k, x⟩ + b_k)   on the domain,   +∞ elsewhere.
 *
 * The domain may contain strict rows, so f need not be lower semicontinuous.
 * An empty pieces list denotes the indicator of the domain (value 0 on it).
 */
struct PolyFunc {
  Eigen::Index dim = 0;
  std::vector<AffinePiece> pieces;
  HRep domain;
};

/** Extended-real function value; finite == false means +∞. */
struct FnValue {
  bool finite = false;
  Rat value = 0;
};

PolyFunc make_infinite(Eigen::Index dim);
PolyFunc indicator(const HRep& domain);

FnValue eval(const PolyFunc& f, const VecQ& x);

/** Proper here means not identically +∞; finite pieces rule out −∞. */
bool is_proper(const PolyFunc& f);

/**
 * Lower semicontinuous hull.  The max of the pieces is continuous, so this
 * only closes the domain; if the domain is empty the result is the constant
 * +∞ function, whose domain must stay empty rather than become the cleared
 * row set.
 */
PolyFunc closure(const PolyFunc& f);

bool is_lsc(const PolyFunc& f);

/** dom f as a polyhedron (h keeps the strict rows). */
Polyhedron effective_domain(const PolyFunc& f);

/**
 * epi(cl f) = {(x, τ) : ⟨a_k, x⟩ + b_k ≤ τ, x ∈ cl dom f}, in dimension
 * dim + 1 with τ the last coordinate.
 */
Polyhedron closed_epigraph(const PolyFunc& f);

/**
 * Fenchel conjugate f*(s) = sup_x ⟨s, x⟩ − f(x), read off the generator
 * description of epi(cl f): vertices become pieces, rays and lineality
 * become domain rows.  Throws hypothesis_error when f is improper, since
 * the conjugate of +∞ is −∞ and leaves this function class.
 */
PolyFunc conjugate(const PolyFunc& f);

/**
 * ∂_ε f(x) = {s : f(x) + f*(s) − ⟨s, x⟩ ≤ ε}, with the actual (not closed)
 * value f(x).  Empty whenever f(x) = +∞, for every ε ≥ 0.
 */
Polyhedron eps_subdiff(const PolyFunc& f, const VecQ& x, const Rat& eps);

/** Same, reusing a precomputed conjugate and finite value f(x). */
Polyhedron eps_subdiff_given(const PolyFunc& conj, const Rat& fx, const VecQ& x,
                             const Rat& eps);

/**
 * The graph {(s, ε) : ε ≥ 0, s ∈ ∂_ε f(x)} in dimension dim + 1, ε last.
 * Slicing it at a fixed last coordinate recovers eps_subdiff.
 */
Polyhedron lifted_eps_subdiff(const PolyFunc& f, const VecQ& x);
Polyhedron lifted_eps_subdiff_given(const PolyFunc& conj, const Rat& fx,
                                    const VecQ& x);

/** f + indicator of extra rows (domain intersection). */
PolyFunc restrict_to(const PolyFunc& f, const HRep& extra);

/**
 * f + I_{L ∩ D} for a subspace L given by a spanning set: appends the
 * equality rows of L (via its orthogonal complement) and the rows of D.
 */
PolyFunc restrict_to(const PolyFunc& f, const std::vector<VecQ>& L_basis,
                     const HRep& D);

/**
 * Exact pointwise equality of two functions with non-strict domains,
 * decided by LPs: equal domains, then every piece of one majorized by the
 * other function over the common domain, both ways.
 */
bool same_function_closed(const PolyFunc& a, const PolyFunc& b);

/** The pieces, with an empty list read as the single zero piece. */
std::vector<AffinePiece> effective_pieces(const PolyFunc& f);

}  // namespace supdiff
