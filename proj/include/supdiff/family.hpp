#pragma once

#include <string>
#include <variant>

#include "supdiff/polyfunc.hpp"

namespace supdiff {

/**
 * A plain finite family {f_1, ..., f_N}.  labels, when empty, default to
 * "f1".."fN"; omega marks a member that stands in for a limit index (set by
 * augmented_family so reports can name it).
 */
struct FiniteFamily {
  std::vector<PolyFunc> members;
  std::vector<std::string> labels;
  std::optional<std::size_t> omega;
};

/**
 * A sequence f_1, f_2, ... given by a stored prefix together with the
 * user-declared limit function.  The limit is trusted data: a heuristic
 * tail-consistency check compares the last ⌈N/3⌉ prefix members against it
 * at fixed sample points and warns when they exceed limit + slack.
 */
struct SequenceFamily {
  std::vector<PolyFunc> prefix;
  PolyFunc limit;
  Rat slack = 0;
};

/** Polynomial in the scalar parameter t, coefficients by ascending degree. */
using Poly = std::vector<Rat>;

Rat poly_eval(const Poly& p, const Rat& t);

/** One affine piece whose slope entries and intercept are polynomials in t. */
struct ParamPiece {
  std::vector<Poly> slope;
  Poly intercept;
};

/**
 * f_t(x) = max_k (⟨slope_k(t), x⟩ + intercept_k(t)) on a fixed domain, for
 * t in [lo, hi].  Polynomial dependence keeps the family continuous in t;
 * computations run on the grid discretization.
 */
struct ParametricFamily {
  Eigen::Index dim = 0;
  Rat lo = 0;
  Rat hi = 1;
  std::vector<ParamPiece> pieces;
  HRep domain;
  int grid = 9;
};

using IndexedFamily = std::variant<FiniteFamily, SequenceFamily, ParametricFamily>;

/** One enumerated member; is_limit marks the declared sequence limit. */
struct MemberView {
  std::string label;
  PolyFunc fn;
  bool is_limit = false;
};

Eigen::Index family_dim(const IndexedFamily& fam);

/**
 * The members a computation runs on: Finite as stored, Sequence prefix plus
 * the flagged limit, Parametric at grid points (gridOverride replaces the
 * stored grid).
 */
std::vector<MemberView> member_views(const IndexedFamily& fam,
                                     std::optional<int> gridOverride = {});

struct SupResult {
  PolyFunc f;
  /** True when f stands in for an infinite family (Sequence/Parametric). */
  bool surrogate = false;
  std::vector<std::string> warnings;
};

/** Exact pointwise max over member_views; pieces concatenate and domains
 *  intersect.  Throws on an empty family. */
SupResult sup_function(const IndexedFamily& fam,
                       std::optional<int> gridOverride = {});

/**
 * The ε-active indices at x.  For Sequence families `indices` addresses the
 * prefix and the limit is reported through includesLimit; otherwise indices
 * address member_views positions.  Empty when f(x) is not finite.
 */
struct ActiveSet {
  std::vector<std::pair<std::size_t, Rat>> indices;
  bool includesLimit = false;
  Rat eps = 0;
};

ActiveSet active_set(const IndexedFamily& fam, const VecQ& x, const Rat& eps,
                     std::optional<int> gridOverride = {});

/**
 * Decides cl(sup f_t) = sup(cl f_t) exactly, by comparing the two functions
 * (domain equality plus LP value comparison piece by piece).
 */
bool closure_condition_check(const IndexedFamily& fam,
                             std::optional<int> gridOverride = {});

/** Members at t = lo + k(hi−lo)/(grid−1), labeled by their t value. */
FiniteFamily discretize(const ParametricFamily& fam, int grid);

/**
 * prefix ∪ {limit} as a Finite family, the limit tagged omega.  With tilde
 * set, only prefix members exactly active at *x are kept (the selection that
 * approaches the supremum at the reference point).
 */
FiniteFamily augmented_family(const SequenceFamily& fam, bool tilde = false,
                              const VecQ* x = nullptr);

}  // namespace supdiff
