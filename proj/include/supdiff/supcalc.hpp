#pragma once

#include "supdiff/family.hpp"
#include "supdiff/ops.hpp"

namespace supdiff {

struct CalcOptions {
  /** Abort the ε-schedule after this many steps and flag the result inexact. */
  int epsCap = 64;
  /** Replaces the stored grid of a parametric family. */
  std::optional<int> gridOverride;
  /** Spanning set of the restriction subspace L; empty means the full space. */
  std::vector<VecQ> L;
};

struct TraceStep {
  Rat eps;
  std::vector<std::size_t> active;  // view indices with gap ≤ eps
  bool includesLimit = false;
  /** Hull of the ε-slices at this step (equals S(ε) for hull-inside runs). */
  Polyhedron set;
};

struct SubdiffResult {
  Polyhedron set;
  std::string formula;
  std::vector<TraceStep> epsTrace;
  ActiveSet activeSnapshot;
  /** False when the family is a discretized surrogate or the ε-schedule hit
   *  its cap before the stabilization certificate was obtained. */
  bool exact = true;
  std::vector<std::string> notes;
  /** Hull-outside formulas: the inner-limit pieces before convexification,
   *  one polyhedron per exactly active member, in view order. */
  std::vector<Polyhedron> preHull;
};

/*
 * The characterizations of ∂(sup_t f_t)(x).  Each checks its own hypotheses
 * and throws hypothesis_error naming the violated one; a point with f(x)
 * outside R yields the empty set with an explanatory note instead.
 */
SubdiffResult subdiff_valadier(const IndexedFamily& fam, const VecQ& x,
                               const CalcOptions& opts = {});
SubdiffResult subdiff_form5(const IndexedFamily& fam, const VecQ& x,
                            const CalcOptions& opts = {});
SubdiffResult subdiff_fe1(const IndexedFamily& fam, const VecQ& x,
                          const CalcOptions& opts = {});
SubdiffResult subdiff_fe2(const IndexedFamily& fam, const VecQ& x,
                          const CalcOptions& opts = {});
SubdiffResult subdiff_f1(const IndexedFamily& fam, const VecQ& x,
                         const CalcOptions& opts = {});
SubdiffResult subdiff_f1b(const IndexedFamily& fam, const VecQ& x,
                          const CalcOptions& opts = {});
SubdiffResult subdiff_khay(const IndexedFamily& fam, const VecQ& x,
                           const CalcOptions& opts = {});
SubdiffResult subdiff_brondsted(const IndexedFamily& fam, const VecQ& x,
                                const CalcOptions& opts = {});
SubdiffResult subdiff_compactified(const IndexedFamily& fam, const VecQ& x,
                                   bool useTilde = false,
                                   const CalcOptions& opts = {});

/** Dispatch on the identifier strings the CLI accepts. */
SubdiffResult subdiff_by_name(const std::string& id, const IndexedFamily& fam,
                              const VecQ& x, const CalcOptions& opts = {});
const std::vector<std::string>& formula_names();

/** One member's data for the ε-limit engine. */
struct EpsLimitInput {
  std::string label;
  Polyhedron lifted;  // the (s, ε) graph, ε last
  Rat gap;            // f(x) − f_t(x) ≥ 0
  std::size_t viewIndex = 0;
  bool isLimit = false;
};

struct EpsLimitOutput {
  /** Hull of the limit pieces (the value of the hull-inside formulas; the
   *  hull-outside formulas apply co to `pieces`, which is the same set). */
  Polyhedron set;
  /** Per active member: slice at ε = 0 plus the normal summand. */
  std::vector<Polyhedron> pieces;
  std::vector<TraceStep> trace;
  bool exact = true;
  std::vector<std::string> notes;
};

/**
 * Evaluates ∩_{ε>0} [cl co | cl ∪]_{t: gap_t ≤ ε} (slice_ε(lifted_t) + normal)
 * on the schedule ε_k = ε₀·4^{−k}, ε₀ = 1 + max gap.  Because the slices are
 * polyhedra whose rows vary only in the right-hand side, the ε-limit equals
 * the ε = 0 slice set over the exactly active members; the schedule serves
 * as the stabilization certificate (active-set freeze plus slice equality)
 * and as the reported trace.  Failing to freeze within epsCap steps flags
 * the result inexact.
 */
EpsLimitOutput eps_limit(const std::vector<EpsLimitInput>& lifted,
                         const Polyhedron& normal, bool hullInside,
                         int epsCap = 64);

}  // namespace supdiff
