#pragma once

#include "supdiff/supcalc.hpp"

namespace supdiff {

/**
 * Inf f_0(x) subject to f_t(x) ≤ 0 for every member of `constraints`.  The
 * objective is held apart from the constraint family, so constraint indices
 * never collide with it.
 */
struct SipProblem {
  Eigen::Index dim = 0;
  PolyFunc objective;
  IndexedFamily constraints;
};

enum class CertKind { FJ, KKT, KKTContinuous };

/** One generator of the certifying combination, by name: "f0:v1" is the
 *  second vertex of the objective block, "K[t=1/2]:v0" a constraint one. */
struct WitnessTerm {
  std::string generator;
  VecQ vector;
  Rat coefficient;
};

/**
 * Outcome of an optimality-condition check at a candidate point.  When holds
 * is true the witness replays exactly: coefficients respect their sign
 * constraints, vertex weights of a convex block sum to one, and the weighted
 * sum of the vectors is the zero vector.  Replay is verified before the
 * certificate is returned.
 */
struct Certificate {
  CertKind kind = CertKind::FJ;
  bool holds = false;
  std::vector<WitnessTerm> witness;
  std::vector<std::string> checkedHypotheses;
  std::vector<std::string> notes;
};

struct SlaterResult {
  bool holds = false;
  std::optional<VecQ> point;
  std::string note;
};

/**
 * Searches for x0 ∈ dom f_0 with f(x0) < 0 (f the constraint supremum) by an
 * epigraph LP, then walks the LP point toward a strictly feasible one until
 * every strict domain row is honored; the returned witness is re-verified
 * exactly.  Infeasibility and a nonnegative minimum both yield false.
 */
SlaterResult slater_check(const SipProblem& p,
                          std::optional<int> gridOverride = {});

/**
 * Fritz-John condition at xbar: 0 ∈ co(∂(f_0 + I_{dom f})(xbar) ∪ K) where K
 * collects the ε-limit subdifferential pieces of the constraints restricted
 * to dom f ∩ dom f_0.  Requires f(xbar) = 0 exactly and f_0(xbar) finite
 * (hypothesis_error otherwise).
 */
Certificate fj_check(const SipProblem& p, const VecQ& xbar,
                     std::optional<int> gridOverride = {});

/**
 * KKT condition at xbar: 0 ∈ ∂(f_0 + I_{dom f})(xbar) + cone(K).  Refuses
 * when slater_check fails (the FJ certificate is the one to ask for then).
 * With continuousVariant set it instead decides
 * 0 ∈ ∂f_0(xbar) + cone(K_0) + N_{dom f}(xbar) with unrestricted constraint
 * subdifferentials, after verifying that dom f_0 ∩ dom f has an interior
 * point; cone(∅) = {0} throughout.
 */
Certificate kkt_check(const SipProblem& p, const VecQ& xbar,
                      bool continuousVariant = false,
                      std::optional<int> gridOverride = {});

/**
 * Diagnostic for parametric constraint families: the vertex Hausdorff
 * distance (∞-norm) between the closed hulls of K computed on the stored
 * grid and on the doubled grid.  The hull is what the certificates consume,
 * and with equal recession cones its Hausdorff distance is attained at
 * vertices, so the number is exact; when the recession cones differ the
 * distance is not finite and `comparable` stays false.  A small delta
 * suggests the grid resolves K, but nothing is certified.
 */
struct GridDelta {
  int coarse = 0;
  int fine = 0;
  Rat hausdorff;
  bool recessionEqual = false;
  bool comparable = false;
};

std::optional<GridDelta> grid_refinement_delta(
    const SipProblem& p, const VecQ& xbar,
    std::optional<int> gridOverride = {});

}  // namespace supdiff
