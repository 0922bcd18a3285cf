#pragma once

// Shared randomized generators and property drivers.  The unit suites and
// the acceptance binary both run these, so every property is exercised the
// same way in both places.  All randomness is seeded explicitly; reruns are
// byte-for-byte repeatable.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "supdiff/duality.hpp"
#include "supdiff/oracle.hpp"
#include "supdiff/sip.hpp"

namespace testsup {

using namespace supdiff;

using Rng = std::mt19937_64;

inline Rat rand_rat(Rng& rng, int lo, int hi, int maxden) {
  std::uniform_int_distribution<int> den(1, maxden);
  const int q = den(rng);
  std::uniform_int_distribution<long> num(long(lo) * q, long(hi) * q);
  return Rat(num(rng), q);
}

inline VecQ rand_vec(Rng& rng, Eigen::Index d, int lo, int hi, int maxden) {
  VecQ v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = rand_rat(rng, lo, hi, maxden);
  return v;
}

inline VecQ rand_nonzero(Rng& rng, Eigen::Index d, int lo, int hi,
                         int maxden) {
  VecQ v = rand_vec(rng, d, lo, hi, maxden);
  if (v.isZero()) v[Eigen::Index(rng() % std::uint64_t(d))] = 1;
  return v;
}

/** Affine pieces with coefficients in [-5, 5], denominators <= 4. */
inline PolyFunc rand_member(Rng& rng, Eigen::Index d, int maxPieces) {
  std::uniform_int_distribution<int> np(1, maxPieces);
  PolyFunc f;
  f.dim = d;
  const int n = np(rng);
  for (int k = 0; k < n; ++k)
    f.pieces.push_back({rand_vec(rng, d, -5, 5, 4), rand_rat(rng, -5, 5, 4)});
  f.domain = full_space_h(d);
  return f;
}

struct FamilyCase {
  FiniteFamily fam;
  VecQ x;
};

/**
 * A family whose members all keep x in their domain.  Domain rows are built
 * as a·y <= a·x + slack, so slack 0 puts x on the boundary and positive
 * slack keeps a neighbourhood of x inside.  Weak rows only: every member is
 * lsc.  `bounded` boxes each domain, `boundary` forces one slack-0 row on
 * the first member, `allActive` shifts intercepts so every member value at
 * x is 0 (making the whole family exactly active there).
 */
inline FamilyCase rand_family(Rng& rng, Eigen::Index d, int maxMembers,
                              int maxPieces, bool boundary, bool bounded,
                              bool allActive) {
  std::uniform_int_distribution<int> nm(1, maxMembers), nrows(0, 2),
      slackPick(1, 4);
  FamilyCase out;
  out.x = rand_vec(rng, d, -2, 2, 3);
  const int n = nm(rng);
  for (int i = 0; i < n; ++i) {
    PolyFunc m = rand_member(rng, d, maxPieces);
    const int extra = nrows(rng);
    for (int r = 0; r < extra; ++r) {
      const VecQ a = rand_nonzero(rng, d, -3, 3, 2);
      const Rat slack = Rat(slackPick(rng), 2);
      m.domain.rows.push_back({a, a.dot(out.x) + slack, false});
    }
    if (boundary && i == 0) {
      const VecQ a = rand_nonzero(rng, d, -3, 3, 2);
      m.domain.rows.push_back({a, a.dot(out.x), false});
    }
    if (bounded) {
      for (Eigen::Index c = 0; c < d; ++c) {
        VecQ e = VecQ::Zero(d);
        e[c] = 1;
        m.domain.rows.push_back({e, out.x[c] + 2, false});
        e[c] = -1;
        m.domain.rows.push_back({e, -out.x[c] + 2, false});
      }
    }
    if (allActive) {
      const FnValue v = eval(m, out.x);
      for (AffinePiece& p : m.pieces) p.b -= v.value;
    }
    out.fam.members.push_back(std::move(m));
  }
  return out;
}

inline DiscreteFunc rand_discrete(Rng& rng, Eigen::Index d, int maxSamples) {
  std::uniform_int_distribution<int> ns(1, maxSamples);
  DiscreteFunc g;
  g.dim = d;
  const int n = ns(rng);
  std::set<std::vector<std::string>> seen;
  while (int(g.samples.size()) < n) {
    const VecQ p = rand_vec(rng, d, -5, 5, 4);
    std::vector<std::string> key;
    for (Eigen::Index i = 0; i < d; ++i) key.push_back(format_rat(p[i]));
    if (!seen.insert(key).second) continue;
    g.samples.push_back({p, rand_rat(rng, -5, 5, 4)});
  }
  return g;
}

/** A bounded linear program dressed as a SIP: minimize c·x subject to
 *  finitely many affine constraints plus a box.  opt is the exact LP
 *  minimizer (a vertex, so f(opt) = 0), worst the maximizing vertex. */
struct SipCase {
  SipProblem prob;
  VecQ opt;
  VecQ worst;
  Rat optValue;
  Rat worstValue;
};

inline SipCase rand_sip(Rng& rng) {
  std::uniform_int_distribution<int> dd(1, 2), kk(2, 5), sl(0, 2);
  const Eigen::Index d = dd(rng);
  VecQ c = rand_nonzero(rng, d, -3, 3, 2);
  const VecQ anchor = rand_vec(rng, d, -2, 2, 2);
  SipCase out;
  FiniteFamily fin;
  HRep feas;
  feas.dim = d;
  const auto push = [&](const VecQ& a, const Rat& b) {
    PolyFunc m;
    m.dim = d;
    m.pieces.push_back({a, -b});
    m.domain = full_space_h(d);
    fin.members.push_back(std::move(m));
    feas.rows.push_back({a, b, false});
  };
  const int k = kk(rng);
  for (int j = 0; j < k; ++j) {
    const VecQ a = rand_nonzero(rng, d, -3, 3, 2);
    push(a, a.dot(anchor) + Rat(sl(rng)));
  }
  for (Eigen::Index i = 0; i < d; ++i) {
    VecQ e = VecQ::Zero(d);
    e[i] = 1;
    push(e, anchor[i] + 4);
    e[i] = -1;
    push(e, -anchor[i] + 4);
  }
  out.prob.dim = d;
  out.prob.objective.dim = d;
  out.prob.objective.pieces.push_back({c, Rat(0)});
  out.prob.objective.domain = full_space_h(d);
  out.prob.constraints = fin;
  const LpResult lo = lp_solve(c, feas, LpSense::minimize);
  const LpResult hi = lp_solve(c, feas, LpSense::maximize);
  if (lo.status != LpStatus::optimal || hi.status != LpStatus::optimal)
    throw internal_error("boxed LP must be solvable");
  out.opt = lo.point;
  out.worst = hi.point;
  out.optValue = lo.value;
  out.worstValue = hi.value;
  return out;
}

/* ------------------------------------------------------------------ */
/* Property drivers (shared between the unit and acceptance binaries)  */

struct PropOutcome {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return !failures.empty() ? false : checked > 0; }
  std::string summary() const {
    if (ok()) return std::to_string(checked) + " instances";
    return failures.empty() ? "no instances ran" : failures.front();
  }
};

inline HRep rand_hrep(Rng& rng, Eigen::Index d, int maxRows, bool keepFeasible) {
  std::uniform_int_distribution<int> nr(1, maxRows);
  const VecQ anchor = rand_vec(rng, d, -2, 2, 2);
  HRep h;
  h.dim = d;
  const int n = nr(rng);
  for (int i = 0; i < n; ++i) {
    const VecQ a = rand_nonzero(rng, d, -3, 3, 2);
    const Rat b = keepFeasible ? a.dot(anchor) + rand_rat(rng, 0, 2, 2)
                               : rand_rat(rng, -3, 3, 2);
    h.rows.push_back({a, b, false});
  }
  return h;
}

/** H -> V -> H -> V reproduces the same closed set, and the V generators
 *  satisfy the facet rows. */
inline PropOutcome prop_dd_roundtrip(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3);
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const Polyhedron p = from_h(rand_hrep(rng, d, 6, it % 3 != 0));
    const Polyhedron q = from_v(p.v);
    if (!equals(p, q)) {
      out.failures.push_back("dd round-trip broke at instance " +
                             std::to_string(it));
      return out;
    }
    const Polyhedron r = from_h(q.facets);
    if (!equals(q, r)) {
      out.failures.push_back("facet re-conversion broke at instance " +
                             std::to_string(it));
      return out;
    }
    for (const VecQ& v : p.v.vertices)
      if (!contains(q, v)) {
        out.failures.push_back("vertex left the set at instance " +
                               std::to_string(it));
        return out;
      }
    ++out.checked;
  }
  return out;
}

/** polar(polar(P)) = P for closed convex P containing the origin. */
inline PropOutcome prop_bipolar(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3), nv(1, 4), nr(0, 2);
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    VRep v;
    v.dim = d;
    v.vertices.push_back(VecQ::Zero(d));
    const int kv = nv(rng), kr = nr(rng);
    for (int i = 0; i < kv; ++i)
      v.vertices.push_back(rand_vec(rng, d, -3, 3, 2));
    for (int i = 0; i < kr && it % 2 == 0; ++i)
      v.rays.push_back(rand_nonzero(rng, d, -2, 2, 1));
    const Polyhedron p = from_v(v);
    if (!equals(polar(polar(p)), p)) {
      out.failures.push_back("bipolar broke at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

/** Optimal/unbounded/infeasible certificates replay from the result struct
 *  alone, per the documented sign conventions. */
inline PropOutcome prop_lp_duality(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3), mode(0, 3);
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const int m = mode(rng);
    const HRep h = rand_hrep(rng, d, 6, m != 3);
    const VecQ c = rand_nonzero(rng, d, -3, 3, 2);
    const LpResult r = lp_solve(c, h, LpSense::minimize);
    const auto rows = h.rows.size();
    const auto residual = [&](const VecQ& y) {
      VecQ s = VecQ::Zero(d);
      for (std::size_t i = 0; i < rows; ++i) s += y[Eigen::Index(i)] * h.rows[i].a;
      return s;
    };
    bool good = true;
    if (r.status == LpStatus::optimal) {
      good = hrep_contains(h, r.point) && c.dot(r.point) == r.value;
      Rat by = 0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (r.dual[Eigen::Index(i)] < 0) good = false;
        by += r.dual[Eigen::Index(i)] * h.rows[i].b;
      }
      good = good && (residual(r.dual) + c).isZero() && -by == r.value;
    } else if (r.status == LpStatus::unbounded) {
      good = hrep_contains(h, r.point) && c.dot(r.ray) < 0;
      for (const HRow& row : h.rows)
        if (row.a.dot(r.ray) > 0) good = false;
    } else {
      Rat by = 0;
      for (std::size_t i = 0; i < rows; ++i) {
        if (r.dual[Eigen::Index(i)] < 0) good = false;
        by += r.dual[Eigen::Index(i)] * h.rows[i].b;
      }
      good = good && residual(r.dual).isZero() && by < 0;
    }
    if (!good) {
      out.failures.push_back("lp certificate failed replay at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

/** Support functions add under Minkowski sums, and unboundedness matches. */
inline PropOutcome prop_minkowski_support(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3), nv(1, 4), withRay(0, 3);
  const auto randPoly = [&](Eigen::Index d, bool allowRay) {
    VRep v;
    v.dim = d;
    const int kv = nv(rng);
    for (int i = 0; i < kv; ++i)
      v.vertices.push_back(rand_vec(rng, d, -3, 3, 2));
    if (allowRay && withRay(rng) == 0)
      v.rays.push_back(rand_nonzero(rng, d, -2, 2, 1));
    return from_v(v);
  };
  const auto support = [&](const Polyhedron& p, const VecQ& u) {
    return lp_solve(u, p.facets, LpSense::maximize);
  };
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const Polyhedron a = randPoly(d, true), b = randPoly(d, true);
    const Polyhedron s = minkowski_sum(a, b);
    const VecQ u = rand_nonzero(rng, d, -3, 3, 2);
    const LpResult ra = support(a, u), rb = support(b, u), rs = support(s, u);
    bool good;
    if (ra.status == LpStatus::optimal && rb.status == LpStatus::optimal)
      good = rs.status == LpStatus::optimal && rs.value == ra.value + rb.value;
    else
      good = rs.status == LpStatus::unbounded;
    if (!good) {
      out.failures.push_back("support additivity failed at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

/** A proper lsc function with a guaranteed point in its domain. */
inline std::pair<PolyFunc, VecQ> rand_fn_with_point(Rng& rng, Eigen::Index d) {
  std::uniform_int_distribution<int> nrows(0, 3);
  PolyFunc f = rand_member(rng, d, 3);
  const VecQ x = rand_vec(rng, d, -2, 2, 3);
  const int extra = nrows(rng);
  for (int r = 0; r < extra; ++r) {
    const VecQ a = rand_nonzero(rng, d, -3, 3, 2);
    f.domain.rows.push_back({a, a.dot(x) + rand_rat(rng, 0, 2, 2), false});
  }
  return {f, x};
}

/** f(x) + f*(s) >= <s, x>, with equality exactly on ∂f(x). */
inline PropOutcome prop_fenchel_young(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3);
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const auto [f, x] = rand_fn_with_point(rng, d);
    const PolyFunc star = conjugate(f);
    const FnValue fx = eval(f, x);
    if (!fx.finite) {
      out.failures.push_back("generator lost the domain point at instance " +
                             std::to_string(it));
      return out;
    }
    const Polyhedron sub = eps_subdiff(f, x, 0);
    bool good = true;
    const VecQ s = rand_vec(rng, d, -5, 5, 2);
    const FnValue fs = eval(star, s);
    if (fs.finite) {
      const Rat gap = fx.value + fs.value - s.dot(x);
      good = gap >= 0 && (gap == 0) == contains(sub, s);
    }
    for (const VecQ& v : sub.v.vertices) {
      const FnValue fv = eval(star, v);
      good = good && fv.finite && fx.value + fv.value - v.dot(x) == 0;
    }
    if (!good) {
      out.failures.push_back("Fenchel-Young failed at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

/** f** agrees with cl f as a function (polyhedral Moreau). */
inline PropOutcome prop_biconjugation(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3);
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const auto [f, x] = rand_fn_with_point(rng, d);
    (void)x;
    const PolyFunc second = conjugate(conjugate(f));
    if (!same_function_closed(second, closure(f)) ||
        !equals(closed_epigraph(second), closed_epigraph(f))) {
      out.failures.push_back("biconjugation failed at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

/** ∂_ε f(x) grows with ε and is nonempty on the domain of an lsc f. */
inline PropOutcome prop_eps_monotone(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3);
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const auto [f, x] = rand_fn_with_point(rng, d);
    const Rat e1 = rand_rat(rng, 0, 2, 3);
    const Rat e2 = e1 + rand_rat(rng, 0, 2, 3);
    const Polyhedron s1 = eps_subdiff(f, x, e1), s2 = eps_subdiff(f, x, e2);
    if (!is_subset(s1, s2) || s1.is_empty()) {
      out.failures.push_back("eps-monotonicity failed at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

/** Slicing the lifted (s, ε) graph reproduces ∂_ε f(x) for every ε. */
inline PropOutcome prop_lifted_slice(std::uint64_t seed, int n) {
  Rng rng(seed);
  PropOutcome out;
  std::uniform_int_distribution<int> dd(1, 3);
  const Rat levels[4] = {Rat(0), Rat(1, 3), Rat(1), Rat(7, 2)};
  for (int it = 0; it < n; ++it) {
    const Eigen::Index d = dd(rng);
    const auto [f, x] = rand_fn_with_point(rng, d);
    const Polyhedron lifted = lifted_eps_subdiff(f, x);
    const Rat e = levels[it % 4] + rand_rat(rng, 0, 1, 4);
    if (!equals(slice_last(lifted, e), eps_subdiff(f, x, e))) {
      out.failures.push_back("lifted slice mismatched at instance " +
                             std::to_string(it));
      return out;
    }
    ++out.checked;
  }
  return out;
}

}  // namespace testsup
