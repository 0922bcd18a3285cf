#include "supdiff/duality.hpp"

#include "supdiff/ops.hpp"

namespace supdiff {

void validate(const DiscreteFunc& g) {
  if (g.samples.empty()) throw parse_error("discrete function: no samples");
  for (const auto& [pt, val] : g.samples)
    if (pt.size() != g.dim)
      throw parse_error("discrete function: sample dimension mismatch");
  for (std::size_t i = 0; i < g.samples.size(); ++i)
    for (std::size_t j = i + 1; j < g.samples.size(); ++j)
      if (vec_eq(g.samples[i].first, g.samples[j].first))
        throw parse_error("discrete function: repeated sample point");
}

PolyFunc conjugate_discrete(const DiscreteFunc& g) {
  validate(g);
  PolyFunc f;
  f.dim = g.dim;
  for (const auto& [pt, val] : g.samples) f.pieces.push_back({pt, -val});
  f.domain = full_space_h(g.dim);
  return f;
}

namespace {

Rat conj_value(const DiscreteFunc& g, const VecQ& xstar) {
  Rat best = g.samples.front().first.dot(xstar) - g.samples.front().second;
  for (const auto& [pt, val] : g.samples) {
    const Rat v = pt.dot(xstar) - val;
    if (v > best) best = v;
  }
  return best;
}

Polyhedron hull_of(const std::vector<VecQ>& points, Eigen::Index dim) {
  VRep v;
  v.dim = dim;
  v.vertices = points;
  return from_v(v);
}

}  // namespace

Polyhedron conj_subdiff(const DiscreteFunc& g, const VecQ& xstar) {
  validate(g);
  if (xstar.size() != g.dim)
    throw std::invalid_argument("conj_subdiff: dimension mismatch");
  const std::vector<VecQ> active = inverse_eps_subdiff(g, xstar, 0);
  // N_{dom f}(xstar) with dom f = R^n is {0}: the sum leaves the hull as is
  return minkowski_sum(hull_of(active, g.dim), make_point(zero_vec(g.dim)));
}

std::vector<VecQ> inverse_eps_subdiff(const DiscreteFunc& g, const VecQ& xstar,
                                      const Rat& eps) {
  validate(g);
  if (xstar.size() != g.dim)
    throw std::invalid_argument("inverse_eps_subdiff: dimension mismatch");
  if (eps < 0) throw std::invalid_argument("inverse_eps_subdiff: eps < 0");
  const Rat fstar = conj_value(g, xstar);
  std::vector<VecQ> out;
  for (const auto& [pt, val] : g.samples)
    if (pt.dot(xstar) - val >= fstar - eps) out.push_back(pt);
  return out;
}

Polyhedron argmin_convexified(const DiscreteFunc& g) {
  validate(g);
  Rat vmin = g.samples.front().second;
  for (const auto& [pt, val] : g.samples)
    if (val < vmin) vmin = val;
  std::vector<VecQ> mins;
  for (const auto& [pt, val] : g.samples)
    if (val == vmin) mins.push_back(pt);
  const Polyhedron direct = hull_of(mins, g.dim);
  const Polyhedron viaConj =
      eps_subdiff(conjugate_discrete(g), zero_vec(g.dim), 0);
  if (!equals(direct, viaConj))
    throw internal_error(
        "argmin of the convexified hull disagrees with the conjugate "
        "subdifferential at zero");
  return direct;
}

}  // namespace supdiff
