#include "supdiff/oracle.hpp"

#include "supdiff/lp.hpp"
#include "supdiff/ops.hpp"

namespace supdiff {

Polyhedron oracle_subdiff(const IndexedFamily& fam, const VecQ& x,
                          std::optional<int> gridOverride) {
  const SupResult sup = sup_function(fam, gridOverride);
  const Eigen::Index n = sup.f.dim;
  if (x.size() != n)
    throw std::invalid_argument("oracle_subdiff: point dimension mismatch");
  const FnValue fx = eval(sup.f, x);
  if (!fx.finite) return make_empty(n);

  const Polyhedron epi = closed_epigraph(sup.f);
  HRep h;
  h.dim = n;
  // vertex (y, t):  s·(y − x) ≤ t − f(x)
  for (const VecQ& v : epi.v.vertices) {
    HRow row;
    row.a = v.head(n) - x;
    row.b = v[n] - fx.value;
    row.strict = false;
    h.rows.push_back(std::move(row));
  }
  // ray (r, r_t):  s·r ≤ r_t
  for (const VecQ& r : epi.v.rays)
    h.rows.push_back(HRow{r.head(n), r[n], false});
  // lineality (l, l_t):  s·l = l_t
  for (const VecQ& l : epi.v.lineality) {
    h.rows.push_back(HRow{l.head(n), l[n], false});
    h.rows.push_back(HRow{VecQ(-l.head(n)), -l[n], false});
  }
  return from_h(h);
}

bool oracle_membership(const IndexedFamily& fam, const VecQ& x,
                       const VecQ& xstar, std::optional<int> gridOverride) {
  const SupResult sup = sup_function(fam, gridOverride);
  const Eigen::Index n = sup.f.dim;
  if (x.size() != n || xstar.size() != n)
    throw std::invalid_argument("oracle_membership: dimension mismatch");
  const FnValue fx = eval(sup.f, x);
  if (!fx.finite) return false;

  const Polyhedron epi = closed_epigraph(sup.f);
  VecQ c = zero_vec(n + 1);
  c.head(n) = -xstar;
  c[n] = 1;
  const LpResult lp = lp_solve(c, epi.facets, LpSense::minimize);
  if (lp.status == LpStatus::infeasible)
    throw internal_error("epigraph empty although f(x) is finite");
  if (lp.status == LpStatus::unbounded) return false;
  return lp.value >= fx.value - xstar.dot(x);
}

}  // namespace supdiff
