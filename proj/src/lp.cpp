#include "supdiff/lp.hpp"

#include <algorithm>

namespace supdiff {

namespace {

struct Tableau {
  MatQ t;                  // m x (cols + 1); last column is the rhs
  std::vector<int> basis;  // basic column per row
  Eigen::Index cols = 0;
};

void pivot(Tableau& tab, VecQ& obj, Eigen::Index row, Eigen::Index col) {
  const Rat lead = tab.t(row, col);
  tab.t.row(row) /= lead;
  for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
    if (r == row || tab.t(r, col) == 0) continue;
    const Rat f = tab.t(r, col);
    tab.t.row(r) -= f * tab.t.row(row);
  }
  if (obj[col] != 0) {
    const Rat f = obj[col];
    obj -= f * tab.t.row(row).transpose();
  }
  tab.basis[static_cast<size_t>(row)] = static_cast<int>(col);
}

VecQ objective_row(const Tableau& tab, const VecQ& cost) {
  VecQ obj(tab.cols + 1);
  for (Eigen::Index j = 0; j < tab.cols; ++j) obj[j] = cost[j];
  obj[tab.cols] = 0;
  for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
    const Rat cb = cost[tab.basis[static_cast<size_t>(r)]];
    if (cb != 0) obj -= cb * tab.t.row(r).transpose();
  }
  return obj;
}

/** Bland's rule iteration until optimality or unboundedness. */
bool run_simplex(Tableau& tab, VecQ& obj, const std::vector<bool>& blocked,
                 Eigen::Index* unbounded_col) {
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < tab.cols; ++j) {
      if (blocked[static_cast<size_t>(j)]) continue;
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;

    Eigen::Index leave = -1;
    Rat best;
    for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
      if (tab.t(r, enter) <= 0) continue;
      const Rat ratio = tab.t(r, tab.cols) / tab.t(r, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && tab.basis[static_cast<size_t>(r)] <
                                tab.basis[static_cast<size_t>(leave)])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) {
      if (unbounded_col) *unbounded_col = enter;
      return false;
    }
    pivot(tab, obj, leave, enter);
  }
}

}  // namespace

LpResult lp_solve(const VecQ& objective, const HRep& feasible, LpSense sense) {
  const Eigen::Index n = feasible.dim;
  if (objective.size() != n) throw std::invalid_argument("lp_solve: objective dimension mismatch");
  for (const HRow& row : feasible.rows)
    if (row.strict) throw std::invalid_argument("lp_solve: strict row rejected; pass the closure");

  const VecQ c = (sense == LpSense::maximize) ? VecQ(-objective) : objective;
  const Eigen::Index m = static_cast<Eigen::Index>(feasible.rows.size());

  LpResult res;
  if (m == 0) {
    bool czero = true;
    for (Eigen::Index j = 0; j < n; ++j)
      if (c[j] != 0) czero = false;
    res.point = zero_vec(n);
    if (czero) {
      res.status = LpStatus::optimal;
      res.value = 0;
      res.dual = VecQ(0);
    } else {
      res.status = LpStatus::unbounded;
      res.ray = -c;
      res.value = 0;
    }
    return res;
  }

  // Columns: u(n) | v(n) | slack(m) | artificial(m).
  const Eigen::Index cols = 2 * n + 2 * m;
  Tableau tab;
  tab.cols = cols;
  tab.t = MatQ(m, cols + 1);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index j = 0; j <= cols; ++j) tab.t(r, j) = 0;
  std::vector<Rat> sigma(static_cast<size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) {
    const HRow& row = feasible.rows[static_cast<size_t>(r)];
    const Rat s = (row.b < 0) ? Rat(-1) : Rat(1);
    sigma[static_cast<size_t>(r)] = s;
    for (Eigen::Index j = 0; j < n; ++j) {
      tab.t(r, j) = s * row.a[j];
      tab.t(r, n + j) = -s * row.a[j];
    }
    tab.t(r, 2 * n + r) = s;
    tab.t(r, 2 * n + m + r) = 1;
    tab.t(r, cols) = s * row.b;
    tab.basis.push_back(static_cast<int>(2 * n + m + r));
  }

  std::vector<bool> block_art(static_cast<size_t>(cols), false);
  for (Eigen::Index r = 0; r < m; ++r) block_art[static_cast<size_t>(2 * n + m + r)] = true;

  // Phase 1.
  VecQ cost1 = zero_vec(cols);
  for (Eigen::Index r = 0; r < m; ++r) cost1[2 * n + m + r] = 1;
  VecQ obj1 = objective_row(tab, cost1);
  std::vector<bool> none(static_cast<size_t>(cols), false);
  if (!run_simplex(tab, obj1, none, nullptr))
    throw internal_error("lp_solve: phase 1 unbounded");

  const Rat infeas = -obj1[cols];
  if (infeas > 0) {
    VecQ y(m);
    for (Eigen::Index r = 0; r < m; ++r) y[r] = obj1[2 * n + r];
    VecQ aty = zero_vec(n);
    Rat by = 0;
    for (Eigen::Index r = 0; r < m; ++r) {
      const HRow& row = feasible.rows[static_cast<size_t>(r)];
      if (y[r] < 0) throw internal_error("lp_solve: negative Farkas multiplier");
      aty += y[r] * row.a;
      by += y[r] * row.b;
    }
    for (Eigen::Index j = 0; j < n; ++j)
      if (aty[j] != 0) throw internal_error("lp_solve: Farkas combination not null");
    if (!(by < 0)) throw internal_error("lp_solve: Farkas certificate inconclusive");
    res.status = LpStatus::infeasible;
    res.dual = y;
    return res;
  }

  // Remove artificials from the basis; drop redundant rows.
  for (Eigen::Index r = 0; r < tab.t.rows();) {
    if (tab.basis[static_cast<size_t>(r)] < 2 * n + m) {
      ++r;
      continue;
    }
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < 2 * n + m; ++j) {
      if (tab.t(r, j) != 0) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) {
      pivot(tab, obj1, r, enter);
      ++r;
      continue;
    }
    const Eigen::Index last = tab.t.rows() - 1;
    tab.t.row(r).swap(tab.t.row(last));
    std::swap(tab.basis[static_cast<size_t>(r)], tab.basis[static_cast<size_t>(last)]);
    tab.t.conservativeResize(last, Eigen::NoChange);
    tab.basis.pop_back();
  }

  // Phase 2.
  VecQ cost2 = zero_vec(cols);
  for (Eigen::Index j = 0; j < n; ++j) {
    cost2[j] = c[j];
    cost2[n + j] = -c[j];
  }
  VecQ obj2 = objective_row(tab, cost2);
  Eigen::Index ub_col = -1;

  auto extract_point = [&]() {
    VecQ x = zero_vec(n);
    for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
      const int b = tab.basis[static_cast<size_t>(r)];
      if (b < n)
        x[b] += tab.t(r, tab.cols);
      else if (b < 2 * n)
        x[b - n] -= tab.t(r, tab.cols);
    }
    return x;
  };

  if (run_simplex(tab, obj2, block_art, &ub_col)) {
    res.status = LpStatus::optimal;
    res.point = extract_point();
    for (const HRow& row : feasible.rows)
      if (!(row.a.dot(res.point) <= row.b)) throw internal_error("lp_solve: optimal point infeasible");
    const Rat vmin = c.dot(res.point);

    VecQ y(m);
    for (Eigen::Index r = 0; r < m; ++r) y[r] = obj2[2 * n + r];
    VecQ aty = zero_vec(n);
    Rat by = 0;
    for (Eigen::Index r = 0; r < m; ++r) {
      const HRow& row = feasible.rows[static_cast<size_t>(r)];
      if (y[r] < 0) throw internal_error("lp_solve: negative dual multiplier");
      aty += y[r] * row.a;
      by += y[r] * row.b;
    }
    for (Eigen::Index j = 0; j < n; ++j)
      if (aty[j] + c[j] != 0) throw internal_error("lp_solve: dual equation violated");
    if (vmin != -by) throw internal_error("lp_solve: dual value mismatch");

    res.value = (sense == LpSense::maximize) ? Rat(-vmin) : vmin;
    res.dual = y;
    return res;
  }

  res.status = LpStatus::unbounded;
  res.point = extract_point();
  for (const HRow& row : feasible.rows)
    if (!(row.a.dot(res.point) <= row.b)) throw internal_error("lp_solve: feasible point lost");
  VecQ delta = zero_vec(cols);
  delta[ub_col] = 1;
  for (Eigen::Index r = 0; r < tab.t.rows(); ++r)
    delta[tab.basis[static_cast<size_t>(r)]] = -tab.t(r, ub_col);
  VecQ w = zero_vec(n);
  for (Eigen::Index j = 0; j < n; ++j) w[j] = delta[j] - delta[n + j];
  for (const HRow& row : feasible.rows)
    if (!(row.a.dot(w) <= 0)) throw internal_error("lp_solve: ray not recessive");
  if (!(c.dot(w) < 0)) throw internal_error("lp_solve: ray not improving");
  res.ray = w;
  res.value = 0;
  return res;
}

std::optional<VecQ> feasible_point(const HRep& h) {
  const LpResult r = lp_solve(zero_vec(h.dim), cleared(h), LpSense::minimize);
  if (r.status == LpStatus::infeasible) return std::nullopt;
  return r.point;
}

std::optional<VecQ> strict_feasible_point(const HRep& h) {
  bool any_strict = false;
  for (const HRow& row : h.rows) any_strict |= row.strict;
  if (!any_strict) return feasible_point(h);

  HRep aug;
  aug.dim = h.dim + 1;
  for (const HRow& row : h.rows) {
    HRow r;
    r.a = VecQ(h.dim + 1);
    r.a.head(h.dim) = row.a;
    r.a[h.dim] = row.strict ? Rat(1) : Rat(0);
    r.b = row.b;
    aug.rows.push_back(r);
  }
  {
    HRow cap;
    cap.a = zero_vec(h.dim + 1);
    cap.a[h.dim] = 1;
    cap.b = 1;
    aug.rows.push_back(cap);
  }
  VecQ obj = zero_vec(h.dim + 1);
  obj[h.dim] = 1;
  const LpResult r = lp_solve(obj, aug, LpSense::maximize);
  if (r.status != LpStatus::optimal || !(r.value > 0)) return std::nullopt;
  return VecQ(r.point.head(h.dim));
}

std::optional<VecQ> interior_point(const HRep& h) {
  HRep all = cleared(h);
  for (HRow& row : all.rows) row.strict = true;
  return strict_feasible_point(all);
}

bool hrep_feasible(const HRep& h) {
  return feasible_point(h).has_value();
}

bool hrep_strict_feasible(const HRep& h) {
  return strict_feasible_point(h).has_value();
}

}  // namespace supdiff
