#include "supdiff/dd.hpp"

namespace supdiff {

namespace {

struct TrackedRay {
  VecQ v;
  std::vector<bool> tight;
};

bool subset_of(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

std::vector<bool> tight_set(const std::vector<VecQ>& rows, size_t upto, const VecQ& v) {
  std::vector<bool> t(upto);
  for (size_t k = 0; k < upto; ++k) t[k] = (rows[k].dot(v) == 0);
  return t;
}

}  // namespace

ConeGenerators dd_cone(const std::vector<VecQ>& rows, Eigen::Index dim) {
  std::vector<VecQ> lin;
  for (Eigen::Index i = 0; i < dim; ++i) lin.push_back(unit_vec(dim, i));
  std::vector<TrackedRay> rays;

  for (size_t ri = 0; ri < rows.size(); ++ri) {
    const VecQ& m = rows[ri];
    if (m.size() != dim) throw internal_error("dd_cone: row dimension mismatch");

    int pivot = -1;
    for (size_t j = 0; j < lin.size(); ++j) {
      if (m.dot(lin[j]) != 0) {
        pivot = static_cast<int>(j);
        break;
      }
    }

    if (pivot >= 0) {
      VecQ lstar = lin[static_cast<size_t>(pivot)];
      Rat mls = m.dot(lstar);
      if (mls < 0) {
        lstar = -lstar;
        mls = -mls;
      }
      std::vector<VecQ> kept;
      for (size_t j = 0; j < lin.size(); ++j) {
        if (static_cast<int>(j) == pivot) continue;
        const Rat c = m.dot(lin[j]) / mls;
        kept.push_back(lin[j] - c * lstar);
      }
      lin = kept;
      for (auto& r : rays) {
        const Rat c = m.dot(r.v) / mls;
        r.v = primitive(r.v - c * lstar);
        r.tight.push_back(true);
      }
      TrackedRay nr;
      nr.v = primitive(-lstar);
      nr.tight = tight_set(rows, ri + 1, nr.v);
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<TrackedRay> keep;
    std::vector<size_t> pos, neg;
    std::vector<Rat> val(rays.size());
    for (size_t j = 0; j < rays.size(); ++j) {
      val[j] = m.dot(rays[j].v);
      if (val[j] > 0) {
        pos.push_back(j);
      } else {
        if (val[j] < 0) neg.push_back(j);
        TrackedRay kr = rays[j];
        kr.tight.push_back(val[j] == 0);
        keep.push_back(std::move(kr));
      }
    }

    std::vector<TrackedRay> created;
    for (size_t p : pos) {
      for (size_t n : neg) {
        std::vector<bool> common(ri);
        for (size_t k = 0; k < ri; ++k) common[k] = rays[p].tight[k] && rays[n].tight[k];
        bool adjacent = true;
        for (size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == n) continue;
          if (subset_of(common, rays[o].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        TrackedRay nr;
        nr.v = primitive(val[p] * rays[n].v - val[n] * rays[p].v);
        nr.tight = tight_set(rows, ri + 1, nr.v);
        bool duplicate = false;
        for (const auto& k : keep)
          if (k.tight == nr.tight) duplicate = true;
        for (const auto& k : created)
          if (k.tight == nr.tight) duplicate = true;
        if (!duplicate) created.push_back(std::move(nr));
      }
    }
    rays = std::move(keep);
    for (auto& nr : created) rays.push_back(std::move(nr));
  }

  ConeGenerators out;
  out.lin = lin;
  for (const auto& r : rays) out.rays.push_back(r.v);
  for (const auto& l : out.lin)
    for (const auto& row : rows)
      if (row.dot(l) != 0) throw internal_error("dd_cone: lineality violates a row");
  for (const auto& r : out.rays)
    for (const auto& row : rows)
      if (row.dot(r) > 0) throw internal_error("dd_cone: ray violates a row");
  return out;
}

}  // namespace supdiff
