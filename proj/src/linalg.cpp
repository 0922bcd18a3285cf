#include "supdiff/linalg.hpp"

#include <algorithm>

namespace supdiff {

std::vector<Eigen::Index> rref(MatQ& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    m.row(row).swap(m.row(pivot));
    const Rat lead = m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) /= lead;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rat factor = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

Eigen::Index rank(MatQ m) {
  return static_cast<Eigen::Index>(rref(m).size());
}

std::vector<VecQ> kernel_basis(const MatQ& m) {
  MatQ r = m;
  const std::vector<Eigen::Index> pivots = rref(r);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols()), false);
  for (Eigen::Index p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<VecQ> basis;
  for (Eigen::Index free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[static_cast<size_t>(free_col)]) continue;
    VecQ v = zero_vec(m.cols());
    v[free_col] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -r(static_cast<Eigen::Index>(i), free_col);
    basis.push_back(v);
  }
  return basis;
}

std::vector<VecQ> orth_complement(const std::vector<VecQ>& vectors, Eigen::Index dim) {
  if (vectors.empty()) {
    std::vector<VecQ> all;
    for (Eigen::Index i = 0; i < dim; ++i) all.push_back(unit_vec(dim, i));
    return all;
  }
  MatQ m(static_cast<Eigen::Index>(vectors.size()), dim);
  for (size_t i = 0; i < vectors.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  return kernel_basis(m);
}

bool in_span(const std::vector<VecQ>& vectors, const VecQ& x) {
  if (x.size() == 0) return true;
  bool zero = true;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x[i] != 0) zero = false;
  if (zero) return true;
  if (vectors.empty()) return false;
  MatQ m(static_cast<Eigen::Index>(vectors.size()) + 1, x.size());
  for (size_t i = 0; i < vectors.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  m.row(m.rows() - 1) = x.transpose();
  MatQ base(static_cast<Eigen::Index>(vectors.size()), x.size());
  for (size_t i = 0; i < vectors.size(); ++i) base.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  return rank(m) == rank(base);
}

std::vector<VecQ> canonical_span_basis(const std::vector<VecQ>& vectors, Eigen::Index dim) {
  if (vectors.empty()) return {};
  MatQ m(static_cast<Eigen::Index>(vectors.size()), dim);
  for (size_t i = 0; i < vectors.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  const std::vector<Eigen::Index> pivots = rref(m);
  std::vector<VecQ> basis;
  for (size_t i = 0; i < pivots.size(); ++i) {
    VecQ v = primitive(m.row(static_cast<Eigen::Index>(i)).transpose());
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (v[j] != 0) {
        if (v[j] < 0) v = -v;
        break;
      }
    }
    basis.push_back(v);
  }
  std::sort(basis.begin(), basis.end(), lex_less);
  return basis;
}

}  // namespace supdiff
