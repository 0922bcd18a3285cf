#pragma once

#include "supdiff/rational.hpp"

namespace supdiff {

/**
 * Reduces a matrix to reduced row echelon form in place.
 * Returns the pivot column indices in order.
 */
std::vector<Eigen::Index> rref(MatQ& m);

Eigen::Index rank(MatQ m);

/** Basis of the null space {x : m x = 0}, one vector per free column. */
std::vector<VecQ> kernel_basis(const MatQ& m);

/** Basis of the orthogonal complement of span(vectors) in dimension dim. */
std::vector<VecQ> orth_complement(const std::vector<VecQ>& vectors, Eigen::Index dim);

/** True iff x lies in span(vectors). */
bool in_span(const std::vector<VecQ>& vectors, const VecQ& x);

/**
 * Canonical basis of span(vectors): RREF rows, primitive-scaled, first
 * nonzero entry positive, sorted lexicographically.
 */
std::vector<VecQ> canonical_span_basis(const std::vector<VecQ>& vectors, Eigen::Index dim);

}  // namespace supdiff
