#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace supdiff {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

/** Raised when a textual rational or vector cannot be parsed. */
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Raised when a formula's hypotheses are not met by the input. */
class hypothesis_error : public std::runtime_error {
 public:
  explicit hypothesis_error(const std::string& msg) : std::runtime_error(msg) {}
};

/** Raised when an internal exactness check fails; indicates a bug. */
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

/** Parses "p/q" or "p" with optional sign; denominator must be positive. */
Rat parse_rat(const std::string& text);

/** Renders a rational as "p" when integral, otherwise "p/q" in lowest terms. */
std::string format_rat(const Rat& value);

/** Parses a comma-separated list of rationals into a vector. */
VecQ parse_rat_csv(const std::string& text);

std::string format_vec(const VecQ& v);

VecQ zero_vec(Eigen::Index dim);
VecQ unit_vec(Eigen::Index dim, Eigen::Index i);

bool lex_less(const VecQ& a, const VecQ& b);
bool vec_eq(const VecQ& a, const VecQ& b);

/**
 * Scales a nonzero vector by a positive rational so the entries become
 * coprime integers; the direction is preserved.  Zero vectors pass through.
 */
VecQ primitive(const VecQ& v);

/** Sorts lexicographically and removes exact duplicates. */
void sort_unique(std::vector<VecQ>& vs);

}  // namespace supdiff
