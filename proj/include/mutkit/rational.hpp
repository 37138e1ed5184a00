#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace mutkit {

using Rat = boost::multiprecision::mpq_rational;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Accepts "p/q", integers, and plain decimal strings ("0.25", "-1.5"); decimals
// are expanded exactly over a power-of-ten denominator.
Rat rat_from_string(const std::string& s);

// "p/q" for non-integers, "p" otherwise (canonical form, q > 0).
std::string rat_to_string(const Rat& x);

double rat_to_double(const Rat& x);
Eigen::MatrixXd to_double(const RatMatrix& m);
Eigen::VectorXd to_double(const RatVector& v);

// Exact Gauss-Jordan over Q.
int exact_rank(RatMatrix a);

// Columns form a basis of the null space of `a`; each column is scaled so its
// first nonzero entry is 1. Zero-column matrix when the kernel is trivial.
RatMatrix exact_kernel(const RatMatrix& a);

}  // namespace mutkit
