#pragma once

#include <Eigen/Dense>

#include <vector>

namespace minsurf::detail {

using IntVec = std::vector<long long>;

/// LLL on the rows (e_i, weight * g_i). Returns the coefficient parts of the
/// reduced rows, i.e. a unimodular change of generators, shortest first.
std::vector<IntVec> integer_reduce(const std::vector<Eigen::VectorXd>& gens, double weight);

/// Sum of c_i g_i.
Eigen::VectorXd combine(const IntVec& c, const std::vector<Eigen::VectorXd>& gens);

/// Numerical rank by singular values above rel_tol times the largest.
int numerical_rank(const std::vector<Eigen::VectorXd>& vs, double rel_tol);

}  // namespace minsurf::detail
