#pragma once

#include <vector>

#include <Eigen/Dense>

namespace cartankit {

/// Relative singular-value cutoff used by every rank decision in the library.
inline constexpr double kRankCutoff = 1e-9;

/// Number of singular values of A above the cutoff (relative to the largest).
int effective_rank(const Eigen::MatrixXd& a);

/// Orthonormal basis (columns) of the column space of A.
Eigen::MatrixXd orth_columns(const Eigen::MatrixXd& a);

/// Norm of the component of w orthogonal to the column space of the
/// orthonormal basis Q. Q may have zero columns (returns |w|).
double residual_outside(const Eigen::MatrixXd& q, const Eigen::VectorXd& w);

/// True iff w lies in the span of the orthonormal columns of Q, up to
/// tol * max(1, |w|).
bool in_span(const Eigen::MatrixXd& q, const Eigen::VectorXd& w, double tol);

/// Orthonormal basis (columns) of the right null space of A.
Eigen::MatrixXd kernel(const Eigen::MatrixXd& a);

/// Basis of { v in col(Q) : v[i] = 0 for all i in zero_rows }, with Q an
/// orthonormal column basis. Result columns are orthonormal.
Eigen::MatrixXd intersect_with_zero_rows(const Eigen::MatrixXd& q,
                                         const std::vector<int>& zero_rows);

/// True iff the column spans of A and B coincide (same rank, mutual
/// containment within tol).
bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol);

/// Least-squares solve min |X*B - Y|_F over B (row-data convention: each row
/// of X maps to the corresponding row of Y). Returns B and the max-norm
/// residual of the fit.
std::pair<Eigen::MatrixXd, double> solve_row_map(const Eigen::MatrixXd& x,
                                                 const Eigen::MatrixXd& y);

} // namespace cartankit
