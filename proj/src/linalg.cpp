#include "cartankit/linalg.hpp"

#include <algorithm>

namespace cartankit {

namespace {

double rank_threshold(const Eigen::VectorXd& sv) {
    double top = sv.size() > 0 ? sv(0) : 0.0;
    return kRankCutoff * std::max(1.0, top);
}

} // namespace

int effective_rank(const Eigen::MatrixXd& a) {
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const Eigen::VectorXd& sv = svd.singularValues();
    double thr = rank_threshold(sv);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr) ++r;
    return r;
}

Eigen::MatrixXd orth_columns(const Eigen::MatrixXd& a) {
    if (a.size() == 0 || a.cols() == 0) return Eigen::MatrixXd(a.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
    const Eigen::VectorXd& sv = svd.singularValues();
    double thr = rank_threshold(sv);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr) ++r;
    return svd.matrixU().leftCols(r);
}

double residual_outside(const Eigen::MatrixXd& q, const Eigen::VectorXd& w) {
    if (q.cols() == 0) return w.norm();
    return (w - q * (q.transpose() * w)).norm();
}

bool in_span(const Eigen::MatrixXd& q, const Eigen::VectorXd& w, double tol) {
    return residual_outside(q, w) <= tol * std::max(1.0, w.norm());
}

Eigen::MatrixXd kernel(const Eigen::MatrixXd& a) {
    if (a.rows() == 0) return Eigen::MatrixXd::Identity(a.cols(), a.cols());
    if (a.cols() == 0) return Eigen::MatrixXd(0, 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    double thr = rank_threshold(sv);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > thr) ++r;
    return svd.matrixV().rightCols(a.cols() - r);
}

Eigen::MatrixXd intersect_with_zero_rows(const Eigen::MatrixXd& q,
                                         const std::vector<int>& zero_rows) {
    if (q.cols() == 0) return q;
    Eigen::MatrixXd constrained(static_cast<int>(zero_rows.size()), q.cols());
    for (int i = 0; i < static_cast<int>(zero_rows.size()); ++i)
        constrained.row(i) = q.row(zero_rows[i]);
    Eigen::MatrixXd k = kernel(constrained);
    if (k.cols() == 0) return Eigen::MatrixXd(q.rows(), 0);
    return orth_columns(q * k);
}

bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
    Eigen::MatrixXd qa = orth_columns(a);
    Eigen::MatrixXd qb = orth_columns(b);
    if (qa.cols() != qb.cols()) return false;
    for (Eigen::Index j = 0; j < qa.cols(); ++j)
        if (!in_span(qb, qa.col(j), tol)) return false;
    for (Eigen::Index j = 0; j < qb.cols(); ++j)
        if (!in_span(qa, qb.col(j), tol)) return false;
    return true;
}

std::pair<Eigen::MatrixXd, double> solve_row_map(const Eigen::MatrixXd& x,
                                                 const Eigen::MatrixXd& y) {
    if (x.rows() == 0)
        return {Eigen::MatrixXd::Zero(x.cols(), y.cols()), 0.0};
    Eigen::MatrixXd b =
        x.completeOrthogonalDecomposition().pseudoInverse() * y;
    double resid = (x * b - y).cwiseAbs().maxCoeff();
    return {b, resid};
}

} // namespace cartankit
