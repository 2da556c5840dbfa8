#include "cartankit/sampling.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace cartankit {

Scalar random_scalar(Rng& rng, FieldTag f) {
    std::normal_distribution<double> nd(0.0, 1.0);
    double re = nd(rng);
    double im = f == FieldTag::Complex ? nd(rng) : 0.0;
    return Scalar(re, im);
}

ANElement random_nilpotent(const GroupContext& ctx, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    ANElement u(ctx);
    u.phi = random_scalar(rng, ctx.field);
    for (Eigen::Index j = 0; j < u.x.size(); ++j) {
        u.x(j) = random_scalar(rng, ctx.field);
        u.y(j) = random_scalar(rng, ctx.field);
    }
    u.eta = random_scalar(rng, ctx.field);
    if (ctx.field == FieldTag::Complex) {
        u.xx = Scalar(0.0, nd(rng));
        u.yy = Scalar(0.0, nd(rng));
    }
    return u;
}

ANElement random_an(const GroupContext& ctx, Rng& rng) {
    ANElement u = random_nilpotent(ctx, rng);
    std::normal_distribution<double> nd(0.0, 1.0);
    u.t1 = nd(rng);
    u.t2 = nd(rng);
    return u;
}

namespace {

/// Haar-distributed unitary (orthogonal over R) via QR of a Ginibre matrix
/// with the R-diagonal phases folded back in.
Eigen::MatrixXcd haar_block(int sz, FieldTag f, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXcd g(sz, sz);
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j)
            g(i, j) = Scalar(nd(rng),
                             f == FieldTag::Complex ? nd(rng) : 0.0);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < sz; ++i) {
        Scalar rii = r(i, i);
        Scalar phase = std::abs(rii) > 1e-300 ? rii / std::abs(rii)
                                              : Scalar(1.0, 0.0);
        q.col(i) *= phase;
    }
    return q;
}

} // namespace

GroupMatrix random_k(const GroupContext& ctx, Rng& rng) {
    int sz = ctx.size();
    int n = ctx.n;

    // Orthogonal eigenbasis of the form matrix: n columns with eigenvalue
    // +1, then 2 with eigenvalue -1.
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(sz, sz);
    double s = 1.0 / std::sqrt(2.0);
    v(0, 0) = s;
    v(sz - 1, 0) = s;
    v(1, 1) = s;
    v(sz - 2, 1) = s;
    for (int j = 0; j < n - 2; ++j) v(2 + j, 2 + j) = 1.0;
    v(0, n) = s;
    v(sz - 1, n) = -s;
    v(1, n + 1) = s;
    v(sz - 2, n + 1) = -s;

    Eigen::MatrixXcd uplus = haar_block(n, ctx.field, rng);
    Eigen::MatrixXcd uminus = haar_block(2, ctx.field, rng);

    Scalar det = uplus.determinant() * uminus.determinant();
    if (ctx.field == FieldTag::Complex) {
        uminus.col(1) *= std::conj(det) / std::abs(det);
    } else if (det.real() < 0.0) {
        uminus.col(1) *= -1.0;
    }

    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(sz, sz);
    block.topLeftCorner(n, n) = uplus;
    block.bottomRightCorner(2, 2) = uminus;
    Eigen::MatrixXcd k = v * block * v.transpose();
    return GroupMatrix(k, ctx);
}

GroupMatrix random_group(const GroupContext& ctx, Rng& rng) {
    ANElement u = 0.4 * random_an(ctx, rng);
    return GroupMatrix(exp_matrix(u), ctx) * random_k(ctx, rng);
}

ANElement random_unit_combo(const std::vector<ANElement>& basis, Rng& rng) {
    if (basis.empty())
        throw precondition_error("random_unit_combo: empty basis");
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        ANElement u = ANElement::zero(basis[0].ctx);
        for (const ANElement& b : basis) u = u + nd(rng) * b;
        double nrm = u.coord_norm();
        if (nrm > 1e-12) return (1.0 / nrm) * u;
    }
    throw numerical_error("random_unit_combo: degenerate basis");
}

} // namespace cartankit
