#include "cartankit/sunf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cartankit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Conditioning-aware absolute tolerance for the quadratic membership
/// identity at scale s (reduces to the configured tolerance at desk scale).
double membership_tol(int size, double s) {
    return std::max(default_tol(),
                    64.0 * size * kEps * std::max(1.0, s) * std::max(1.0, s));
}

double max_abs(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace

GroupContext::GroupContext(FieldTag f, int n_) : field(f), n(n_) {
    if (n < 3)
        throw precondition_error("GroupContext requires n >= 3, got n = " +
                                 std::to_string(n));
}

Eigen::MatrixXcd GroupContext::form_matrix() const {
    int sz = size();
    Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(sz, sz);
    j(0, sz - 1) = 1.0;
    j(sz - 1, 0) = 1.0;
    j(1, sz - 2) = 1.0;
    j(sz - 2, 1) = 1.0;
    for (int i = 2; i < sz - 2; ++i) j(i, i) = 1.0;
    return j;
}

void require_same_context(const GroupContext& a, const GroupContext& b,
                          const char* where) {
    if (!(a == b)) {
        std::ostringstream os;
        os << where << ": mismatched contexts (" << field_name(a.field) << ", n="
           << a.n << ") vs (" << field_name(b.field) << ", n=" << b.n << ")";
        throw precondition_error(os.str());
    }
}

double membership_defect(const Eigen::MatrixXcd& m, const GroupContext& ctx) {
    Eigen::MatrixXcd j = ctx.form_matrix();
    return max_abs(m * j * m.adjoint() - j);
}

GroupMatrix::GroupMatrix(Eigen::MatrixXcd entries, GroupContext ctx)
    : entries_(std::move(entries)), ctx_(ctx) {
    int sz = ctx_.size();
    if (entries_.rows() != sz || entries_.cols() != sz)
        throw precondition_error("GroupMatrix: expected size " +
                                 std::to_string(sz) + ", got " +
                                 std::to_string(entries_.rows()) + "x" +
                                 std::to_string(entries_.cols()));
    if (!entries_.allFinite())
        throw numerical_error("GroupMatrix: non-finite entries");

    double s = max_abs(entries_);
    double tol = membership_tol(sz, s);
    double defect = membership_defect(entries_, ctx_);
    if (defect > tol) {
        std::ostringstream os;
        os << "GroupMatrix: membership defect " << defect
           << " exceeds tolerance " << tol;
        throw precondition_error(os.str());
    }
    if (ctx_.field == FieldTag::Real &&
        entries_.imag().cwiseAbs().maxCoeff() > tol)
        throw precondition_error(
            "GroupMatrix: imaginary entries in a real-field matrix");

    // |det| = 1 follows from the membership identity; verify it explicitly at
    // moderate scale, where the LU determinant is reliable.
    if (s <= 1e3) {
        double absdet = std::abs(entries_.partialPivLu().determinant());
        if (std::abs(absdet - 1.0) > 1e-6)
            throw precondition_error("GroupMatrix: |det| = " +
                                     std::to_string(absdet) + " != 1");
    }
}

GroupMatrix GroupMatrix::inverse() const {
    Eigen::MatrixXcd j = ctx_.form_matrix();
    return GroupMatrix(j * entries_.adjoint() * j, ctx_);
}

GroupMatrix GroupMatrix::operator*(const GroupMatrix& o) const {
    require_same_context(ctx_, o.ctx_, "GroupMatrix product");
    return GroupMatrix(entries_ * o.entries_, ctx_);
}

double sup_norm(const GroupMatrix& g) { return max_abs(g.mat()); }

namespace {

double max_minor_scaled(const Eigen::MatrixXcd& m, double scale) {
    int sz = static_cast<int>(m.rows());
    double best = 0.0;
    for (int j = 0; j < sz; ++j)
        for (int mm = j + 1; mm < sz; ++mm)
            for (int k = 0; k < sz; ++k)
                for (int l = k + 1; l < sz; ++l) {
                    Scalar minor = (m(j, k) / scale) * (m(mm, l) / scale) -
                                   (m(j, l) / scale) * (m(mm, k) / scale);
                    best = std::max(best, std::abs(minor));
                }
    return best;
}

} // namespace

double rho_norm(const GroupMatrix& g) {
    double s = sup_norm(g);
    if (s <= 1e150) return max_minor_scaled(g.mat(), 1.0);
    double r = max_minor_scaled(g.mat(), s) * s * s;
    if (!std::isfinite(r))
        throw numerical_error("rho_norm: overflow in 2x2 minors");
    return r;
}

Scalar delta(const GroupMatrix& g) {
    const Eigen::MatrixXcd& m = g.mat();
    int sz = static_cast<int>(m.rows());
    return m(0, sz - 2) * m(1, sz - 1) - m(0, sz - 1) * m(1, sz - 2);
}

CartanPoint cartan_mu(const GroupMatrix& g) {
    const Eigen::MatrixXcd& m = g.mat();
    int sz = static_cast<int>(m.rows());

    Eigen::VectorXd sv;
    bool diagonal = true;
    for (int i = 0; i < sz && diagonal; ++i)
        for (int j = 0; j < sz; ++j)
            if (i != j && m(i, j) != Scalar(0.0, 0.0)) {
                diagonal = false;
                break;
            }
    if (diagonal) {
        // Exact fast path: the singular values of a diagonal matrix are the
        // entry magnitudes (keeps mu(a) = a bit-exact on the chamber).
        sv.resize(sz);
        for (int i = 0; i < sz; ++i) sv(i) = std::abs(m(i, i));
        std::sort(sv.data(), sv.data() + sz, std::greater<double>());
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        sv = svd.singularValues();
    }

    double s1 = sv(0);
    double ptol = std::max(1e-6, 4096.0 * sz * kEps * s1 * s1);
    for (int i = 0; i < sz; ++i) {
        double prod = sv(i) * sv(sz - 1 - i);
        if (std::abs(prod - 1.0) > ptol) {
            std::ostringstream os;
            os << "cartan_mu: singular values lack the reciprocal-pair shape "
                  "(sigma_"
               << i + 1 << " * sigma_" << sz - i << " = " << prod << ")";
            throw numerical_error(os.str());
        }
    }
    for (int i = 2; i <= sz - 3; ++i)
        if (std::abs(sv(i) - 1.0) > ptol)
            throw numerical_error(
                "cartan_mu: middle singular values deviate from 1 (sigma = " +
                std::to_string(sv(i)) + ")");

    double a11 = std::max(1.0, sv(0));
    double a22 = std::clamp(sv(1), 1.0, a11);
    return {a11, a22};
}

double wall_distance(const CartanPoint& p, int k) {
    if (k != 1 && k != 2)
        throw precondition_error("wall_distance: k must be 1 or 2");
    return std::abs(std::log(p.a22) - (k - 1) * std::log(p.a11));
}

} // namespace cartankit
