#pragma once

#include <Eigen/Dense>

#include "cartankit/errors.hpp"
#include "cartankit/scalars.hpp"

namespace cartankit {

/// Which group SU(2,n;F) we work in: the field F and the integer n >= 3.
/// Matrices are (n+2) x (n+2); the invariant Hermitian form is represented
/// by the matrix J with ones on the two anti-diagonal corner pairs and the
/// identity on the middle (n-2) block, so that J = J^dagger and J^2 = Id.
struct GroupContext {
    FieldTag field;
    int n;

    GroupContext(FieldTag f, int n_);

    int size() const { return n + 2; }

    /// The form matrix J described above.
    Eigen::MatrixXcd form_matrix() const;

    bool operator==(const GroupContext& o) const {
        return field == o.field && n == o.n;
    }
};

void require_same_context(const GroupContext& a, const GroupContext& b,
                          const char* where);

/// Max-entry norm of g J g^dagger - J; zero exactly on the group.
double membership_defect(const Eigen::MatrixXcd& m, const GroupContext& ctx);

/// An element of SU(2,n;F). Construction validates membership (defect and
/// |det| = 1 at moderate scale, with conditioning-aware tolerances at large
/// scale) and realness of the entries when F = R.
class GroupMatrix {
public:
    GroupMatrix(Eigen::MatrixXcd entries, GroupContext ctx);

    const Eigen::MatrixXcd& mat() const { return entries_; }
    const GroupContext& context() const { return ctx_; }

    /// Exact inverse J g^dagger J (from the defining identity g J g^dagger = J).
    GroupMatrix inverse() const;

    GroupMatrix operator*(const GroupMatrix& o) const;

private:
    Eigen::MatrixXcd entries_;
    GroupContext ctx_;
};

/// Largest entry magnitude of g.
double sup_norm(const GroupMatrix& g);

/// Largest magnitude over all 2x2 minors of g (the operator's size in the
/// second exterior power). Brute force over O(n^4) index pairs; switches to
/// a scaled evaluation above sup ~ 1e150 to avoid overflow.
double rho_norm(const GroupMatrix& g);

/// The 2x2 minor in the top right corner:
/// det [[g_{1,n+1}, g_{1,n+2}], [g_{2,n+1}, g_{2,n+2}]] (1-based indices).
Scalar delta(const GroupMatrix& g);

/// A point of the positive Weyl chamber A+ = { a11 >= a22 >= 1 }, i.e. the
/// diagonal group element diag(a11, a22, 1, ..., 1, 1/a22, 1/a11).
struct CartanPoint {
    double a11;
    double a22;
};

/// Cartan projection: the unique a in A+ with g in K a K, realized through
/// the singular values of g (the K factors are unitary, so the singular
/// values of g equal the diagonal of a). Verifies that the singular-value
/// multiset has the reciprocal-pair shape {a11, a22, 1 x (n-2), 1/a22, 1/a11}
/// and throws numerical_error otherwise.
CartanPoint cartan_mu(const GroupMatrix& g);

/// Distance in log coordinates from p to the chamber wall L_k, defined by
/// a22 = a11^(k-1): |log a22 - (k-1) log a11|. k must be 1 or 2.
double wall_distance(const CartanPoint& p, int k);

} // namespace cartankit
