#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cartankit/sunf.hpp"

namespace cartankit {

/// An element of the solvable Lie algebra a+n of SU(2,n;F) in explicit
/// coordinates. The matrix is determined by its first two rows
///   ( t1  phi  x    eta   xx )
///   ( 0   t2   y    yy   -conj(eta) )
/// with t1,t2 real, phi,eta in F, x,y row vectors in F^(n-2), and xx,yy
/// purely imaginary (hence zero over F = R). The remaining rows are forced
/// by the membership identity u J + J u^dagger = 0.
struct ANElement {
    GroupContext ctx;
    double t1 = 0.0;
    double t2 = 0.0;
    Scalar phi{0.0, 0.0};
    Eigen::RowVectorXcd x;
    Eigen::RowVectorXcd y;
    Scalar eta{0.0, 0.0};
    Scalar xx{0.0, 0.0};
    Scalar yy{0.0, 0.0};

    explicit ANElement(const GroupContext& c);

    static ANElement zero(const GroupContext& c) { return ANElement(c); }

    /// True iff the torus part vanishes (element of n).
    bool is_nilpotent(double tol) const;

    /// Euclidean norm of the flattened coordinate vector.
    double coord_norm() const;
};

/// Throws precondition_error if sizes are wrong, entries leave the field
/// (F = R with imaginary residue), or xx/yy have a real residue.
void validate(const ANElement& u);

ANElement operator+(const ANElement& a, const ANElement& b);
ANElement operator-(const ANElement& a, const ANElement& b);
ANElement operator*(double s, const ANElement& a);

/// Index layout of the flattened real coordinate vector of an ANElement.
/// Over R: [t1, t2, phi, x_0.., y_0.., eta], dimension 2n.
/// Over C: [t1, t2, Re phi, Im phi, Re x_0, Im x_0, .., Re y.., Re eta,
///          Im eta, Im xx, Im yy], dimension 4n.
struct FlatLayout {
    int dim;
    int t1, t2;
    int phi, phi_len;
    int x, x_len;
    int y, y_len;
    int eta, eta_len;
    int xx, xx_len; // zero length over R
    int yy, yy_len;
};

FlatLayout flat_layout(const GroupContext& ctx);
int an_flat_dim(const GroupContext& ctx);

Eigen::VectorXd flatten(const ANElement& u);
ANElement unflatten(const GroupContext& ctx, const Eigen::VectorXd& v);

/// The (n+2) x (n+2) matrix of u.
Eigen::MatrixXcd to_matrix(const ANElement& u);

/// Inverse of to_matrix. Validates the full shape, including the dependent
/// rows 3..n+2 against the free parameters, and throws precondition_error
/// on any violation. Round-trips to_matrix bit-exactly.
ANElement from_matrix(const Eigen::MatrixXcd& m, const GroupContext& ctx);

/// Truncated-series exponential Id + m + m^2/2 + m^3/6 + m^4/24. Exact for
/// the nilpotent part n of this algebra (every such matrix has m^5 = 0);
/// used as the independent oracle for exp_closed.
Eigen::MatrixXcd exp_series_nilpotent(const Eigen::MatrixXcd& m);

/// Closed-form exponential of a nilpotent element (t1 = t2 = 0 required;
/// throws precondition_error otherwise — use exp_general for mixed input).
GroupMatrix exp_closed(const ANElement& u);

/// Exponential of an arbitrary element via scaling-and-squaring.
GroupMatrix exp_general(const ANElement& u);

/// Raw matrix exponential of to_matrix(u), without the group-membership
/// validation of exp_general (used where the result is consumed directly).
Eigen::MatrixXcd exp_matrix(const ANElement& u);

/// Lie bracket. Uses the closed coordinate form when both arguments are
/// nilpotent and falls back to the matrix commutator otherwise; the two
/// paths agree (tested).
ANElement bracket(const ANElement& u, const ANElement& v);

/// Ad(exp(v))^{-1} applied to u, i.e. exp(-v) u exp(v) =
/// u + [u,v] + 1/2 [[u,v],v] + ... (the series is finite for nilpotent v).
ANElement conjugate_by_exp(const ANElement& u, const ANElement& v);

/// The restricted-root labels of a+n. The nilpotent slots are
/// alpha -> phi, beta -> y, alpha+beta -> x, alpha+2beta -> eta,
/// 2beta -> yy, 2alpha+2beta -> xx; Zero labels the torus (t1,t2).
enum class RootLabel {
    Alpha,
    Beta,
    AlphaBeta,
    Alpha2Beta,
    TwoBeta,
    TwoAlphaTwoBeta,
    Zero,
};

const char* root_name(RootLabel r);

/// Value of the root on the torus direction (t1, t2):
/// alpha: t1-t2, beta: t2, alpha+beta: t1, alpha+2beta: t1+t2,
/// 2beta: 2t2, 2alpha+2beta: 2t1, Zero: 0.
double root_value(RootLabel r, double t1, double t2);

/// Projection of u onto the named root space; the components over all
/// labels including Zero sum back to u. Requesting 2beta or 2alpha+2beta
/// over F = R returns the zero element (those root spaces vanish).
ANElement root_component(const ANElement& u, RootLabel r);

/// Splits span(V) under the torus direction tau into the part supported on
/// root spaces whose restriction to tau equals omega's and the complement:
/// returns (basis of span(V) ^ N^{=omega}, basis of span(V) ^ N^{!=omega}).
/// All elements must be nilpotent and the span invariant under ad of tau
/// (throws precondition_error with the bracket defect otherwise).
std::pair<std::vector<ANElement>, std::vector<ANElement>> rootdecomp_split(
    const std::vector<ANElement>& v, std::pair<double, double> t_direction,
    RootLabel omega);

} // namespace cartankit
