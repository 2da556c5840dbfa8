#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartankit/ancoords.hpp"
#include "cartankit/linalg.hpp"

namespace cartankit {

/// A finite-dimensional subspace of a+n given by a basis. Construction
/// validates linear independence over R (bracket closure is a separate
/// check, lie_closure_defect, so that non-closed spans can still be fed to
/// the recognizers and searches).
struct SubalgebraSpec {
    GroupContext ctx;
    std::vector<ANElement> basis;
    std::string name;

    SubalgebraSpec(GroupContext c, std::vector<ANElement> b, std::string nm);

    int dim() const { return static_cast<int>(basis.size()); }

    /// Orthonormal column basis of the flattened span (cached on build).
    const Eigen::MatrixXd& span_basis() const { return span_; }

private:
    Eigen::MatrixXd span_;
};

/// An R-linear map B : F^(n-2) -> F^(n-2) in the row-vector convention
/// y = x B, stored as its real matrix on the realified coordinates
/// (Re x_0, Im x_0, Re x_1, ... over C; plain coordinates over R).
struct BMap {
    GroupContext ctx;
    Eigen::MatrixXd entries;

    BMap(GroupContext c, Eigen::MatrixXd e);
};

/// Realify a row vector of F^(n-2) to the interleaved real coordinates.
Eigen::RowVectorXd realify_row(const Eigen::RowVectorXcd& v, FieldTag f);
Eigen::RowVectorXcd unrealify_row(const Eigen::RowVectorXd& v, FieldTag f);

/// y = x B.
Eigen::RowVectorXcd apply_bmap(const BMap& b, const Eigen::RowVectorXcd& x);

/// Max residual of bracket(b_i, b_j) outside span(S) over all basis pairs;
/// zero iff the span is a Lie subalgebra.
double lie_closure_defect(const SubalgebraSpec& s);

/// SU(1,n;F) ^ (A+N) in these coordinates: { (t,0) torus; phi free;
/// x free; eta = phi; xx free; y = 0, yy = 0 }. Dimension d_F * n.
SubalgebraSpec su1n_an(const GroupContext& ctx);

/// Sp(1,m;F) ^ (A+N), embedded on the first 2m-2 coordinates of x:
/// { t1 = t2; phi = 0; y = sigma(x) with the quaternionic pairing
/// sigma(x)_{2j} = -conj(x_{2j+1}), sigma(x)_{2j+1} = conj(x_{2j});
/// eta free; yy = -xx }. Dimension 2 d_F m. Requires 2m <= n.
SubalgebraSpec sp1m_an(const GroupContext& ctx, int m);

/// The pairing sigma with sigma(x)_{2j} = -conj(x_{2j+1}),
/// sigma(x)_{2j+1} = conj(x_{2j}) on an even-length row vector.
Eigen::RowVectorXcd quaternionic_pairing(const Eigen::RowVectorXcd& x);

/// True iff Im((vB)(wB)^dagger) = -Im(v w^dagger) for all v,w (checked on a
/// real basis; sufficient by bilinearity). Always true over F = R.
bool check_B_symplectic(const BMap& b);

/// Outcome of the eigenvector search for an R-linear map: found == true
/// means a certified nonzero x with x B ~ lambda x exists (witness held);
/// found == false certifies that no unit x comes within tolerance 1e-8.
struct EigenfreeOutcome {
    bool found = false;
    Eigen::RowVectorXcd witness_x;
    Scalar witness_lambda{0.0, 0.0};
    double witness_residual = 0.0;
    double certified_floor = 0.0;
};

EigenfreeOutcome eigenvector_search(const BMap& b);

/// Core decision kernel, also used on restricted domains: does some unit
/// row vector w P (P with orthonormal rows) satisfy w P B ~ lambda (w P)
/// for a scalar lambda in F? Decided by a certified branch-and-bound on
/// f(lambda) = sigma_min(P (B - Re(lambda) I - Im(lambda) J)), which is
/// exactly 1-Lipschitz in lambda. Throws numerical_error when the global
/// minimum sits inside the margin band around the 1e-8 threshold.
EigenfreeOutcome restricted_eigen_decide(const Eigen::MatrixXd& p_rows,
                                         const Eigen::MatrixXd& b_real,
                                         FieldTag field);

/// True iff no nonzero x in F^(n-2) has x B in F x. Over R this is "no real
/// eigenvalue"; over C it is decided by a certified global minimization of
/// sigma_min(B_real - p I - q J) over lambda = p + iq (J = multiplication
/// by i on the realification), which is 1-Lipschitz in lambda.
bool check_B_eigenfree(const BMap& b);

/// The deformation family H_B: { t1 = t2 = t; phi = 0; x free; y = x B;
/// eta free; yy = -xx }. Requires check_B_symplectic(B) (else the span is
/// not closed under the bracket and precondition_error is thrown).
/// Dimension d_F * n.
SubalgebraSpec hb_subalgebra(const BMap& b);

/// The deformation family H_c: { t2 = 0; y = 0; yy = 0; phi free; x free;
/// eta = Re(phi) + c * Im(phi); xx free }. Closed for every real c;
/// dimension d_F * n. Over F = R it coincides with su1n_an (c irrelevant),
/// and over F = C with c = 1 it equals su1n_an as well.
SubalgebraSpec hc_subalgebra(const GroupContext& ctx, double c);

/// Intersection of span(S) with the central slice D = { nilpotent elements
/// with phi = x = y = 0 } (only eta, xx, yy survive).
SubalgebraSpec dn_part(const SubalgebraSpec& s);

/// Intersection of span(S) with { u in n : phi_u = 0 }.
SubalgebraSpec uphi0_part(const SubalgebraSpec& s);

/// Report of the compatibility normal form H <= T U C_N(T): T is the
/// projection of the span to the torus, U = span ^ n, and every basis
/// element must decompose as torus + U-part + a part supported on root
/// spaces vanishing on T.
struct CompatibilityReport {
    bool compatible = false;
    bool semidirect = false; // span = T (embedded) + U
    int dim_t = 0;
    int dim_u = 0;
    /// "trivial", "ker alpha", "ker beta", "ker alpha+2beta", "full", "line".
    std::string t_label;
    Eigen::Matrix<double, 2, Eigen::Dynamic> t_basis;
    double worst_residual = 0.0;
    std::string detail;
};

CompatibilityReport is_compatible(const SubalgebraSpec& s);

} // namespace cartankit
