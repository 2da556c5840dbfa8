#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cartankit {

/// The base field F of the group: real or complex coefficients.
enum class FieldTag { Real, Complex };

/// All arithmetic is carried out in complex<double>; elements over the real
/// field simply keep their imaginary parts at zero (validated on entry).
using Scalar = std::complex<double>;

/// Real dimension of F (1 for R, 2 for C). Written d_F in the docs.
constexpr int field_dim(FieldTag f) { return f == FieldTag::Real ? 1 : 2; }

constexpr const char* field_name(FieldTag f) {
    return f == FieldTag::Real ? "R" : "C";
}

/// Default absolute tolerance used by validators and rank cutoffs.
/// Overridable through the environment variable CARTANKIT_TOL.
double default_tol();

/// Real part of z, kept as a (real) complex number.
inline Scalar re_part(Scalar z) { return {z.real(), 0.0}; }

/// Imaginary part of z *including* the i: im_part(a+bi) = bi. All formulas
/// in this library that mention an "imaginary part" use this convention.
inline Scalar im_part(Scalar z) { return {0.0, z.imag()}; }

/// Conjugate transpose.
inline Eigen::MatrixXcd dagger(const Eigen::MatrixXcd& m) { return m.adjoint(); }

/// a * b^dagger for row vectors: sum_i a_i * conj(b_i).
inline Scalar row_dot_dagger(const Eigen::RowVectorXcd& a, const Eigen::RowVectorXcd& b) {
    Scalar s{0.0, 0.0};
    for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * std::conj(b(i));
    return s;
}

/// Largest entry magnitude that still vanishes under the field constraint:
/// true iff z lies in F (imaginary part ~ 0 when F = R).
inline bool in_field(Scalar z, FieldTag f, double tol) {
    return f == FieldTag::Complex || std::abs(z.imag()) <= tol;
}

} // namespace cartankit
