#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartankit/growth.hpp"

namespace cartankit {

struct ConditionClause {
    std::string key;
    bool holds = false;
    std::string detail;
};

/// Evaluation of a family-structure criterion on a subalgebra: dimension
/// bound, per-clause results, and (when a clause fails) a concrete witness
/// element that re-verifies under the violated predicate.
struct ConditionReport {
    bool all_hold = false;   // dimension at the bound and every clause holds
    int dim = 0;
    int dim_bound = 0;
    bool dim_at_bound = false;
    std::vector<ConditionClause> clauses;
    std::optional<ANElement> witness;
    std::string summary;
};

/// Structural conditions characterizing the subalgebras all of whose curves
/// grow quadratically (the H_B side; curves stay near chamber wall L_2).
/// Evaluated clauses, on a compatible spec S with U = span ^ n and
/// D_h = span ^ D:
///   (1) the torus factor is ker alpha (t1 = t2) and S = T |x U;
///   (2) phi = 0 on U;
///   (3) x_u, y_u span a 2-dimensional F-subspace for every u in U \ D_h;
///   (4) |eta_z|^2 + xx_z yy_z != 0 for every nonzero z in D_h (decided by
///       definiteness of the quadratic form on D_h);
///   (5) dim U/D_h = d_F (n-2);
///   (6) dim D_h = 2 d_F - 1.
/// all_hold additionally requires n even and dim S = d_F n (the equality
/// case of the dimension bound: d_F n for n even, d_F (n-1) for n odd).
/// Throws precondition_error if S is not compatible.
ConditionReport check_quadratic_family_structure(const SubalgebraSpec& s);

/// Structural conditions characterizing the subalgebras all of whose curves
/// grow linearly (the H_c side; curves stay near chamber wall L_1):
///   (1) the torus factor is ker beta (t2 = 0) and S = T |x U;
///   (2) y = 0 and yy = 0 on U, and the xx root space lies in U (over C);
///   (3) |x_u|^2 + 2 Re(phi_u conj(eta_u)) != 0 for every u in U outside
///       the xx root space (decided by definiteness on the image of
///       u -> (phi, x, eta, y, yy)).
/// all_hold additionally requires dim S = d_F n.
/// Throws precondition_error if S is not compatible.
ConditionReport check_linear_family_structure(const SubalgebraSpec& s);

/// Conjugation-invariant fingerprint of a linear-growth family member over
/// F = C at full dimension 2n. Construction: V = image of U under
/// u -> (phi, x, eta) inside the form space of Q(v,w) = phi_v conj(eta_w) +
/// x_v x_w^dagger + eta_v conj(phi_w); the Re Q-orthogonal complement of V
/// is 2-dimensional and negative definite; picking any pair u,v there with
/// Gram -2*Id, the value |Im Q(u,v)|^2 - 2 is independent of the pair and
/// of conjugation. Equals c + 1/c on hc_subalgebra(c).
/// Preconditions: F = C, check_linear_family_structure passes at full
/// dimension; throws precondition_error / numerical_error otherwise.
double hc_invariant(const SubalgebraSpec& s);

enum class FamilyTag { SU1n, Sp1m, HB, Hc };
const char* family_name(FamilyTag t);

struct FamilyMatch {
    FamilyTag tag;
    double c = 0.0;            // Hc parameter when tag == Hc
    std::optional<BMap> b;     // recovered B when tag == HB
    int m = 0;                 // Sp parameter when tag == Sp1m
    bool valid = false;        // validity for the tessellation claim
    std::string note;
};

/// Frame-exact recognition (no conjugacy search): matches span(S) against
/// sp1m_an, su1n_an (F = R), the H_B shape (recovering B by least squares),
/// and the H_c shape (recovering c). `valid` carries the extra conditions
/// required by the classification (B symplectic + eigenvector-free;
/// c in (0,1]).
std::optional<FamilyMatch> recognize_family(const SubalgebraSpec& s);

/// Classification outcome for G/H with H = exp(span S).
struct Verdict {
    enum class Kind { Yes, No, Unknown } kind;
    std::optional<FamilyTag> family;
    double c = 0.0;
    std::string reason;
};

/// Decision order: recognized valid family and n even -> Yes(family);
/// both growth classes found by cds_search -> No(CDS-evidence);
/// dim below the tessellation dimension bound (d_F n for n even,
/// d_F (n-1) for n odd) -> No(dimension-bound); else Unknown. Never Yes
/// for odd n; total (degenerate inputs give Unknown with a reason).
Verdict tessellation_verdict(const SubalgebraSpec& s, int budget = 200,
                             std::uint64_t seed = 20260814ull);

} // namespace cartankit
