#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "cartankit/families.hpp"

namespace cartankit {

/// A one-parameter curve exp(t * generator) evaluated on a grid of t values.
struct CurveSpec {
    ANElement generator;
    Eigen::VectorXd t_grid;

    /// Geometric grid 2^0 .. 2^10, 64 points.
    static CurveSpec with_default_grid(ANElement gen);
};

struct CurveSample {
    double t;
    double log_norm; // log sup_norm(exp(t u))
    double log_rho;  // log rho_norm(exp(t u))
    double log_a11;
    double log_a22;
};

struct CurveSamples {
    std::vector<CurveSample> rows;
    bool truncated = false; // grid cut short before overflow
};

/// Norms and Cartan projection of exp(t * generator) per grid point. The
/// grid is truncated (with a flag) once sup_norm exceeds ~1e130, before the
/// 2x2 minors can overflow.
CurveSamples sample_curve(const CurveSpec& c);

enum class GrowthKind { Linear, Quadratic, Intermediate, Bounded };

/// Growth of rho_norm against sup_norm along the curve: the least-squares
/// slope kappa of log rho vs log sup over the top half of the surviving
/// grid, mapped to a class by the bands |kappa-1| < 0.1 (Linear) and
/// |kappa-2| < 0.1 (Quadratic).
struct GrowthClass {
    GrowthKind kind;
    double kappa;
    bool truncated;
};

GrowthClass classify_growth(const CurveSpec& c);
const char* growth_name(GrowthKind k);

/// Exact coefficients (ascending, degree 0..4) of the polynomial
/// Delta(exp(t u)) for nilpotent u with phi = 0:
///   t^2: -(|eta|^2 + xx*yy)
///   t^3: 1/2 (xx |y|^2 + yy |x|^2) + Im(x y^dagger conj(eta))
///   t^4: -1/4 (|x|^2 |y|^2 - |x y^dagger|^2)
/// (Im includes the i; degrees 0 and 1 vanish identically.)
/// Throws precondition_error unless t1 = t2 = 0 and phi = 0.
std::array<Scalar, 5> delta_poly_coeffs(const ANElement& u);

/// Search for curves of each growth class inside span(S): tries the basis
/// elements, their pairwise sums, and `budget` random unit combinations.
/// Finding both classes proves the subgroup meets both chamber walls
/// (Cartan-decomposition evidence); absence of a class is heuristic only.
struct CdsReport {
    std::optional<ANElement> found_linear;
    std::optional<ANElement> found_quadratic;
    enum class Verdict {
        CdsEvidence,
        NoLinearObserved,
        NoQuadraticObserved,
        NeitherObserved,
    } verdict;
    int curves_tested = 0;
};

CdsReport cds_search(const SubalgebraSpec& s, int budget, std::uint64_t seed);

} // namespace cartankit
