#include "cartankit/growth.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "cartankit/sampling.hpp"

namespace cartankit {

namespace {
constexpr double kNormCeiling = 1e130;
}

CurveSpec CurveSpec::with_default_grid(ANElement gen) {
    CurveSpec c{std::move(gen), Eigen::VectorXd(64)};
    for (int i = 0; i < 64; ++i)
        c.t_grid(i) = std::pow(2.0, 10.0 * i / 63.0);
    return c;
}

CurveSamples sample_curve(const CurveSpec& c) {
    validate(c.generator);
    CurveSamples out;
    out.rows.reserve(c.t_grid.size());
    for (Eigen::Index i = 0; i < c.t_grid.size(); ++i) {
        double t = c.t_grid(i);
        Eigen::MatrixXcd e = exp_matrix(t * c.generator);
        double sup = e.allFinite() ? e.cwiseAbs().maxCoeff()
                                   : std::numeric_limits<double>::infinity();
        if (!(sup <= kNormCeiling)) {
            out.truncated = true;
            break;
        }
        GroupMatrix g(e, c.generator.ctx);
        CartanPoint mu = cartan_mu(g);
        CurveSample row;
        row.t = t;
        row.log_norm = std::log(sup_norm(g));
        row.log_rho = std::log(rho_norm(g));
        row.log_a11 = std::log(mu.a11);
        row.log_a22 = std::log(mu.a22);
        out.rows.push_back(row);
    }
    return out;
}

GrowthClass classify_growth(const CurveSpec& c) {
    CurveSamples s = sample_curve(c);
    if (static_cast<int>(s.rows.size()) < 8)
        throw numerical_error(
            "classify_growth: fewer than 8 usable grid points (curve "
            "overflows too early); rescale the generator");

    double lo = s.rows.front().log_norm, hi = lo;
    for (const CurveSample& r : s.rows) {
        lo = std::min(lo, r.log_norm);
        hi = std::max(hi, r.log_norm);
    }
    if (hi - lo < 1e-3) return {GrowthKind::Bounded, 0.0, s.truncated};

    // Fit over the tail t >= geometric midpoint of the surviving grid, where
    // the asymptotic regime dominates.
    double tmid = std::sqrt(s.rows.front().t * s.rows.back().t);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const CurveSample& r : s.rows) {
        if (r.t < tmid) continue;
        sx += r.log_norm;
        sy += r.log_rho;
        sxx += r.log_norm * r.log_norm;
        sxy += r.log_norm * r.log_rho;
        ++cnt;
    }
    double denom = sxx - sx * sx / cnt;
    if (cnt < 2 || denom < 1e-12)
        return {GrowthKind::Bounded, 0.0, s.truncated};
    double kappa = (sxy - sx * sy / cnt) / denom;

    GrowthKind kind = GrowthKind::Intermediate;
    if (std::abs(kappa - 1.0) < 0.1)
        kind = GrowthKind::Linear;
    else if (std::abs(kappa - 2.0) < 0.1)
        kind = GrowthKind::Quadratic;
    return {kind, kappa, s.truncated};
}

const char* growth_name(GrowthKind k) {
    switch (k) {
        case GrowthKind::Linear: return "linear";
        case GrowthKind::Quadratic: return "quadratic";
        case GrowthKind::Intermediate: return "intermediate";
        case GrowthKind::Bounded: return "bounded";
    }
    return "?";
}

std::array<Scalar, 5> delta_poly_coeffs(const ANElement& u) {
    double tol = default_tol();
    if (!u.is_nilpotent(tol) || std::abs(u.phi) > tol)
        throw precondition_error(
            "delta_poly_coeffs requires t1 = t2 = 0 and phi = 0");
    const double x2 = u.x.squaredNorm();
    const double y2 = u.y.squaredNorm();
    const Scalar xyd = row_dot_dagger(u.x, u.y);
    std::array<Scalar, 5> c{};
    c[2] = -(Scalar(std::norm(u.eta), 0.0) + u.xx * u.yy);
    c[3] = 0.5 * (u.xx * y2 + u.yy * x2) + im_part(xyd * std::conj(u.eta));
    c[4] = Scalar(-0.25 * (x2 * y2 - std::norm(xyd)), 0.0);
    return c;
}

CdsReport cds_search(const SubalgebraSpec& s, int budget, std::uint64_t seed) {
    CdsReport rep;
    rep.verdict = CdsReport::Verdict::NeitherObserved;

    auto consider = [&](const ANElement& raw) -> bool {
        double nrm = raw.coord_norm();
        if (nrm < 1e-12) return false;
        ANElement gen = (1.0 / nrm) * raw;
        GrowthClass g;
        try {
            g = classify_growth(CurveSpec::with_default_grid(gen));
        } catch (const numerical_error&) {
            return false;
        }
        ++rep.curves_tested;
        if (g.kind == GrowthKind::Linear && !rep.found_linear)
            rep.found_linear = gen;
        if (g.kind == GrowthKind::Quadratic && !rep.found_quadratic)
            rep.found_quadratic = gen;
        return rep.found_linear && rep.found_quadratic;
    };

    bool done = false;
    for (int i = 0; i < s.dim() && !done; ++i) done = consider(s.basis[i]);
    for (int i = 0; i < s.dim() && !done; ++i)
        for (int j = i + 1; j < s.dim() && !done; ++j)
            done = consider(s.basis[i] + s.basis[j]);
    if (!done && s.dim() > 0) {
        Rng rng(seed);
        for (int i = 0; i < budget && !done; ++i)
            done = consider(random_unit_combo(s.basis, rng));
    }

    if (rep.found_linear && rep.found_quadratic)
        rep.verdict = CdsReport::Verdict::CdsEvidence;
    else if (rep.found_linear)
        rep.verdict = CdsReport::Verdict::NoQuadraticObserved;
    else if (rep.found_quadratic)
        rep.verdict = CdsReport::Verdict::NoLinearObserved;
    return rep;
}

} // namespace cartankit
