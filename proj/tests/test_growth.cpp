#include <doctest.h>

#include <cmath>

#include "cartankit/growth.hpp"
#include "cartankit/sampling.hpp"

using namespace cartankit;

namespace {

ANElement torus_gen(const GroupContext& ctx, double t1, double t2) {
    ANElement u(ctx);
    u.t1 = t1;
    u.t2 = t2;
    return u;
}

} // namespace

TEST_CASE("the default grid is geometric from 1 to 1024") {
    GroupContext ctx(FieldTag::Real, 4);
    CurveSpec c = CurveSpec::with_default_grid(torus_gen(ctx, 1, 0));
    REQUIRE(c.t_grid.size() == 64);
    CHECK(c.t_grid(0) == doctest::Approx(1.0));
    CHECK(c.t_grid(63) == doctest::Approx(1024.0));
    for (int i = 1; i < 64; ++i) CHECK(c.t_grid(i) > c.t_grid(i - 1));
}

TEST_CASE("sampling truncates before the norms overflow") {
    GroupContext ctx(FieldTag::Real, 4);
    CurveSamples s =
        sample_curve(CurveSpec::with_default_grid(torus_gen(ctx, 3, 0)));
    CHECK(s.truncated);
    CHECK(s.rows.size() < 64);
    CHECK(!s.rows.empty());
    for (const CurveSample& r : s.rows) {
        CHECK(std::isfinite(r.log_norm));
        CHECK(std::isfinite(r.log_rho));
    }
}

TEST_CASE("torus directions grow linearly off the diagonal wall") {
    GroupContext ctx(FieldTag::Real, 4);
    GrowthClass g = classify_growth(
        CurveSpec::with_default_grid(torus_gen(ctx, 1, 0)));
    CHECK(g.kind == GrowthKind::Linear);
    CHECK(g.kappa == doctest::Approx(1.0).epsilon(0.02));
    GrowthClass g2 = classify_growth(
        CurveSpec::with_default_grid(torus_gen(ctx, 0, 1)));
    CHECK(g2.kind == GrowthKind::Linear);
}

TEST_CASE("the diagonal torus direction grows quadratically") {
    GroupContext ctx(FieldTag::Real, 4);
    GrowthClass g = classify_growth(
        CurveSpec::with_default_grid(torus_gen(ctx, 1, 1)));
    CHECK(g.kind == GrowthKind::Quadratic);
    CHECK(g.kappa == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("the zero curve is bounded") {
    GroupContext ctx(FieldTag::Real, 4);
    GrowthClass g =
        classify_growth(CurveSpec::with_default_grid(ANElement::zero(ctx)));
    CHECK(g.kind == GrowthKind::Bounded);
}

TEST_CASE("central directions with nonvanishing corner form grow quadratically") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement u(ctx);
    u.eta = Scalar(1.0, 0.0);
    GrowthClass g = classify_growth(CurveSpec::with_default_grid(u));
    CHECK(g.kind == GrowthKind::Quadratic);
}

TEST_CASE("central directions killing the corner form grow linearly") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement u(ctx);
    u.eta = Scalar(1.0, 0.0);
    u.xx = Scalar(0.0, 1.0);
    u.yy = Scalar(0.0, 1.0); // |eta|^2 + xx*yy = 1 - 1 = 0
    GrowthClass g = classify_growth(CurveSpec::with_default_grid(u));
    CHECK(g.kind == GrowthKind::Linear);
}

TEST_CASE("independent x and y directions grow quadratically") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement u(ctx);
    u.x(0) = Scalar(1.0, 0.0);
    u.y(1) = Scalar(1.0, 0.0);
    GrowthClass g = classify_growth(CurveSpec::with_default_grid(u));
    CHECK(g.kind == GrowthKind::Quadratic);
}

TEST_CASE("corner-minor polynomial on pure slots") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement u(ctx);
    u.eta = Scalar(1.0, 0.0);
    auto c = delta_poly_coeffs(u);
    CHECK(c[0] == Scalar(0, 0));
    CHECK(c[1] == Scalar(0, 0));
    CHECK(c[2] == Scalar(-1.0, 0.0));
    CHECK(c[3] == Scalar(0, 0));
    CHECK(c[4] == Scalar(0, 0));

    ANElement v(ctx);
    v.y(0) = Scalar(1.0, 0.0);
    v.xx = Scalar(0.0, 1.0);
    auto cv = delta_poly_coeffs(v);
    CHECK(cv[2] == Scalar(0, 0));
    CHECK(std::abs(cv[3] - Scalar(0.0, 0.5)) < 1e-15); // 1/2 xx |y|^2
    CHECK(cv[4] == Scalar(0, 0));
}

TEST_CASE("corner-minor polynomial matches the evaluated minor") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 5);
        Rng rng(41);
        for (int i = 0; i < 10; ++i) {
            ANElement u = random_nilpotent(ctx, rng);
            u.phi = Scalar(0.0, 0.0);
            auto c = delta_poly_coeffs(u);
            for (double t : {0.3, 1.0, 1.7}) {
                Scalar direct = delta(exp_closed(t * u));
                Scalar poly = c[2] * t * t + c[3] * t * t * t +
                              c[4] * t * t * t * t;
                CHECK(std::abs(direct - poly) <=
                      1e-10 * std::max(1.0, std::abs(direct)));
            }
        }
    }
}

TEST_CASE("corner-minor polynomial requires phi = 0 and no torus part") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement u(ctx);
    u.phi = Scalar(1.0, 0.0);
    CHECK_THROWS_AS(delta_poly_coeffs(u), precondition_error);
    ANElement v(ctx);
    v.t1 = 1.0;
    CHECK_THROWS_AS(delta_poly_coeffs(v), precondition_error);
}

TEST_CASE("growth search finds both classes inside the diagonal torus") {
    GroupContext ctx(FieldTag::Real, 4);
    SubalgebraSpec a_span(
        ctx, {torus_gen(ctx, 1, 0), torus_gen(ctx, 0, 1)}, "a");
    CdsReport r = cds_search(a_span, 50, 1);
    CHECK(r.verdict == CdsReport::Verdict::CdsEvidence);
    REQUIRE(r.found_linear.has_value());
    REQUIRE(r.found_quadratic.has_value());
    CHECK(classify_growth(CurveSpec::with_default_grid(*r.found_linear)).kind ==
          GrowthKind::Linear);
    CHECK(classify_growth(CurveSpec::with_default_grid(*r.found_quadratic))
              .kind == GrowthKind::Quadratic);
}

TEST_CASE("growth search sees only one class inside the standard families") {
    GroupContext cc(FieldTag::Complex, 4);
    CdsReport lin = cds_search(su1n_an(cc), 40, 2);
    CHECK(lin.verdict == CdsReport::Verdict::NoQuadraticObserved);
    CHECK(lin.found_linear.has_value());
    CHECK_FALSE(lin.found_quadratic.has_value());
    CdsReport quad = cds_search(sp1m_an(cc, 2), 40, 3);
    CHECK(quad.verdict == CdsReport::Verdict::NoLinearObserved);
}

TEST_CASE("growth names are stable strings") {
    CHECK(std::string(growth_name(GrowthKind::Linear)) == "linear");
    CHECK(std::string(growth_name(GrowthKind::Quadratic)) == "quadratic");
    CHECK(std::string(growth_name(GrowthKind::Intermediate)) == "intermediate");
    CHECK(std::string(growth_name(GrowthKind::Bounded)) == "bounded");
}
