#include <doctest.h>

#include <cmath>

#include "cartankit/sampling.hpp"

using namespace cartankit;

namespace {

ANElement eta_generator(const GroupContext& ctx, Scalar eta) {
    ANElement u(ctx);
    u.eta = eta;
    return u;
}

} // namespace

TEST_CASE("matrix form round-trips bit-exactly") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 5);
        Rng rng(3);
        for (int i = 0; i < 10; ++i) {
            ANElement u = random_an(ctx, rng);
            ANElement v = from_matrix(to_matrix(u), ctx);
            CHECK((flatten(u) - flatten(v)).cwiseAbs().maxCoeff() == 0.0);
        }
    }
}

TEST_CASE("matrix form rejects violated dependent entries") {
    GroupContext ctx(FieldTag::Complex, 4);
    Rng rng(5);
    Eigen::MatrixXcd m = to_matrix(random_an(ctx, rng));
    m(2, 5) += Scalar(0.1, 0.0); // forced to -conj(x_0) by the form identity
    CHECK_THROWS_AS(from_matrix(m, ctx), precondition_error);
    Eigen::MatrixXcd lower = to_matrix(random_an(ctx, rng));
    lower(3, 0) = Scalar(1.0, 0.0); // below the allowed pattern
    CHECK_THROWS_AS(from_matrix(lower, ctx), precondition_error);
}

TEST_CASE("validation enforces the field and the imaginary slots") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement u(ctx);
    u.phi = Scalar(0.0, 0.3); // imaginary entry over F = R
    CHECK_THROWS_AS(validate(u), precondition_error);
    GroupContext cc(FieldTag::Complex, 4);
    ANElement v(cc);
    v.xx = Scalar(0.5, 0.0); // xx must be purely imaginary
    CHECK_THROWS_AS(validate(v), precondition_error);
}

TEST_CASE("flattening layout has dimension 2n over R and 4n over C") {
    GroupContext rr(FieldTag::Real, 6), cc(FieldTag::Complex, 6);
    CHECK(an_flat_dim(rr) == 12);
    CHECK(an_flat_dim(cc) == 24);
    Rng rng(9);
    ANElement u = random_an(cc, rng);
    ANElement v = unflatten(cc, flatten(u));
    CHECK((flatten(u) - flatten(v)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("closed-form exponential agrees with the exact truncated series") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 4);
        Rng rng(17);
        for (int i = 0; i < 20; ++i) {
            ANElement u = random_nilpotent(ctx, rng);
            CHECK((exp_closed(u).mat() - exp_series_nilpotent(to_matrix(u)))
                      .cwiseAbs()
                      .maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("closed-form exponential requires a nilpotent argument") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement u(ctx);
    u.t1 = 0.5;
    CHECK_THROWS_AS(exp_closed(u), precondition_error);
}

TEST_CASE("elements whose square vanishes exponentiate in two terms") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement u = eta_generator(ctx, Scalar(2.0, 1.0));
    Eigen::MatrixXcd expected =
        Eigen::MatrixXcd::Identity(6, 6) + to_matrix(u);
    CHECK((exp_closed(u).mat() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("general exponential handles torus directions") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement u(ctx);
    u.t1 = 1.0;
    u.t2 = -0.5;
    GroupMatrix g = exp_general(u);
    CHECK(g.mat()(0, 0).real() == doctest::Approx(std::exp(1.0)));
    CHECK(g.mat()(1, 1).real() == doctest::Approx(std::exp(-0.5)));
    CHECK(g.mat()(5, 5).real() == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("bracket of unit x and y directions lands in the eta slot") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement ux(ctx), vy(ctx);
    ux.x(0) = Scalar(1.0, 0.0);
    vy.y(0) = Scalar(1.0, 0.0);
    ANElement w = bracket(ux, vy);
    CHECK(w.eta == Scalar(-1.0, 0.0));
    CHECK(w.phi == Scalar(0.0, 0.0));
    CHECK(w.x.cwiseAbs().maxCoeff() == 0.0);
    CHECK(w.t1 == 0.0);
}

TEST_CASE("bracket of phi and y directions lands in the x slot") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement up(ctx), vy(ctx);
    up.phi = Scalar(1.0, 0.0);
    vy.y(1) = Scalar(0.0, 1.0);
    ANElement w = bracket(up, vy);
    CHECK(w.x(1) == Scalar(0.0, 1.0));
    CHECK(w.eta == Scalar(0.0, 0.0));
}

TEST_CASE("coordinate bracket equals the matrix commutator") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 5);
        Rng rng(23);
        for (int i = 0; i < 10; ++i) {
            ANElement u = random_an(ctx, rng);
            ANElement v = random_an(ctx, rng);
            Eigen::MatrixXcd comm = to_matrix(u) * to_matrix(v) -
                                    to_matrix(v) * to_matrix(u);
            CHECK((to_matrix(bracket(u, v)) - comm).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
}

TEST_CASE("torus directions scale root spaces by the root values") {
    GroupContext ctx(FieldTag::Complex, 4);
    ANElement tau(ctx);
    tau.t1 = 0.7;
    tau.t2 = 0.2;
    Rng rng(29);
    ANElement u = random_nilpotent(ctx, rng);
    ANElement w = bracket(tau, u);
    CHECK(std::abs(w.phi - root_value(RootLabel::Alpha, 0.7, 0.2) * u.phi) < 1e-14);
    CHECK((w.x - root_value(RootLabel::AlphaBeta, 0.7, 0.2) * u.x).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((w.y - root_value(RootLabel::Beta, 0.7, 0.2) * u.y).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::abs(w.eta - root_value(RootLabel::Alpha2Beta, 0.7, 0.2) * u.eta) < 1e-14);
    CHECK(std::abs(w.xx - root_value(RootLabel::TwoAlphaTwoBeta, 0.7, 0.2) * u.xx) < 1e-14);
    CHECK(std::abs(w.yy - root_value(RootLabel::TwoBeta, 0.7, 0.2) * u.yy) < 1e-14);
}

TEST_CASE("conjugation by an exponential matches the matrix conjugation") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 4);
        Rng rng(31);
        for (int i = 0; i < 5; ++i) {
            ANElement u = random_an(ctx, rng);
            ANElement v = random_nilpotent(ctx, rng);
            Eigen::MatrixXcd direct = exp_matrix((-1.0) * v) * to_matrix(u) *
                                      exp_matrix(v);
            CHECK((to_matrix(conjugate_by_exp(u, v)) - direct)
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("root components sum back to the element") {
    GroupContext ctx(FieldTag::Complex, 5);
    Rng rng(37);
    ANElement u = random_an(ctx, rng);
    ANElement sum = root_component(u, RootLabel::Zero);
    for (RootLabel r : {RootLabel::Alpha, RootLabel::Beta, RootLabel::AlphaBeta,
                        RootLabel::Alpha2Beta, RootLabel::TwoBeta,
                        RootLabel::TwoAlphaTwoBeta})
        sum = sum + root_component(u, r);
    CHECK((flatten(sum) - flatten(u)).cwiseAbs().maxCoeff() < 1e-15);
    GroupContext rr(FieldTag::Real, 5);
    ANElement v = random_an(rr, rng);
    CHECK(root_component(v, RootLabel::TwoBeta).coord_norm() == 0.0);
}

TEST_CASE("root values on the torus follow the weight table") {
    CHECK(root_value(RootLabel::Alpha, 3.0, 1.0) == 2.0);
    CHECK(root_value(RootLabel::Beta, 3.0, 1.0) == 1.0);
    CHECK(root_value(RootLabel::AlphaBeta, 3.0, 1.0) == 3.0);
    CHECK(root_value(RootLabel::Alpha2Beta, 3.0, 1.0) == 4.0);
    CHECK(root_value(RootLabel::TwoBeta, 3.0, 1.0) == 2.0);
    CHECK(root_value(RootLabel::TwoAlphaTwoBeta, 3.0, 1.0) == 6.0);
    CHECK(root_value(RootLabel::Zero, 3.0, 1.0) == 0.0);
}

TEST_CASE("splitting a span by a root restriction separates x from y") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement ux(ctx), vy(ctx);
    ux.x(0) = Scalar(1.0, 0.0);
    vy.y(0) = Scalar(1.0, 0.0);
    // Along (1, 0) the x slot restricts like alpha+beta (value 1) and the
    // y slot like beta (value 0), so the two generators separate.
    auto [eq, neq] = rootdecomp_split({ux, vy}, {1.0, 0.0}, RootLabel::AlphaBeta);
    REQUIRE(eq.size() == 1);
    REQUIRE(neq.size() == 1);
    CHECK(eq[0].x.cwiseAbs().maxCoeff() > 0.5);
    CHECK(neq[0].y.cwiseAbs().maxCoeff() > 0.5);
    // Along (1, 1) both slots restrict with value 1 and nothing separates.
    auto [eq2, neq2] =
        rootdecomp_split({ux, vy}, {1.0, 1.0}, RootLabel::AlphaBeta);
    CHECK(eq2.size() == 2);
    CHECK(neq2.size() == 0);
}

TEST_CASE("split rejects spans that the torus direction does not preserve") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement mixed(ctx);
    mixed.x(0) = Scalar(1.0, 0.0);
    mixed.y(0) = Scalar(1.0, 0.0);
    // ad along (1,0) maps x + y to x alone, leaving the one-element span.
    CHECK_THROWS_AS(
        rootdecomp_split({mixed}, {1.0, 0.0}, RootLabel::AlphaBeta),
        precondition_error);
}

TEST_CASE("series exponential refuses non-nilpotent input") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement u(ctx);
    u.t1 = 1.0;
    CHECK_THROWS_AS(exp_series_nilpotent(to_matrix(u)), numerical_error);
}
