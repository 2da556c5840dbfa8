#include <doctest.h>

#include <cmath>

#include "cartankit/sampling.hpp"
#include "cartankit/sunf.hpp"

using namespace cartankit;

namespace {

Eigen::MatrixXcd chamber_diag(const GroupContext& ctx, double a11, double a22) {
    int sz = ctx.size();
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(sz, sz);
    a(0, 0) = a11;
    a(1, 1) = a22;
    a(sz - 2, sz - 2) = 1.0 / a22;
    a(sz - 1, sz - 1) = 1.0 / a11;
    return a;
}

} // namespace

TEST_CASE("imaginary part keeps the i") {
    CHECK(im_part(Scalar(3.0, -4.0)) == Scalar(0.0, -4.0));
    CHECK(re_part(Scalar(3.0, -4.0)) == Scalar(3.0, 0.0));
    CHECK(row_dot_dagger((Eigen::RowVectorXcd(2) << Scalar(1, 1), Scalar(0, 2)).finished(),
                         (Eigen::RowVectorXcd(2) << Scalar(1, -1), Scalar(2, 0)).finished()) ==
          Scalar(0.0, 6.0));
}

TEST_CASE("group context validates n and builds an involutive form matrix") {
    CHECK_THROWS_AS(GroupContext(FieldTag::Real, 2), precondition_error);
    GroupContext ctx(FieldTag::Complex, 4);
    CHECK(ctx.size() == 6);
    Eigen::MatrixXcd j = ctx.form_matrix();
    CHECK((j * j - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(j(0, 5) == Scalar(1, 0));
    CHECK(j(1, 4) == Scalar(1, 0));
    CHECK(j(4, 1) == Scalar(1, 0));
    CHECK(j(5, 0) == Scalar(1, 0));
    CHECK(j(2, 2) == Scalar(1, 0));
    CHECK(j(0, 0) == Scalar(0, 0));
}

TEST_CASE("membership is enforced on construction") {
    GroupContext ctx(FieldTag::Real, 4);
    int sz = ctx.size();
    CHECK_NOTHROW(GroupMatrix(Eigen::MatrixXcd::Identity(sz, sz), ctx));
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(sz, sz);
    bad(0, 0) = 2.0; // breaks g J g^dagger = J
    CHECK_THROWS_AS(GroupMatrix(bad, ctx), precondition_error);
    Eigen::MatrixXcd cplx = Eigen::MatrixXcd::Identity(sz, sz);
    cplx(2, 3) = Scalar(0.0, 0.5);
    CHECK_THROWS_AS(GroupMatrix(cplx, ctx), precondition_error); // F = R
    CHECK(membership_defect(Eigen::MatrixXcd::Identity(sz, sz), ctx) == 0.0);
}

TEST_CASE("exact inverse from the defining identity") {
    GroupContext ctx(FieldTag::Complex, 4);
    Rng rng(7);
    GroupMatrix g = random_group(ctx, rng);
    Eigen::MatrixXcd prod = g.mat() * g.inverse().mat();
    CHECK((prod - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sup and rho norms of a chamber point are the leading products") {
    GroupContext ctx(FieldTag::Real, 4);
    GroupMatrix a(chamber_diag(ctx, 2.0, 1.5), ctx);
    CHECK(sup_norm(a) == 2.0);
    CHECK(rho_norm(a) == 3.0);
    CHECK(delta(a) == Scalar(0.0, 0.0)); // corner block vanishes on diagonals
}

TEST_CASE("rho norm survives scales where squared minors would overflow") {
    GroupContext ctx(FieldTag::Real, 4);
    double big = std::exp(400.0); // > 1e150 switches to the scaled path
    GroupMatrix a(chamber_diag(ctx, big, std::exp(300.0)), ctx);
    CHECK(std::isfinite(rho_norm(a)));
    CHECK(rho_norm(a) == doctest::Approx(std::exp(700.0)).epsilon(1e-9));
}

TEST_CASE("corner minor of the form matrix itself") {
    GroupContext ctx(FieldTag::Real, 4);
    GroupMatrix j(ctx.form_matrix(), ctx);
    CHECK(delta(j) == Scalar(-1.0, 0.0));
}

TEST_CASE("cartan projection is exact on chamber diagonals") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 4);
        GroupMatrix a(chamber_diag(ctx, 5.0, 2.0), ctx);
        CartanPoint p = cartan_mu(a);
        CHECK(p.a11 == 5.0);
        CHECK(p.a22 == 2.0);
        CartanPoint id = cartan_mu(GroupMatrix(Eigen::MatrixXcd::Identity(ctx.size(), ctx.size()), ctx));
        CHECK(id.a11 == 1.0);
        CHECK(id.a22 == 1.0);
    }
}

TEST_CASE("cartan projection is invariant under inverse and K-translation") {
    GroupContext ctx(FieldTag::Complex, 3);
    Rng rng(11);
    for (int i = 0; i < 5; ++i) {
        GroupMatrix g = random_group(ctx, rng);
        CartanPoint p = cartan_mu(g);
        CartanPoint q = cartan_mu(g.inverse());
        CartanPoint r = cartan_mu(random_k(ctx, rng) * g * random_k(ctx, rng));
        CHECK(q.a11 == doctest::Approx(p.a11).epsilon(1e-8));
        CHECK(q.a22 == doctest::Approx(p.a22).epsilon(1e-8));
        CHECK(r.a11 == doctest::Approx(p.a11).epsilon(1e-8));
        CHECK(r.a22 == doctest::Approx(p.a22).epsilon(1e-8));
        CHECK(p.a11 >= p.a22);
        CHECK(p.a22 >= 1.0);
    }
}

TEST_CASE("wall distances in log coordinates") {
    CartanPoint p{std::exp(2.0), std::exp(1.0)};
    CHECK(wall_distance(p, 1) == doctest::Approx(1.0));
    CHECK(wall_distance(p, 2) == doctest::Approx(1.0));
    CartanPoint on_diag{std::exp(3.0), std::exp(3.0)};
    CHECK(wall_distance(on_diag, 2) == doctest::Approx(0.0));
    CHECK(wall_distance(on_diag, 1) == doctest::Approx(3.0));
    CHECK_THROWS_AS(wall_distance(p, 3), precondition_error);
}

TEST_CASE("random K factors are unitary members fixing the projection") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 5);
        Rng rng(13);
        GroupMatrix k = random_k(ctx, rng);
        CHECK((k.mat() * k.mat().adjoint() -
               Eigen::MatrixXcd::Identity(7, 7))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
        CartanPoint p = cartan_mu(k);
        CHECK(p.a11 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(p.a22 == doctest::Approx(1.0).epsilon(1e-9));
    }
}
