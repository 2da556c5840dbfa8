#include <doctest.h>

#include <cmath>

#include "cartankit/classifier.hpp"
#include "cartankit/sampling.hpp"

using namespace cartankit;

namespace {

Eigen::MatrixXd rot90() {
    Eigen::MatrixXd b(2, 2);
    b << 0, 1, -1, 0;
    return b;
}

Eigen::MatrixXd skew_scaled() {
    Eigen::MatrixXd b(2, 2);
    b << 0, 2, -0.5, 0;
    return b;
}

/// Realified quaternionic pairing on C^2 (row convention).
Eigen::MatrixXd pairing_c2() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
    b(0, 2) = 1;
    b(1, 3) = -1;
    b(2, 0) = -1;
    b(3, 1) = 1;
    return b;
}

const ConditionClause* find_clause(const ConditionReport& r,
                                   const std::string& key) {
    for (const ConditionClause& c : r.clauses)
        if (c.key == key) return &c;
    return nullptr;
}

} // namespace

TEST_CASE("quadratic structure holds on eigenvector-free graph families") {
    GroupContext rr(FieldTag::Real, 4);
    for (const Eigen::MatrixXd& b : {rot90(), skew_scaled()}) {
        ConditionReport r =
            check_quadratic_family_structure(hb_subalgebra(BMap(rr, b)));
        CHECK(r.all_hold);
        CHECK(r.dim == 4);
        CHECK(r.dim_bound == 4);
        for (const ConditionClause& c : r.clauses) CHECK(c.holds);
        CHECK_FALSE(r.witness.has_value());
    }
    GroupContext cc(FieldTag::Complex, 4);
    ConditionReport r =
        check_quadratic_family_structure(hb_subalgebra(BMap(cc, pairing_c2())));
    CHECK(r.all_hold);
    CHECK(r.dim == 8);
}

TEST_CASE("an eigenvector of B breaks exactly the pair-independence clause") {
    GroupContext rr(FieldTag::Real, 4);
    ConditionReport r = check_quadratic_family_structure(
        hb_subalgebra(BMap(rr, Eigen::MatrixXd::Identity(2, 2))));
    CHECK_FALSE(r.all_hold);
    const ConditionClause* pairs = find_clause(r, "xy-pairs-span-two-dims");
    REQUIRE(pairs != nullptr);
    CHECK_FALSE(pairs->holds);
    for (const ConditionClause& c : r.clauses)
        if (c.key != "xy-pairs-span-two-dims") CHECK(c.holds);
    REQUIRE(r.witness.has_value());
    // The witness element has y parallel to x.
    Eigen::MatrixXd stack(2, 2);
    stack.row(0) = r.witness->x.real();
    stack.row(1) = r.witness->y.real();
    CHECK(effective_rank(stack) == 1);
}

TEST_CASE("a family with the wrong torus fails the first quadratic clause") {
    GroupContext cc(FieldTag::Complex, 4);
    ConditionReport r = check_quadratic_family_structure(su1n_an(cc));
    CHECK_FALSE(r.all_hold);
    const ConditionClause* torus = find_clause(r, "torus-is-ker-alpha");
    REQUIRE(torus != nullptr);
    CHECK_FALSE(torus->holds);
}

TEST_CASE("structure checks refuse incompatible spans") {
    GroupContext ctx(FieldTag::Real, 4);
    ANElement g(ctx);
    g.t1 = 1.0;
    g.phi = Scalar(1.0, 0.0);
    SubalgebraSpec s(ctx, {g}, "glued");
    CHECK_THROWS_AS(check_quadratic_family_structure(s), precondition_error);
    CHECK_THROWS_AS(check_linear_family_structure(s), precondition_error);
}

TEST_CASE("linear structure holds on the linked families") {
    GroupContext cc(FieldTag::Complex, 4);
    for (double c : {0.25, 0.7, 1.0}) {
        ConditionReport r =
            check_linear_family_structure(hc_subalgebra(cc, c));
        CHECK(r.all_hold);
        CHECK(r.dim == 8);
        for (const ConditionClause& cl : r.clauses) CHECK(cl.holds);
    }
    GroupContext rr(FieldTag::Real, 4);
    CHECK(check_linear_family_structure(su1n_an(rr)).all_hold);
}

TEST_CASE("linear structure rejects families living on the other wall") {
    GroupContext rr(FieldTag::Real, 4);
    ConditionReport r =
        check_linear_family_structure(hb_subalgebra(BMap(rr, rot90())));
    CHECK_FALSE(r.all_hold);
    const ConditionClause* torus = find_clause(r, "torus-is-ker-beta");
    REQUIRE(torus != nullptr);
    CHECK_FALSE(torus->holds);
}

TEST_CASE("the linked-family fingerprint separates the parameters") {
    GroupContext cc(FieldTag::Complex, 4);
    CHECK(hc_invariant(hc_subalgebra(cc, 1.0)) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(hc_invariant(hc_subalgebra(cc, 0.5)) == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(hc_invariant(hc_subalgebra(cc, 0.25)) ==
          doctest::Approx(0.25 + 4.0).epsilon(1e-9));
    // c and 1/c give the same value (the pair are conjugate subalgebras)
    CHECK(hc_invariant(hc_subalgebra(cc, 2.0)) ==
          doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("the fingerprint is invariant under conjugation inside the group") {
    GroupContext cc(FieldTag::Complex, 4);
    SubalgebraSpec hc = hc_subalgebra(cc, 0.4);
    Rng rng(51);
    ANElement v = random_unit_combo(
        std::vector<ANElement>(hc.basis.begin() + 1, hc.basis.end()), rng);
    std::vector<ANElement> conj_basis;
    for (const ANElement& b : hc.basis)
        conj_basis.push_back(conjugate_by_exp(b, v));
    SubalgebraSpec moved(cc, conj_basis, "conjugated");
    CHECK(hc_invariant(moved) ==
          doctest::Approx(0.4 + 1.0 / 0.4).epsilon(1e-6));
}

TEST_CASE("the fingerprint requires the complex field") {
    GroupContext rr(FieldTag::Real, 4);
    CHECK_THROWS_AS(hc_invariant(su1n_an(rr)), precondition_error);
}

TEST_CASE("family recognition is frame-exact") {
    GroupContext rr(FieldTag::Real, 4), cc(FieldTag::Complex, 4);

    auto su = recognize_family(su1n_an(rr));
    REQUIRE(su.has_value());
    CHECK(su->tag == FamilyTag::SU1n);
    CHECK(su->valid);

    auto sp = recognize_family(sp1m_an(cc, 2));
    REQUIRE(sp.has_value());
    CHECK(sp->tag == FamilyTag::Sp1m);
    CHECK(sp->m == 2);
    CHECK(sp->valid);

    // the rotation graph family has the same span as sp(1,2)
    auto hb0 = recognize_family(hb_subalgebra(BMap(rr, rot90())));
    REQUIRE(hb0.has_value());
    CHECK(hb0->tag == FamilyTag::Sp1m);

    auto hb = recognize_family(hb_subalgebra(BMap(rr, skew_scaled())));
    REQUIRE(hb.has_value());
    CHECK(hb->tag == FamilyTag::HB);
    CHECK(hb->valid);
    REQUIRE(hb->b.has_value());
    CHECK((hb->b->entries - skew_scaled()).cwiseAbs().maxCoeff() < 1e-9);

    auto hc = recognize_family(hc_subalgebra(cc, 0.7));
    REQUIRE(hc.has_value());
    CHECK(hc->tag == FamilyTag::Hc);
    CHECK(hc->c == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(hc->valid);

    // over C the rank-one reduction is the linked family at c = 1
    auto suc = recognize_family(su1n_an(cc));
    REQUIRE(suc.has_value());
    CHECK(suc->tag == FamilyTag::Hc);
    CHECK(suc->c == doctest::Approx(1.0));
    CHECK(suc->valid);

    // a linked family with c > 1 is recognized but not valid as stated
    auto big = recognize_family(hc_subalgebra(cc, 2.0));
    REQUIRE(big.has_value());
    CHECK(big->tag == FamilyTag::Hc);
    CHECK_FALSE(big->valid);

    ANElement lone(rr);
    lone.x(0) = Scalar(1.0, 0.0);
    CHECK_FALSE(recognize_family(SubalgebraSpec(rr, {lone}, "line")).has_value());
}

TEST_CASE("verdict: standard families tessellate at even n") {
    GroupContext rr(FieldTag::Real, 4), cc(FieldTag::Complex, 4);

    Verdict hb = tessellation_verdict(hb_subalgebra(BMap(rr, skew_scaled())));
    CHECK(hb.kind == Verdict::Kind::Yes);
    REQUIRE(hb.family.has_value());
    CHECK(*hb.family == FamilyTag::HB);

    Verdict sp = tessellation_verdict(sp1m_an(cc, 2));
    CHECK(sp.kind == Verdict::Kind::Yes);

    Verdict hc = tessellation_verdict(hc_subalgebra(cc, 0.5));
    CHECK(hc.kind == Verdict::Kind::Yes);
    REQUIRE(hc.family.has_value());
    CHECK(*hc.family == FamilyTag::Hc);
    CHECK(hc.c == doctest::Approx(0.5).epsilon(1e-9));

    Verdict su = tessellation_verdict(su1n_an(rr));
    CHECK(su.kind == Verdict::Kind::Yes);
}

TEST_CASE("verdict: spans meeting both walls cannot act properly") {
    GroupContext rr(FieldTag::Real, 4);
    ANElement t1(rr), t2(rr);
    t1.t1 = 1.0;
    t2.t2 = 1.0;
    Verdict v = tessellation_verdict(SubalgebraSpec(rr, {t1, t2}, "a"));
    CHECK(v.kind == Verdict::Kind::No);
    CHECK(v.reason.find("linear") != std::string::npos);
    CHECK(v.reason.find("quadratic") != std::string::npos);
}

TEST_CASE("verdict: low-dimensional subfamilies cannot be cocompact") {
    GroupContext rr(FieldTag::Real, 4);
    // a closed 3-dimensional slice of the rank-one reduction (below the
    // tessellation dimension bound d_F * n = 4)
    ANElement t(rr), p(rr), x0(rr);
    t.t1 = 1.0;
    p.phi = Scalar(1.0, 0.0);
    p.eta = Scalar(1.0, 0.0);
    x0.x(0) = Scalar(1.0, 0.0);
    Verdict v = tessellation_verdict(SubalgebraSpec(rr, {t, p, x0}, "thin"));
    CHECK(v.kind == Verdict::Kind::No);
    CHECK(v.reason.find("below the cocompactness bound") != std::string::npos);
}

TEST_CASE("verdict: never yes at odd n") {
    GroupContext r5(FieldTag::Real, 5), c5(FieldTag::Complex, 5);
    CHECK(tessellation_verdict(su1n_an(r5)).kind != Verdict::Kind::Yes);
    CHECK(tessellation_verdict(sp1m_an(c5, 2)).kind != Verdict::Kind::Yes);
    CHECK(tessellation_verdict(hc_subalgebra(c5, 0.5)).kind !=
          Verdict::Kind::Yes);
}

TEST_CASE("verdict: degenerate and out-of-scope inputs stay unknown") {
    GroupContext rr(FieldTag::Real, 4), cc(FieldTag::Complex, 4);
    Verdict zero = tessellation_verdict(SubalgebraSpec(rr, {}, "zero"));
    CHECK(zero.kind == Verdict::Kind::Unknown);

    // the whole solvable group: dim == 2n, compact quotient but trivial
    std::vector<ANElement> all;
    GroupContext ctx = rr;
    for (int i = 0; i < an_flat_dim(ctx); ++i) {
        Eigen::VectorXd e = Eigen::VectorXd::Zero(an_flat_dim(ctx));
        e(i) = 1.0;
        all.push_back(unflatten(ctx, e));
    }
    CHECK(tessellation_verdict(SubalgebraSpec(ctx, all, "an")).kind ==
          Verdict::Kind::Unknown);

    // not closed under the bracket
    ANElement ux(rr), vy(rr);
    ux.x(0) = Scalar(1.0, 0.0);
    vy.y(0) = Scalar(1.0, 0.0);
    CHECK(tessellation_verdict(SubalgebraSpec(rr, {ux, vy}, "open")).kind ==
          Verdict::Kind::Unknown);

    // a linked family with c > 1 (conjugate to c' = 1/c but not in the
    // stated normal form)
    CHECK(tessellation_verdict(hc_subalgebra(cc, 2.0)).kind ==
          Verdict::Kind::Unknown);
}

TEST_CASE("family names are stable strings") {
    CHECK(std::string(family_name(FamilyTag::SU1n)) == "su(1,n)");
    CHECK(std::string(family_name(FamilyTag::Sp1m)) == "sp(1,m)");
    CHECK(std::string(family_name(FamilyTag::HB)) == "h_B");
    CHECK(std::string(family_name(FamilyTag::Hc)) == "h_c");
}
