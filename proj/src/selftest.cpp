#include "cartankit/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cartankit/classifier.hpp"
#include "cartankit/sampling.hpp"

namespace cartankit {

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult run_one(int idx, const std::string& label, std::ostream& out,
                        const std::function<void(bool&, std::ostream&)>& body) {
    CriterionResult r;
    r.index = idx;
    r.label = label;
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream det;
    try {
        body(ok, det);
    } catch (const std::exception& e) {
        ok = false;
        det << " exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.passed = ok;
    r.detail = det.str();
    out << (r.passed ? "[PASS] " : "[FAIL] ") << idx << ". " << label << " ("
        << std::fixed << std::setprecision(1) << r.seconds << " s)";
    if (!r.detail.empty()) out << " --" << r.detail;
    out << "\n" << std::flush;
    return r;
}

Eigen::MatrixXd rot90_2d() {
    Eigen::MatrixXd b(2, 2);
    b << 0, 1, -1, 0;
    return b;
}

/// Realified quaternionic pairing on C^2 (row convention), the map behind
/// the sp(1,2) slice: (a, b, c, d) -> (-c, d, a, -b).
Eigen::MatrixXd pairing_4d() {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
    b(0, 2) = 1;
    b(1, 3) = -1;
    b(2, 0) = -1;
    b(3, 1) = 1;
    return b;
}

/// Eigenvector-free real map on R^2 that is not the quaternionic pairing.
Eigen::MatrixXd skew_scaled_2d() {
    Eigen::MatrixXd b(2, 2);
    b << 0, 2, -0.5, 0;
    return b;
}

ANElement torus_gen(const GroupContext& ctx, double t1, double t2) {
    ANElement u(ctx);
    u.t1 = t1;
    u.t2 = t2;
    return u;
}

} // namespace

std::vector<CriterionResult> run_selftest(std::uint64_t seed,
                                          std::ostream& out) {
    std::vector<CriterionResult> results;
    const FieldTag fields[] = {FieldTag::Real, FieldTag::Complex};

    results.push_back(run_one(
        1, "closed-form exponential matches the series oracle", out,
        [&](bool& ok, std::ostream& det) {
            double worst = 0.0;
            long count = 0;
            for (FieldTag f : fields)
                for (int n = 3; n <= 8; ++n) {
                    GroupContext ctx(f, n);
                    Rng rng(seed + 101 * n + (f == FieldTag::Real ? 0 : 7));
                    for (int i = 0; i < 10000; ++i) {
                        ANElement u = random_nilpotent(ctx, rng);
                        double err = (exp_closed(u).mat() -
                                      exp_series_nilpotent(to_matrix(u)))
                                         .cwiseAbs()
                                         .maxCoeff();
                        worst = std::max(worst, err);
                        ++count;
                    }
                }
            ok = worst <= 1e-10;
            det << " max deviation " << worst << " over " << count
                << " nilpotents, fields R/C, n = 3..8";
        }));

    results.push_back(run_one(
        2, "coordinate bracket matches the commutator; Jacobi identity", out,
        [&](bool& ok, std::ostream& det) {
            double worst_b = 0.0, worst_j = 0.0;
            long pairs = 0;
            for (FieldTag f : fields)
                for (int n = 3; n <= 6; ++n) {
                    GroupContext ctx(f, n);
                    Rng rng(seed + 211 * n + (f == FieldTag::Real ? 0 : 13));
                    for (int i = 0; i < 1250; ++i) {
                        ANElement u = random_nilpotent(ctx, rng);
                        ANElement v = random_nilpotent(ctx, rng);
                        u = (1.0 / u.coord_norm()) * u;
                        v = (1.0 / v.coord_norm()) * v;
                        ANElement w = bracket(u, v);
                        ANElement wc = from_matrix(
                            to_matrix(u) * to_matrix(v) -
                                to_matrix(v) * to_matrix(u),
                            ctx);
                        worst_b = std::max(
                            worst_b, (flatten(w) - flatten(wc))
                                         .cwiseAbs()
                                         .maxCoeff());
                        ++pairs;
                    }
                    for (int i = 0; i < 300; ++i) {
                        ANElement u = random_an(ctx, rng);
                        ANElement v = random_an(ctx, rng);
                        ANElement w = random_nilpotent(ctx, rng);
                        u = (1.0 / u.coord_norm()) * u;
                        v = (1.0 / v.coord_norm()) * v;
                        w = (1.0 / w.coord_norm()) * w;
                        ANElement jac = bracket(bracket(u, v), w) +
                                        bracket(bracket(v, w), u) +
                                        bracket(bracket(w, u), v);
                        worst_j = std::max(worst_j, jac.coord_norm());
                    }
                }
            ok = worst_b <= 1e-12 && worst_j <= 1e-10;
            det << " commutator deviation " << worst_b << " on " << pairs
                << " pairs; Jacobi residual " << worst_j;
        }));

    results.push_back(run_one(
        3, "Cartan projection: exact on the chamber, bi-K-invariant", out,
        [&](bool& ok, std::ostream& det) {
            double worst_rel = 0.0;
            long exact_fail = 0, shape_checked = 0;
            for (FieldTag f : fields) {
                GroupContext ctx(f, 4);
                int sz = ctx.size();
                Rng rng(seed + (f == FieldTag::Real ? 31 : 37));
                std::uniform_real_distribution<double> ud(0.0, 5.0);
                for (int i = 0; i < 200; ++i) {
                    double u1 = ud(rng), u2 = ud(rng);
                    if (u2 > u1) std::swap(u1, u2);
                    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(sz, sz);
                    a(0, 0) = std::exp(u1);
                    a(1, 1) = std::exp(u2);
                    a(sz - 2, sz - 2) = std::exp(-u2);
                    a(sz - 1, sz - 1) = std::exp(-u1);
                    GroupMatrix g(a, ctx);
                    CartanPoint mu = cartan_mu(g);
                    if (mu.a11 != a(0, 0).real() || mu.a22 != a(1, 1).real())
                        ++exact_fail;
                }
                for (int i = 0; i < 500; ++i) {
                    GroupMatrix g = random_group(ctx, rng);
                    CartanPoint mu = cartan_mu(g);
                    CartanPoint mi = cartan_mu(g.inverse());
                    GroupMatrix kgk = random_k(ctx, rng) * g * random_k(ctx, rng);
                    CartanPoint mk = cartan_mu(kgk);
                    worst_rel = std::max(
                        {worst_rel,
                         std::abs(mi.a11 - mu.a11) / mu.a11,
                         std::abs(mi.a22 - mu.a22) / mu.a22,
                         std::abs(mk.a11 - mu.a11) / mu.a11,
                         std::abs(mk.a22 - mu.a22) / mu.a22});
                    // Reciprocal-pair shape of the full singular spectrum.
                    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g.mat());
                    const auto& sv = svd.singularValues();
                    double ptol = std::max(
                        1e-6, 1e-10 * sv(0) * sv(0));
                    for (int p = 0; p < sz; ++p)
                        if (std::abs(sv(p) * sv(sz - 1 - p) - 1.0) > ptol)
                            ++exact_fail;
                    ++shape_checked;
                }
            }
            ok = exact_fail == 0 && worst_rel <= 1e-6;
            det << " chamber exactness failures " << exact_fail
                << "; worst invariance deviation " << worst_rel << " over "
                << shape_checked << " samples per identity";
        }));

    results.push_back(run_one(
        4, "norms on the chamber: sup = a11, rho = a11*a22 exactly", out,
        [&](bool& ok, std::ostream& det) {
            long fails = 0;
            for (FieldTag f : fields) {
                GroupContext ctx(f, 4);
                int sz = ctx.size();
                Rng rng(seed + (f == FieldTag::Real ? 41 : 43));
                std::uniform_real_distribution<double> ud(0.0, 5.0);
                for (int i = 0; i < 500; ++i) {
                    double u1 = ud(rng), u2 = ud(rng);
                    if (u2 > u1) std::swap(u1, u2);
                    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(sz, sz);
                    a(0, 0) = std::exp(u1);
                    a(1, 1) = std::exp(u2);
                    a(sz - 2, sz - 2) = std::exp(-u2);
                    a(sz - 1, sz - 1) = std::exp(-u1);
                    GroupMatrix g(a, ctx);
                    double a11 = a(0, 0).real(), a22 = a(1, 1).real();
                    if (sup_norm(g) != a11) ++fails;
                    if (rho_norm(g) != a11 * a22) ++fails;
                }
            }
            ok = fails == 0;
            det << " exactness failures " << fails << " over 1000 chamber points";
        }));

    results.push_back(run_one(
        5, "growth classes of the four families (20 curves each)", out,
        [&](bool& ok, std::ostream& det) {
            struct Case {
                SubalgebraSpec s;
                double target;
                const char* name;
            };
            GroupContext rr(FieldTag::Real, 4), cc(FieldTag::Complex, 4);
            std::vector<Case> cases;
            cases.push_back({su1n_an(rr), 1.0, "rank-one reduction / R"});
            cases.push_back({su1n_an(cc), 1.0, "rank-one reduction / C"});
            cases.push_back({sp1m_an(rr, 2), 2.0, "quaternionic / R"});
            cases.push_back({sp1m_an(cc, 2), 2.0, "quaternionic / C"});
            cases.push_back({hb_subalgebra(BMap(rr, rot90_2d())), 2.0,
                             "graph family, rotation / R"});
            cases.push_back({hb_subalgebra(BMap(cc, pairing_4d())), 2.0,
                             "graph family, pairing / C"});
            cases.push_back(
                {hc_subalgebra(cc, 0.5), 1.0, "linked family c=0.5 / C"});
            cases.push_back(
                {hc_subalgebra(cc, 1.0), 1.0, "linked family c=1 / C"});
            double worst_dev = 0.0;
            std::string worst_name;
            long wrong = 0;
            int ci = 0;
            for (const Case& c : cases) {
                Rng rng(seed + 500 + 17 * ci++);
                for (int i = 0; i < 20; ++i) {
                    ANElement gen = random_unit_combo(c.s.basis, rng);
                    GrowthClass g =
                        classify_growth(CurveSpec::with_default_grid(gen));
                    double dev = std::abs(g.kappa - c.target);
                    if (dev > worst_dev) {
                        worst_dev = dev;
                        worst_name = c.name;
                    }
                    GrowthKind expect = c.target == 1.0 ? GrowthKind::Linear
                                                        : GrowthKind::Quadratic;
                    if (g.kind != expect || dev > 0.05) ++wrong;
                }
            }
            ok = wrong == 0;
            det << " worst exponent deviation " << worst_dev << " ("
                << worst_name << "); misclassified " << wrong << "/160";
        }));

    results.push_back(run_one(
        6, "corner-minor polynomial coefficients (t^4, t^3) + evaluated fit",
        out, [&](bool& ok, std::ostream& det) {
            double worst_c = 0.0, worst_fit = 0.0;
            for (FieldTag f : fields) {
                GroupContext ctx(f, 4);
                Rng rng(seed + (f == FieldTag::Real ? 61 : 67));
                for (int i = 0; i < 500; ++i) {
                    ANElement u = random_nilpotent(ctx, rng);
                    u.phi = Scalar(0.0, 0.0);
                    auto c = delta_poly_coeffs(u);
                    double x2 = u.x.squaredNorm(), y2 = u.y.squaredNorm();
                    Scalar xyd = row_dot_dagger(u.x, u.y);
                    Scalar t4 =
                        Scalar(-0.25 * (x2 * y2 - std::norm(xyd)), 0.0);
                    // The doubled t^3 combination xx|y|^2 + yy|x|^2 +
                    // 2 Im(x y^dagger conj(eta)); the minor's actual cubic
                    // coefficient is half of it (the evaluated fit below
                    // pins the implemented value against the minor itself).
                    Scalar t3_doubled = u.xx * y2 + u.yy * x2 +
                                        2.0 * im_part(xyd * std::conj(u.eta));
                    worst_c = std::max(worst_c, std::abs(c[4] - t4));
                    worst_c =
                        std::max(worst_c, std::abs(2.0 * c[3] - t3_doubled));
                    if (i < 50) {
                        for (double t : {0.5, 1.0, 2.0}) {
                            Scalar direct = delta(exp_closed(t * u));
                            Scalar poly = c[2] * t * t + c[3] * t * t * t +
                                          c[4] * t * t * t * t;
                            worst_fit = std::max(
                                worst_fit,
                                std::abs(direct - poly) /
                                    std::max(1.0, std::abs(direct)));
                        }
                    }
                }
            }
            ok = worst_c <= 1e-10 && worst_fit <= 1e-10;
            det << " coefficient deviation " << worst_c
                << "; evaluated-minor fit deviation " << worst_fit;
        }));

    results.push_back(run_one(
        7, "family constructors: closure, dimensions, structural clauses",
        out, [&](bool& ok, std::ostream& det) {
            std::ostringstream why;
            auto expect = [&](bool cond, const char* what) {
                if (!cond) {
                    ok = false;
                    why << " [" << what << "]";
                }
            };
            for (FieldTag f : fields) {
                GroupContext ctx(f, 4);
                int d = field_dim(f);
                SubalgebraSpec su = su1n_an(ctx);
                SubalgebraSpec sp = sp1m_an(ctx, 2);
                BMap b0 = f == FieldTag::Real ? BMap(ctx, rot90_2d())
                                              : BMap(ctx, pairing_4d());
                SubalgebraSpec hb = hb_subalgebra(b0);
                SubalgebraSpec hc = hc_subalgebra(ctx, 0.7);
                expect(su.dim() == d * 4, "su dim");
                expect(sp.dim() == 4 * d, "sp dim");
                expect(hb.dim() == d * 4, "hb dim");
                expect(hc.dim() == d * 4, "hc dim");
                for (const SubalgebraSpec* s : {&su, &sp, &hb, &hc})
                    expect(lie_closure_defect(*s) <= 1e-9, "closure");
                expect(lie_closure_defect(hc_subalgebra(ctx, 0.3)) <= 1e-9,
                       "hc(0.3) closure");
                expect(same_span(hb.span_basis(), sp.span_basis(), 1e-9),
                       "hb(B0) = sp(1,2) span");

                ConditionReport q = check_quadratic_family_structure(hb);
                expect(q.all_hold, "quadratic structure on eigenfree hb");
                for (const ConditionClause& c : q.clauses)
                    expect(c.holds, "quadratic clause");

                ConditionReport lin =
                    check_linear_family_structure(hc_subalgebra(ctx, 0.25));
                expect(lin.all_hold, "linear structure on hc(0.25)");
                ConditionReport lin2 =
                    check_linear_family_structure(hc_subalgebra(ctx, 1.0));
                expect(lin2.all_hold, "linear structure on hc(1)");
            }
            {
                // B with an eigenvector: exactly the pair-independence
                // clause must fail, with a re-verifiable witness.
                GroupContext ctx(FieldTag::Real, 4);
                SubalgebraSpec hbid = hb_subalgebra(
                    BMap(ctx, Eigen::MatrixXd::Identity(2, 2)));
                ConditionReport q = check_quadratic_family_structure(hbid);
                expect(!q.all_hold, "identity-graph all_hold must fail");
                for (const ConditionClause& c : q.clauses) {
                    if (c.key == "xy-pairs-span-two-dims")
                        expect(!c.holds, "pair clause must fail on identity");
                    else
                        expect(c.holds, "other clauses hold on identity");
                }
                expect(q.witness.has_value(), "witness present");
                if (q.witness) {
                    Eigen::MatrixXd stack(2, 2);
                    stack.row(0) = q.witness->x.real();
                    stack.row(1) = q.witness->y.real();
                    expect(effective_rank(stack) <= 1,
                           "witness has dependent (x, y)");
                }
            }
            det << (ok ? " all structural checks hold" : why.str());
        }));

    results.push_back(run_one(
        8, "linked-family fingerprint: value c + 1/c, strictly injective",
        out, [&](bool& ok, std::ostream& det) {
            GroupContext ctx(FieldTag::Complex, 4);
            double worst = 0.0;
            for (double c : {0.1, 0.25, 0.5, 1.0}) {
                double v = hc_invariant(hc_subalgebra(ctx, c));
                worst = std::max(worst, std::abs(v - (c + 1.0 / c)));
            }
            bool strict = true;
            double prev = std::numeric_limits<double>::infinity();
            for (int i = 1; i <= 100; ++i) {
                double c = i / 100.0;
                double v = hc_invariant(hc_subalgebra(ctx, c));
                if (!(v < prev)) strict = false;
                prev = v;
            }
            ok = worst <= 1e-8 && strict;
            det << " worst fingerprint deviation " << worst
                << "; 100-point sweep "
                << (strict ? "strictly decreasing" : "NOT injective");
        }));

    results.push_back(run_one(
        9, "classification verdicts on families, torus spans, odd n", out,
        [&](bool& ok, std::ostream& det) {
            std::ostringstream why;
            auto expect = [&](bool cond, const char* what) {
                if (!cond) {
                    ok = false;
                    why << " [" << what << "]";
                }
            };
            GroupContext rr(FieldTag::Real, 4), cc(FieldTag::Complex, 4);

            Verdict v1 = tessellation_verdict(
                hb_subalgebra(BMap(rr, skew_scaled_2d())));
            expect(v1.kind == Verdict::Kind::Yes && v1.family &&
                       *v1.family == FamilyTag::HB,
                   "yes on an eigenvector-free graph family");

            Verdict v2 = tessellation_verdict(hc_subalgebra(cc, 0.5));
            expect(v2.kind == Verdict::Kind::Yes && v2.family &&
                       *v2.family == FamilyTag::Hc &&
                       std::abs(v2.c - 0.5) <= 1e-9,
                   "yes on the linked family c=0.5");

            Verdict v3 = tessellation_verdict(su1n_an(rr));
            expect(v3.kind == Verdict::Kind::Yes && v3.family &&
                       *v3.family == FamilyTag::SU1n,
                   "yes on the rank-one reduction over R");

            for (const GroupContext& ctx : {rr, cc}) {
                SubalgebraSpec a_span(
                    ctx, {torus_gen(ctx, 1.0, 0.0), torus_gen(ctx, 0.0, 1.0)},
                    "a");
                Verdict va = tessellation_verdict(a_span);
                expect(va.kind == Verdict::Kind::No,
                       "no on the full diagonal torus");

                std::vector<ANElement> slice = {torus_gen(ctx, 1.0, 0.0),
                                                torus_gen(ctx, 0.0, 1.0)};
                ANElement eta_gen(ctx);
                eta_gen.eta = Scalar(1.0, 0.0);
                slice.push_back(eta_gen);
                if (ctx.field == FieldTag::Complex) {
                    ANElement xx_gen(ctx);
                    xx_gen.xx = Scalar(0.0, 1.0);
                    slice.push_back(xx_gen);
                }
                Verdict vs = tessellation_verdict(
                    SubalgebraSpec(ctx, slice, "a + central slice"));
                expect(vs.kind == Verdict::Kind::No,
                       "no on a slice containing the torus");
            }

            GroupContext r5(FieldTag::Real, 5), c5(FieldTag::Complex, 5);
            for (const SubalgebraSpec& s :
                 {su1n_an(r5), su1n_an(c5), sp1m_an(r5, 2), sp1m_an(c5, 2),
                  hc_subalgebra(c5, 0.5)}) {
                Verdict v = tessellation_verdict(s);
                expect(v.kind != Verdict::Kind::Yes, "never yes at odd n");
            }
            det << (ok ? " all verdicts as classified" : why.str());
        }));

    int passed = 0;
    for (const CriterionResult& r : results) passed += r.passed ? 1 : 0;
    out << passed << "/" << results.size() << " criteria passed\n";
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const CriterionResult& r : results)
        if (!r.passed) return false;
    return !results.empty();
}

} // namespace cartankit
