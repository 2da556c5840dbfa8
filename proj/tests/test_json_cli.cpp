#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cartankit/json_io.hpp"
#include "cartankit/sampling.hpp"

using namespace cartankit;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("scalar serialization round-trips and enforces the field") {
    CHECK(scalar_from_json(scalar_to_json(Scalar(1.5, -2.0), FieldTag::Complex),
                           FieldTag::Complex, "z") == Scalar(1.5, -2.0));
    CHECK(scalar_from_json(json(3.0), FieldTag::Real, "z") == Scalar(3.0, 0.0));
    CHECK_THROWS_AS(
        scalar_from_json(json::array({1.0, 2.0}), FieldTag::Real, "z"),
        parse_error);
    CHECK_THROWS_AS(scalar_from_json(json("nope"), FieldTag::Real, "z"),
                    parse_error);
}

TEST_CASE("elements round-trip through JSON with defaults for missing slots") {
    for (FieldTag f : {FieldTag::Real, FieldTag::Complex}) {
        GroupContext ctx(f, 5);
        Rng rng(61);
        ANElement u = random_an(ctx, rng);
        ANElement v = an_from_json(an_to_json(u), ctx);
        CHECK((flatten(u) - flatten(v)).cwiseAbs().maxCoeff() == 0.0);
    }
    GroupContext ctx(FieldTag::Real, 4);
    ANElement w = an_from_json(json{{"t1", 2.0}}, ctx);
    CHECK(w.t1 == 2.0);
    CHECK(w.coord_norm() == 2.0);
    CHECK_THROWS_AS(
        an_from_json(json{{"x", json::array({1.0})}}, ctx), // needs n-2 = 2
        parse_error);
}

TEST_CASE("group elements round-trip and revalidate membership") {
    GroupContext ctx(FieldTag::Complex, 4);
    Rng rng(67);
    GroupMatrix g = random_group(ctx, rng);
    GroupMatrix h = group_from_json(group_to_json(g));
    CHECK((g.mat() - h.mat()).cwiseAbs().maxCoeff() == 0.0);

    json bad = group_to_json(g);
    bad["entries"][0][0] = json::array({50.0, 0.0});
    CHECK_THROWS_AS(group_from_json(bad), precondition_error);
}

TEST_CASE("subalgebra specs round-trip with their span") {
    GroupContext ctx(FieldTag::Complex, 4);
    SubalgebraSpec s = hc_subalgebra(ctx, 0.6);
    SubalgebraSpec t = spec_from_json(spec_to_json(s));
    CHECK(t.name == s.name);
    CHECK(t.dim() == s.dim());
    CHECK(same_span(s.span_basis(), t.span_basis(), 1e-12));
}

TEST_CASE("graph maps round-trip and reject other conventions") {
    GroupContext ctx(FieldTag::Real, 4);
    Eigen::MatrixXd m(2, 2);
    m << 0, 2, -0.5, 0;
    BMap b(ctx, m);
    BMap b2 = bmap_from_json(bmap_to_json(b));
    CHECK((b.entries - b2.entries).cwiseAbs().maxCoeff() == 0.0);

    json j = bmap_to_json(b);
    j["convention"] = "Bx";
    CHECK_THROWS_AS(bmap_from_json(j), parse_error);
}

TEST_CASE("verdicts and reports serialize with stable keys") {
    GroupContext ctx(FieldTag::Complex, 4);
    json v = verdict_to_json(tessellation_verdict(hc_subalgebra(ctx, 0.5)));
    CHECK(v.at("verdict") == "yes");
    CHECK(v.at("family") == "h_c");
    CHECK(v.at("c").get<double>() == doctest::Approx(0.5));
    CHECK(v.contains("reason"));

    json r = condition_report_to_json(
        check_linear_family_structure(hc_subalgebra(ctx, 0.5)));
    CHECK(r.at("all_hold") == true);
    CHECK(r.at("clauses").is_array());
    CHECK(r.at("clauses")[0].contains("key"));

    json c = compatibility_to_json(is_compatible(hc_subalgebra(ctx, 0.5)));
    CHECK(c.at("compatible") == true);
    CHECK(c.at("t_label") == "ker beta");
}

TEST_CASE("file loading wraps IO and syntax failures as parse errors") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/path.json"), parse_error);
    auto p = temp_file("cartankit_bad.json");
    {
        std::ofstream out(p);
        out << "{ not json";
    }
    CHECK_THROWS_AS(load_json_file(p.string()), parse_error);
    std::remove(p.string().c_str());

    auto q = temp_file("cartankit_ok.json");
    save_json_file(q.string(), json{{"k", 1}});
    CHECK(load_json_file(q.string()).at("k") == 1);
    std::remove(q.string().c_str());
}
