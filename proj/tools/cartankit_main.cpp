#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cartankit/json_io.hpp"
#include "cartankit/sampling.hpp"
#include "cartankit/selftest.hpp"

namespace {

using namespace cartankit;

FieldTag field_from_flag(const std::string& f) {
    return f == "R" ? FieldTag::Real : FieldTag::Complex;
}

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(out_path, j);
}

/// Curve input: {"field": "R"|"C", "n": int, "generator": {ANElement}}.
CurveSpec curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("generator"))
        throw parse_error("curve input must be an object with a 'generator'");
    if (!j.contains("field") || !j.contains("n"))
        throw parse_error("curve input needs 'field' and 'n'");
    GroupContext ctx(field_from_flag(j.at("field").get<std::string>()),
                     j.at("n").get<int>());
    return CurveSpec::with_default_grid(an_from_json(j.at("generator"), ctx));
}

json growth_to_json(const GrowthClass& g) {
    return json{{"kind", growth_name(g.kind)},
                {"kappa", g.kappa},
                {"truncated", g.truncated}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "cartankit: Cartan-projection growth analysis and tessellation "
        "classification for homogeneous spaces of SU(2,n) over R and C"};
    app.require_subcommand(1);

    std::string in_path, out_path, family, field = "C", b_path;
    int n = 4, m = 0, budget = 200;
    double c = 0.0;
    std::uint64_t seed = 20260814ull;
    bool as_json = false;
    int rc = 0;

    auto* mk = app.add_subcommand(
        "make", "Construct a standard subalgebra and print it as JSON");
    mk->add_option("--family", family, "su1n | sp1m | hb | hc")
        ->required()
        ->check(CLI::IsMember({"su1n", "sp1m", "hb", "hc"}));
    mk->add_option("--field", field, "R or C")->check(CLI::IsMember({"R", "C"}));
    mk->add_option("--n", n, "group parameter n >= 3");
    mk->add_option("--m", m, "quaternionic parameter (sp1m)");
    mk->add_option("--c", c, "linked-family parameter (hc)");
    mk->add_option("--b", b_path, "JSON file with the graph map B (hb)");
    mk->add_option("--out", out_path, "output file (default stdout)");
    mk->callback([&] {
        GroupContext ctx(field_from_flag(field), n);
        if (family == "su1n") {
            emit(spec_to_json(su1n_an(ctx)), out_path);
        } else if (family == "sp1m") {
            if (m <= 0) throw parse_error("family sp1m requires --m >= 1");
            emit(spec_to_json(sp1m_an(ctx, m)), out_path);
        } else if (family == "hb") {
            if (b_path.empty()) throw parse_error("family hb requires --b");
            BMap b = bmap_from_json(load_json_file(b_path));
            emit(spec_to_json(hb_subalgebra(b)), out_path);
        } else {
            if (c == 0.0) throw parse_error("family hc requires --c != 0");
            emit(spec_to_json(hc_subalgebra(ctx, c)), out_path);
        }
    });

    auto* ck = app.add_subcommand(
        "check", "Compatibility and structural conditions of a subalgebra");
    ck->add_option("--in", in_path, "subalgebra JSON")->required();
    ck->add_option("--out", out_path, "output file (default stdout)");
    ck->callback([&] {
        SubalgebraSpec s = spec_from_json(load_json_file(in_path));
        json j{{"name", s.name},
               {"field", field_name(s.ctx.field)},
               {"n", s.ctx.n},
               {"dim", s.dim()},
               {"closure_defect", lie_closure_defect(s)}};
        CompatibilityReport comp = is_compatible(s);
        j["compatibility"] = compatibility_to_json(comp);
        if (comp.compatible) {
            try {
                j["quadratic_structure"] =
                    condition_report_to_json(check_quadratic_family_structure(s));
            } catch (const std::exception& e) {
                j["quadratic_structure"] = json{{"error", e.what()}};
            }
            try {
                ConditionReport lin = check_linear_family_structure(s);
                j["linear_structure"] = condition_report_to_json(lin);
                if (lin.all_hold && s.ctx.field == FieldTag::Complex)
                    j["hc_invariant"] = hc_invariant(s);
            } catch (const std::exception& e) {
                j["linear_structure"] = json{{"error", e.what()}};
            }
        }
        emit(j, out_path);
    });

    auto* cl = app.add_subcommand(
        "classify", "Tessellation verdict for G/H with H = exp(span)");
    cl->add_option("--in", in_path, "subalgebra JSON")->required();
    cl->add_option("--budget", budget, "random curves for the growth search");
    cl->add_option("--seed", seed, "search seed");
    cl->add_option("--out", out_path, "output file (default stdout)");
    cl->callback([&] {
        SubalgebraSpec s = spec_from_json(load_json_file(in_path));
        emit(verdict_to_json(tessellation_verdict(s, budget, seed)), out_path);
    });

    auto* mu = app.add_subcommand(
        "mu", "Cartan projection of a group element: prints 'a11 a22'");
    mu->add_option("--in", in_path, "group element JSON")->required();
    mu->callback([&] {
        CartanPoint p = cartan_mu(group_from_json(load_json_file(in_path)));
        std::cout << p.a11 << " " << p.a22 << "\n";
    });

    auto* cv = app.add_subcommand(
        "curve", "Sample exp(t*u) on the default grid; CSV of norms");
    cv->add_option("--in", in_path, "curve JSON {field,n,generator}")
        ->required();
    cv->add_flag("--classify-only", as_json,
                 "print the growth class as JSON instead of the CSV");
    cv->callback([&] {
        CurveSpec spec = curve_from_json(load_json_file(in_path));
        if (as_json) {
            std::cout << growth_to_json(classify_growth(spec)).dump(2) << "\n";
            return;
        }
        CurveSamples samples = sample_curve(spec);
        std::cout << "t,log_norm,log_rho,log_a11,log_a22\n";
        for (const CurveSample& r : samples.rows)
            std::cout << r.t << "," << r.log_norm << "," << r.log_rho << ","
                      << r.log_a11 << "," << r.log_a22 << "\n";
    });

    auto* cd = app.add_subcommand(
        "cds", "Search span for curves of linear and quadratic growth");
    cd->add_option("--in", in_path, "subalgebra JSON")->required();
    cd->add_option("--budget", budget, "random combinations to try");
    cd->add_option("--seed", seed, "search seed");
    cd->callback([&] {
        SubalgebraSpec s = spec_from_json(load_json_file(in_path));
        CdsReport r = cds_search(s, budget, seed);
        const char* verdicts[] = {"both-growth-classes", "no-linear-observed",
                                  "no-quadratic-observed", "neither-observed"};
        json j{{"verdict", verdicts[static_cast<int>(r.verdict)]},
               {"curves_tested", r.curves_tested}};
        if (r.found_linear) j["found_linear"] = an_to_json(*r.found_linear);
        if (r.found_quadratic)
            j["found_quadratic"] = an_to_json(*r.found_quadratic);
        std::cout << j.dump(2) << "\n";
    });

    auto* st = app.add_subcommand(
        "selftest", "Run the nine acceptance criteria (deterministic)");
    st->add_option("--seed", seed, "sampling seed");
    st->callback([&] {
        if (!all_passed(run_selftest(seed, std::cout))) rc = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const precondition_error& e) {
        std::cerr << "precondition violated: " << e.what() << "\n";
        return 3;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
