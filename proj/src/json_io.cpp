#include "cartankit/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cartankit {

namespace {

double number_from(const json& j, const char* what) {
    if (!j.is_number())
        throw parse_error(std::string(what) + ": expected a number, got " +
                          j.dump());
    return j.get<double>();
}

FieldTag field_from(const json& j) {
    if (!j.is_object() || !j.contains("field"))
        throw parse_error("missing \"field\" (\"R\" or \"C\")");
    std::string f = j.at("field").get<std::string>();
    if (f == "R") return FieldTag::Real;
    if (f == "C") return FieldTag::Complex;
    throw parse_error("\"field\" must be \"R\" or \"C\", got \"" + f + "\"");
}

GroupContext context_from(const json& j) {
    FieldTag f = field_from(j);
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw parse_error("missing integer \"n\"");
    int n = j.at("n").get<int>();
    if (n < 3) throw parse_error("\"n\" must be at least 3");
    return GroupContext(f, n);
}

} // namespace

json scalar_to_json(Scalar z, FieldTag f) {
    if (f == FieldTag::Real) return json(z.real());
    return json::array({z.real(), z.imag()});
}

Scalar scalar_from_json(const json& j, FieldTag f, const char* what) {
    if (j.is_number()) return Scalar(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) {
        double re = number_from(j[0], what);
        double im = number_from(j[1], what);
        if (f == FieldTag::Real && im != 0.0)
            throw parse_error(std::string(what) +
                              ": nonzero imaginary part over F = R");
        return Scalar(re, im);
    }
    throw parse_error(std::string(what) +
                      ": expected a number or [re, im], got " + j.dump());
}

json an_to_json(const ANElement& u) {
    FieldTag f = u.ctx.field;
    json jx = json::array(), jy = json::array();
    for (Eigen::Index i = 0; i < u.x.size(); ++i)
        jx.push_back(scalar_to_json(u.x(i), f));
    for (Eigen::Index i = 0; i < u.y.size(); ++i)
        jy.push_back(scalar_to_json(u.y(i), f));
    json j{{"t1", u.t1},
           {"t2", u.t2},
           {"phi", scalar_to_json(u.phi, f)},
           {"x", jx},
           {"y", jy},
           {"eta", scalar_to_json(u.eta, f)}};
    if (f == FieldTag::Complex) {
        j["xx"] = scalar_to_json(u.xx, f);
        j["yy"] = scalar_to_json(u.yy, f);
    }
    return j;
}

ANElement an_from_json(const json& j, const GroupContext& ctx) {
    if (!j.is_object())
        throw parse_error("element: expected an object, got " + j.dump());
    ANElement u(ctx);
    if (j.contains("t1")) u.t1 = number_from(j.at("t1"), "t1");
    if (j.contains("t2")) u.t2 = number_from(j.at("t2"), "t2");
    if (j.contains("phi"))
        u.phi = scalar_from_json(j.at("phi"), ctx.field, "phi");
    if (j.contains("eta"))
        u.eta = scalar_from_json(j.at("eta"), ctx.field, "eta");
    if (j.contains("xx"))
        u.xx = scalar_from_json(j.at("xx"), FieldTag::Complex, "xx");
    if (j.contains("yy"))
        u.yy = scalar_from_json(j.at("yy"), FieldTag::Complex, "yy");
    int k = ctx.n - 2;
    auto fill_vec = [&](const char* key, Eigen::RowVectorXcd& dst) {
        if (!j.contains(key)) return;
        const json& arr = j.at(key);
        if (!arr.is_array() || static_cast<int>(arr.size()) != k)
            throw parse_error(std::string(key) + ": expected an array of " +
                              std::to_string(k) + " scalars");
        for (int i = 0; i < k; ++i)
            dst(i) = scalar_from_json(arr[i], ctx.field, key);
    };
    fill_vec("x", u.x);
    fill_vec("y", u.y);
    validate(u);
    return u;
}

json group_to_json(const GroupMatrix& g) {
    const Eigen::MatrixXcd& m = g.mat();
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index jj = 0; jj < m.cols(); ++jj)
            row.push_back(json::array({m(i, jj).real(), m(i, jj).imag()}));
        rows.push_back(row);
    }
    return json{{"field", field_name(g.context().field)},
                {"n", g.context().n},
                {"entries", rows}};
}

GroupMatrix group_from_json(const json& j) {
    GroupContext ctx = context_from(j);
    int sz = ctx.size();
    if (!j.contains("entries") || !j.at("entries").is_array() ||
        static_cast<int>(j.at("entries").size()) != sz)
        throw parse_error("\"entries\" must be a " + std::to_string(sz) +
                          " x " + std::to_string(sz) + " array");
    Eigen::MatrixXcd m(sz, sz);
    for (int i = 0; i < sz; ++i) {
        const json& row = j.at("entries")[i];
        if (!row.is_array() || static_cast<int>(row.size()) != sz)
            throw parse_error("\"entries\" row " + std::to_string(i) +
                              " has the wrong length");
        for (int jj = 0; jj < sz; ++jj)
            m(i, jj) = scalar_from_json(row[jj], ctx.field, "entries");
    }
    return GroupMatrix(m, ctx);
}

json spec_to_json(const SubalgebraSpec& s) {
    json basis = json::array();
    for (const ANElement& b : s.basis) basis.push_back(an_to_json(b));
    return json{{"field", field_name(s.ctx.field)},
                {"n", s.ctx.n},
                {"name", s.name},
                {"basis", basis}};
}

SubalgebraSpec spec_from_json(const json& j) {
    GroupContext ctx = context_from(j);
    if (!j.contains("basis") || !j.at("basis").is_array())
        throw parse_error("missing \"basis\" array");
    std::vector<ANElement> basis;
    for (const json& jb : j.at("basis")) basis.push_back(an_from_json(jb, ctx));
    std::string name = j.value("name", std::string());
    return SubalgebraSpec(ctx, std::move(basis), std::move(name));
}

json bmap_to_json(const BMap& b) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < b.entries.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index jj = 0; jj < b.entries.cols(); ++jj)
            row.push_back(b.entries(i, jj));
        rows.push_back(row);
    }
    return json{{"field", field_name(b.ctx.field)},
                {"n", b.ctx.n},
                {"convention", "xB"},
                {"entries", rows}};
}

BMap bmap_from_json(const json& j) {
    GroupContext ctx = context_from(j);
    if (j.contains("convention") &&
        j.at("convention").get<std::string>() != "xB")
        throw parse_error(
            "\"convention\" must be \"xB\" (row vector times matrix)");
    int dk = field_dim(ctx.field) * (ctx.n - 2);
    if (!j.contains("entries") || !j.at("entries").is_array() ||
        static_cast<int>(j.at("entries").size()) != dk)
        throw parse_error("\"entries\" must be a " + std::to_string(dk) +
                          " x " + std::to_string(dk) + " real array");
    Eigen::MatrixXd m(dk, dk);
    for (int i = 0; i < dk; ++i) {
        const json& row = j.at("entries")[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dk)
            throw parse_error("\"entries\" row " + std::to_string(i) +
                              " has the wrong length");
        for (int jj = 0; jj < dk; ++jj)
            m(i, jj) = number_from(row[jj], "entries");
    }
    return BMap(ctx, std::move(m));
}

json verdict_to_json(const Verdict& v) {
    json j;
    switch (v.kind) {
        case Verdict::Kind::Yes: j["verdict"] = "yes"; break;
        case Verdict::Kind::No: j["verdict"] = "no"; break;
        case Verdict::Kind::Unknown: j["verdict"] = "unknown"; break;
    }
    j["family"] = v.family ? json(family_name(*v.family)) : json(nullptr);
    if (v.family && *v.family == FamilyTag::Hc) j["c"] = v.c;
    j["reason"] = v.reason;
    return j;
}

json condition_report_to_json(const ConditionReport& r) {
    json clauses = json::array();
    for (const ConditionClause& c : r.clauses)
        clauses.push_back(
            json{{"key", c.key}, {"holds", c.holds}, {"detail", c.detail}});
    return json{{"all_hold", r.all_hold},
                {"dim", r.dim},
                {"dim_bound", r.dim_bound},
                {"dim_at_bound", r.dim_at_bound},
                {"clauses", clauses},
                {"witness", r.witness ? an_to_json(*r.witness) : json(nullptr)},
                {"summary", r.summary}};
}

json compatibility_to_json(const CompatibilityReport& r) {
    return json{{"compatible", r.compatible}, {"semidirect", r.semidirect},
                {"dim_t", r.dim_t},           {"dim_u", r.dim_u},
                {"t_label", r.t_label},       {"worst_residual", r.worst_residual},
                {"detail", r.detail}};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace cartankit
