#include "cartankit/ancoords.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "cartankit/linalg.hpp"

namespace cartankit {

ANElement::ANElement(const GroupContext& c)
    : ctx(c),
      x(Eigen::RowVectorXcd::Zero(c.n - 2)),
      y(Eigen::RowVectorXcd::Zero(c.n - 2)) {}

bool ANElement::is_nilpotent(double tol) const {
    return std::abs(t1) <= tol && std::abs(t2) <= tol;
}

double ANElement::coord_norm() const { return flatten(*this).norm(); }

void validate(const ANElement& u) {
    int k = u.ctx.n - 2;
    if (u.x.size() != k || u.y.size() != k)
        throw precondition_error("ANElement: x and y must have length n-2");
    double tol = default_tol();
    if (std::abs(u.xx.real()) > tol || std::abs(u.yy.real()) > tol)
        throw precondition_error("ANElement: xx and yy must be purely imaginary");
    if (u.ctx.field == FieldTag::Real) {
        double worst = std::max(std::abs(u.phi.imag()), std::abs(u.eta.imag()));
        worst = std::max(worst, std::abs(u.xx.imag()));
        worst = std::max(worst, std::abs(u.yy.imag()));
        for (int j = 0; j < k; ++j) {
            worst = std::max(worst, std::abs(u.x(j).imag()));
            worst = std::max(worst, std::abs(u.y(j).imag()));
        }
        if (worst > tol)
            throw precondition_error(
                "ANElement: imaginary residue in a real-field element");
    }
}

ANElement operator+(const ANElement& a, const ANElement& b) {
    require_same_context(a.ctx, b.ctx, "ANElement sum");
    ANElement r = a;
    r.t1 += b.t1;
    r.t2 += b.t2;
    r.phi += b.phi;
    r.x += b.x;
    r.y += b.y;
    r.eta += b.eta;
    r.xx += b.xx;
    r.yy += b.yy;
    return r;
}

ANElement operator-(const ANElement& a, const ANElement& b) {
    return a + (-1.0 * b);
}

ANElement operator*(double s, const ANElement& a) {
    ANElement r = a;
    r.t1 *= s;
    r.t2 *= s;
    r.phi *= s;
    r.x *= s;
    r.y *= s;
    r.eta *= s;
    r.xx *= s;
    r.yy *= s;
    return r;
}

FlatLayout flat_layout(const GroupContext& ctx) {
    int k = ctx.n - 2;
    int d = field_dim(ctx.field);
    FlatLayout l{};
    l.t1 = 0;
    l.t2 = 1;
    l.phi = 2;
    l.phi_len = d;
    l.x = l.phi + l.phi_len;
    l.x_len = d * k;
    l.y = l.x + l.x_len;
    l.y_len = d * k;
    l.eta = l.y + l.y_len;
    l.eta_len = d;
    l.xx = l.eta + l.eta_len;
    l.xx_len = d == 2 ? 1 : 0;
    l.yy = l.xx + l.xx_len;
    l.yy_len = l.xx_len;
    l.dim = l.yy + l.yy_len;
    return l;
}

int an_flat_dim(const GroupContext& ctx) { return flat_layout(ctx).dim; }

Eigen::VectorXd flatten(const ANElement& u) {
    FlatLayout l = flat_layout(u.ctx);
    int k = u.ctx.n - 2;
    bool cx = u.ctx.field == FieldTag::Complex;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(l.dim);
    v(l.t1) = u.t1;
    v(l.t2) = u.t2;
    auto put = [&](int base, Scalar z) {
        v(base) = z.real();
        if (cx) v(base + 1) = z.imag();
    };
    put(l.phi, u.phi);
    int d = field_dim(u.ctx.field);
    for (int j = 0; j < k; ++j) put(l.x + d * j, u.x(j));
    for (int j = 0; j < k; ++j) put(l.y + d * j, u.y(j));
    put(l.eta, u.eta);
    if (cx) {
        v(l.xx) = u.xx.imag();
        v(l.yy) = u.yy.imag();
    }
    return v;
}

ANElement unflatten(const GroupContext& ctx, const Eigen::VectorXd& v) {
    FlatLayout l = flat_layout(ctx);
    if (v.size() != l.dim)
        throw precondition_error("unflatten: expected dimension " +
                                 std::to_string(l.dim) + ", got " +
                                 std::to_string(v.size()));
    int k = ctx.n - 2;
    bool cx = ctx.field == FieldTag::Complex;
    int d = field_dim(ctx.field);
    ANElement u(ctx);
    u.t1 = v(l.t1);
    u.t2 = v(l.t2);
    auto get = [&](int base) {
        return Scalar(v(base), cx ? v(base + 1) : 0.0);
    };
    u.phi = get(l.phi);
    for (int j = 0; j < k; ++j) u.x(j) = get(l.x + d * j);
    for (int j = 0; j < k; ++j) u.y(j) = get(l.y + d * j);
    u.eta = get(l.eta);
    if (cx) {
        u.xx = Scalar(0.0, v(l.xx));
        u.yy = Scalar(0.0, v(l.yy));
    }
    return u;
}

Eigen::MatrixXcd to_matrix(const ANElement& u) {
    int sz = u.ctx.size();
    int k = u.ctx.n - 2;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(sz, sz);
    m(0, 0) = u.t1;
    m(1, 1) = u.t2;
    m(sz - 2, sz - 2) = -u.t2;
    m(sz - 1, sz - 1) = -u.t1;
    m(0, 1) = u.phi;
    for (int j = 0; j < k; ++j) m(0, 2 + j) = u.x(j);
    m(0, sz - 2) = u.eta;
    m(0, sz - 1) = u.xx;
    for (int j = 0; j < k; ++j) m(1, 2 + j) = u.y(j);
    m(1, sz - 2) = u.yy;
    m(1, sz - 1) = -std::conj(u.eta);
    for (int j = 0; j < k; ++j) {
        m(2 + j, sz - 2) = -std::conj(u.y(j));
        m(2 + j, sz - 1) = -std::conj(u.x(j));
    }
    m(sz - 2, sz - 1) = -std::conj(u.phi);
    return m;
}

ANElement from_matrix(const Eigen::MatrixXcd& m, const GroupContext& ctx) {
    int sz = ctx.size();
    int k = ctx.n - 2;
    if (m.rows() != sz || m.cols() != sz)
        throw precondition_error("from_matrix: expected size " +
                                 std::to_string(sz));
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    double tol = default_tol() * scale;

    auto allowed = [&](int i, int j) {
        if (i == j) return i <= 1 || i >= sz - 2;
        if (i == 0) return true;
        if (i == 1) return j >= 2;
        if (i >= 2 && i <= sz - 3) return j >= sz - 2;
        if (i == sz - 2) return j == sz - 1;
        return false;
    };
    for (int i = 0; i < sz; ++i)
        for (int j = 0; j < sz; ++j)
            if (!allowed(i, j) && std::abs(m(i, j)) > tol) {
                std::ostringstream os;
                os << "from_matrix: entry (" << i + 1 << "," << j + 1
                   << ") must vanish for an a+n element, found " << m(i, j);
                throw precondition_error(os.str());
            }

    auto near = [&](Scalar a, Scalar b) { return std::abs(a - b) <= tol; };

    if (std::abs(m(0, 0).imag()) > tol || std::abs(m(1, 1).imag()) > tol)
        throw precondition_error("from_matrix: torus entries must be real");

    ANElement u(ctx);
    u.t1 = m(0, 0).real();
    u.t2 = m(1, 1).real();
    if (!near(m(sz - 2, sz - 2), -m(1, 1)) || !near(m(sz - 1, sz - 1), -m(0, 0)))
        throw precondition_error(
            "from_matrix: lower diagonal does not mirror the torus part");

    u.phi = m(0, 1);
    for (int j = 0; j < k; ++j) u.x(j) = m(0, 2 + j);
    u.eta = m(0, sz - 2);
    if (std::abs(m(0, sz - 1).real()) > tol)
        throw precondition_error("from_matrix: xx slot must be purely imaginary");
    u.xx = Scalar(0.0, m(0, sz - 1).imag());
    for (int j = 0; j < k; ++j) u.y(j) = m(1, 2 + j);
    if (std::abs(m(1, sz - 2).real()) > tol)
        throw precondition_error("from_matrix: yy slot must be purely imaginary");
    u.yy = Scalar(0.0, m(1, sz - 2).imag());

    if (!near(m(1, sz - 1), -std::conj(u.eta)))
        throw precondition_error(
            "from_matrix: (2, n+2) entry must equal -conj(eta)");
    for (int j = 0; j < k; ++j) {
        if (!near(m(2 + j, sz - 2), -std::conj(u.y(j))))
            throw precondition_error(
                "from_matrix: middle rows must carry -conj(y)");
        if (!near(m(2 + j, sz - 1), -std::conj(u.x(j))))
            throw precondition_error(
                "from_matrix: middle rows must carry -conj(x)");
    }
    if (!near(m(sz - 2, sz - 1), -std::conj(u.phi)))
        throw precondition_error(
            "from_matrix: (n+1, n+2) entry must equal -conj(phi)");

    if (ctx.field == FieldTag::Real) {
        double worst = std::max(std::abs(u.phi.imag()), std::abs(u.eta.imag()));
        worst = std::max({worst, std::abs(u.xx.imag()), std::abs(u.yy.imag())});
        for (int j = 0; j < k; ++j)
            worst = std::max(
                {worst, std::abs(u.x(j).imag()), std::abs(u.y(j).imag())});
        if (worst > tol)
            throw precondition_error(
                "from_matrix: imaginary residue in a real-field matrix");
        u.phi = re_part(u.phi);
        u.eta = re_part(u.eta);
        u.x = u.x.real().cast<Scalar>();
        u.y = u.y.real().cast<Scalar>();
        u.xx = u.yy = Scalar(0.0, 0.0);
    }
    return u;
}

Eigen::MatrixXcd exp_series_nilpotent(const Eigen::MatrixXcd& m) {
    int sz = static_cast<int>(m.rows());
    Eigen::MatrixXcd m2 = m * m;
    Eigen::MatrixXcd m3 = m2 * m;
    Eigen::MatrixXcd m4 = m3 * m;
    double s = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m4 * m).cwiseAbs().maxCoeff() > 1e-9 * std::pow(s, 5))
        throw numerical_error(
            "exp_series_nilpotent: argument is not nilpotent of order <= 5");
    return Eigen::MatrixXcd::Identity(sz, sz) + m + 0.5 * m2 +
           (1.0 / 6.0) * m3 + (1.0 / 24.0) * m4;
}

GroupMatrix exp_closed(const ANElement& u) {
    if (!u.is_nilpotent(default_tol()))
        throw precondition_error(
            "exp_closed requires a nilpotent argument (t1 = t2 = 0); use "
            "exp_general");
    int sz = u.ctx.size();
    int k = u.ctx.n - 2;
    const Scalar phi = u.phi, eta = u.eta, xx = u.xx, yy = u.yy;
    const Scalar xyd = row_dot_dagger(u.x, u.y); // x y^dagger
    const Scalar yxd = std::conj(xyd);           // y x^dagger
    const double x2 = u.x.squaredNorm();
    const double y2 = u.y.squaredNorm();
    const double phi2 = std::norm(phi);
    const Scalar z = xyd * std::conj(phi);

    Eigen::MatrixXcd e = Eigen::MatrixXcd::Identity(sz, sz);
    e(0, 1) = phi;
    for (int j = 0; j < k; ++j) e(0, 2 + j) = u.x(j) + 0.5 * phi * u.y(j);
    e(0, sz - 2) =
        eta - 0.5 * xyd + 0.5 * phi * yy - (1.0 / 6.0) * phi * y2;
    e(0, sz - 1) = xx - Scalar(0.5 * x2, 0.0) -
                   Scalar((phi * std::conj(eta)).real(), 0.0) +
                   Scalar(phi2 * y2 / 24.0, 0.0) - (1.0 / 6.0) * phi2 * yy +
                   (z - std::conj(z)) / 6.0;
    for (int j = 0; j < k; ++j) e(1, 2 + j) = u.y(j);
    e(1, sz - 2) = yy - Scalar(0.5 * y2, 0.0);
    e(1, sz - 1) = -std::conj(eta) - 0.5 * yxd - 0.5 * yy * std::conj(phi) +
                   (1.0 / 6.0) * y2 * std::conj(phi);
    for (int j = 0; j < k; ++j) {
        e(2 + j, sz - 2) = -std::conj(u.y(j));
        e(2 + j, sz - 1) =
            -std::conj(u.x(j)) + 0.5 * std::conj(u.y(j)) * std::conj(phi);
    }
    e(sz - 2, sz - 1) = -std::conj(phi);
    return GroupMatrix(e, u.ctx);
}

Eigen::MatrixXcd exp_matrix(const ANElement& u) { return to_matrix(u).exp(); }

GroupMatrix exp_general(const ANElement& u) {
    return GroupMatrix(exp_matrix(u), u.ctx);
}

ANElement bracket(const ANElement& u, const ANElement& v) {
    require_same_context(u.ctx, v.ctx, "bracket");
    if (u.t1 == 0.0 && u.t2 == 0.0 && v.t1 == 0.0 && v.t2 == 0.0) {
        ANElement r(u.ctx);
        r.x = u.phi * v.y - v.phi * u.y;
        r.eta = -row_dot_dagger(u.x, v.y) + row_dot_dagger(v.x, u.y) +
                u.phi * v.yy - v.phi * u.yy;
        Scalar w = row_dot_dagger(u.x, v.x) + u.phi * std::conj(v.eta) -
                   v.phi * std::conj(u.eta);
        r.xx = Scalar(0.0, -2.0 * w.imag());
        r.yy = Scalar(0.0, -2.0 * row_dot_dagger(u.y, v.y).imag());
        return r;
    }
    return from_matrix(to_matrix(u) * to_matrix(v) - to_matrix(v) * to_matrix(u),
                       u.ctx);
}

ANElement conjugate_by_exp(const ANElement& u, const ANElement& v) {
    require_same_context(u.ctx, v.ctx, "conjugate_by_exp");
    if (v.t1 == 0.0 && v.t2 == 0.0) {
        // ad(v) is nilpotent, so the series u + [u,v] + [[u,v],v]/2 + ...
        // terminates with exact zeros.
        ANElement acc = u;
        ANElement term = u;
        for (int k = 1; k <= 8; ++k) {
            term = (1.0 / k) * bracket(term, v);
            if (term.coord_norm() == 0.0) return acc;
            acc = acc + term;
        }
        return acc;
    }
    Eigen::MatrixXcd ev = exp_matrix(v);
    Eigen::MatrixXcd evinv = exp_matrix(-1.0 * v);
    return from_matrix(evinv * to_matrix(u) * ev, u.ctx);
}

const char* root_name(RootLabel r) {
    switch (r) {
        case RootLabel::Alpha: return "alpha";
        case RootLabel::Beta: return "beta";
        case RootLabel::AlphaBeta: return "alpha+beta";
        case RootLabel::Alpha2Beta: return "alpha+2beta";
        case RootLabel::TwoBeta: return "2beta";
        case RootLabel::TwoAlphaTwoBeta: return "2alpha+2beta";
        case RootLabel::Zero: return "zero";
    }
    return "?";
}

double root_value(RootLabel r, double t1, double t2) {
    switch (r) {
        case RootLabel::Alpha: return t1 - t2;
        case RootLabel::Beta: return t2;
        case RootLabel::AlphaBeta: return t1;
        case RootLabel::Alpha2Beta: return t1 + t2;
        case RootLabel::TwoBeta: return 2.0 * t2;
        case RootLabel::TwoAlphaTwoBeta: return 2.0 * t1;
        case RootLabel::Zero: return 0.0;
    }
    return 0.0;
}

ANElement root_component(const ANElement& u, RootLabel r) {
    ANElement out(u.ctx);
    bool cx = u.ctx.field == FieldTag::Complex;
    switch (r) {
        case RootLabel::Alpha: out.phi = u.phi; break;
        case RootLabel::Beta: out.y = u.y; break;
        case RootLabel::AlphaBeta: out.x = u.x; break;
        case RootLabel::Alpha2Beta: out.eta = u.eta; break;
        case RootLabel::TwoBeta:
            if (cx) out.yy = u.yy;
            break;
        case RootLabel::TwoAlphaTwoBeta:
            if (cx) out.xx = u.xx;
            break;
        case RootLabel::Zero:
            out.t1 = u.t1;
            out.t2 = u.t2;
            break;
    }
    return out;
}

namespace {

/// Flattened coordinate rows of the given nilpotent root slot.
std::vector<int> slot_rows(const FlatLayout& l, RootLabel r) {
    auto range = [](int start, int len) {
        std::vector<int> v(len);
        for (int i = 0; i < len; ++i) v[i] = start + i;
        return v;
    };
    switch (r) {
        case RootLabel::Alpha: return range(l.phi, l.phi_len);
        case RootLabel::Beta: return range(l.y, l.y_len);
        case RootLabel::AlphaBeta: return range(l.x, l.x_len);
        case RootLabel::Alpha2Beta: return range(l.eta, l.eta_len);
        case RootLabel::TwoBeta: return range(l.yy, l.yy_len);
        case RootLabel::TwoAlphaTwoBeta: return range(l.xx, l.xx_len);
        case RootLabel::Zero: return {l.t1, l.t2};
    }
    return {};
}

constexpr RootLabel kNilpotentRoots[] = {
    RootLabel::Alpha,      RootLabel::Beta,    RootLabel::AlphaBeta,
    RootLabel::Alpha2Beta, RootLabel::TwoBeta, RootLabel::TwoAlphaTwoBeta,
};

} // namespace

std::pair<std::vector<ANElement>, std::vector<ANElement>> rootdecomp_split(
    const std::vector<ANElement>& v, std::pair<double, double> t_direction,
    RootLabel omega) {
    if (v.empty()) return {{}, {}};
    const GroupContext ctx = v[0].ctx;
    FlatLayout l = flat_layout(ctx);
    double tol = default_tol();

    Eigen::MatrixXd cols(l.dim, static_cast<int>(v.size()));
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
        require_same_context(ctx, v[i].ctx, "rootdecomp_split");
        if (!v[i].is_nilpotent(tol))
            throw precondition_error(
                "rootdecomp_split: elements must be nilpotent (t1 = t2 = 0)");
        cols.col(i) = flatten(v[i]);
    }
    Eigen::MatrixXd q = orth_columns(cols);

    ANElement tau = ANElement::zero(ctx);
    tau.t1 = t_direction.first;
    tau.t2 = t_direction.second;
    double worst = 0.0;
    for (const ANElement& b : v) {
        Eigen::VectorXd w = flatten(bracket(tau, b));
        worst = std::max(worst,
                         residual_outside(q, w) / std::max(1.0, w.norm()));
    }
    if (worst > tol) {
        std::ostringstream os;
        os << "rootdecomp_split: span is not invariant under the torus "
              "direction (bracket defect "
           << worst << ")";
        throw precondition_error(os.str());
    }

    double wref = root_value(omega, tau.t1, tau.t2);
    double wtol = 1e-9 * std::max({1.0, std::abs(tau.t1), std::abs(tau.t2)});
    // Each list holds the flattened rows that must vanish on that half: the
    // eq half vanishes on every slot whose root value differs from omega's,
    // the neq half on every slot whose value agrees. Torus rows vanish on
    // both (the input is nilpotent).
    std::vector<int> zero_for_eq{l.t1, l.t2};
    std::vector<int> zero_for_neq{l.t1, l.t2};
    for (RootLabel r : kNilpotentRoots) {
        bool matches = std::abs(root_value(r, tau.t1, tau.t2) - wref) <= wtol;
        for (int row : slot_rows(l, r))
            (matches ? zero_for_neq : zero_for_eq).push_back(row);
    }
    Eigen::MatrixXd eq_basis = intersect_with_zero_rows(q, zero_for_eq);
    Eigen::MatrixXd neq_basis = intersect_with_zero_rows(q, zero_for_neq);
    if (eq_basis.cols() + neq_basis.cols() != q.cols())
        throw numerical_error(
            "rootdecomp_split: split dimensions do not add up to dim span");

    std::pair<std::vector<ANElement>, std::vector<ANElement>> out;
    for (Eigen::Index j = 0; j < eq_basis.cols(); ++j)
        out.first.push_back(unflatten(ctx, eq_basis.col(j)));
    for (Eigen::Index j = 0; j < neq_basis.cols(); ++j)
        out.second.push_back(unflatten(ctx, neq_basis.col(j)));
    return out;
}

} // namespace cartankit
