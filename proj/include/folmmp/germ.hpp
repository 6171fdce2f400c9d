#pragma once

// Rank-one foliation germs at a smooth surface point, written as polynomial
// vector fields a(x,y) d/dx + b(x,y) d/dy, and the single point blow-up with
// its invariance and discrepancy bookkeeping.
//
// Conventions for the blow-up at the origin:
//   x-chart: (x, y) = (u, u v),   exceptional divisor E = {u = 0}
//   y-chart: (x, y) = (w s, s),   exceptional divisor E = {s = 0}
// The point of E with x-chart coordinate v = t is the direction [1 : t];
// the y-chart origin is the direction [0 : 1].

#include "folmmp/linalg.hpp"
#include "folmmp/polynomial.hpp"
#include "folmmp/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace folmmp {

// Signals a singular locus that is not isolated along the exceptional
// divisor; this cannot happen for saturated input.
class non_isolated_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VectorFieldGerm {
    Poly2 coeff_x; // coefficient of d/dx
    Poly2 coeff_y; // coefficient of d/dy
    bool saturated = true;

    VectorFieldGerm(Poly2 a, Poly2 b, bool sat = true)
        : coeff_x(std::move(a)), coeff_y(std::move(b)), saturated(sat) {
        if (coeff_x.is_zero() && coeff_y.is_zero())
            throw precondition_error("VectorFieldGerm: zero vector field");
    }

    bool singular_at_origin() const {
        return coeff_x.eval00().is_zero() && coeff_y.eval00().is_zero();
    }

    // Vanishing order of the germ = order of the dual one-form a dy - b dx.
    int order() const {
        int d = INT32_MAX;
        if (!coeff_x.is_zero()) d = std::min(d, coeff_x.order());
        if (!coeff_y.is_zero()) d = std::min(d, coeff_y.order());
        return d;
    }

    // x * b_nu - y * a_nu for the order-nu homogeneous parts; identically
    // zero exactly when the blow-up at the origin is dicritical.
    Poly2 tangent_cone() const {
        int nu = order();
        Poly2 an = coeff_x.is_zero() ? Poly2() : coeff_x.homogeneous_part(nu);
        Poly2 bn = coeff_y.is_zero() ? Poly2() : coeff_y.homogeneous_part(nu);
        return Poly2::x() * bn - Poly2::y() * an;
    }

    friend bool operator==(const VectorFieldGerm& a, const VectorFieldGerm& b) {
        return a.coeff_x == b.coeff_x && a.coeff_y == b.coeff_y;
    }
};

struct LinearPart {
    Mat2 jacobian;
    bool regular_point = false; // germ was not singular at the origin
};

inline LinearPart linear_part(const VectorFieldGerm& g) {
    Mat2 m{g.coeff_x.coefficient(1, 0), g.coeff_x.coefficient(0, 1),
           g.coeff_y.coefficient(1, 0), g.coeff_y.coefficient(0, 1)};
    return LinearPart{m, !g.singular_at_origin()};
}

// Log canonical at the origin iff the linear part is non-nilpotent.
inline bool is_log_canonical_germ(const VectorFieldGerm& g) {
    if (!g.saturated) throw precondition_error("is_log_canonical_germ: germ must be saturated");
    if (!g.singular_at_origin())
        throw precondition_error("is_log_canonical_germ: germ is regular at the origin");
    return !linear_part(g).jacobian.is_nilpotent();
}

enum class Chart { X, Y };

struct BlowUpResult {
    VectorFieldGerm chart_x; // transformed, saturated germ in the x-chart
    VectorFieldGerm chart_y;
    bool exceptional_invariant = true; // iota(E) = 0 iff invariant
    int vanishing_order = 0;           // a(P): order of the dual one-form at the center
    int foliation_discrepancy = 0;     // -(a(P) + iota(E) - 1)
};

inline int iota(bool invariant) { return invariant ? 0 : 1; }

namespace detail {

inline int x_order_or_max(const Poly2& p) { return p.is_zero() ? INT32_MAX : p.x_order(); }
inline int y_order_or_max(const Poly2& p) { return p.is_zero() ? INT32_MAX : p.y_order(); }

} // namespace detail

inline BlowUpResult blow_up(const VectorFieldGerm& g) {
    if (!g.saturated) throw precondition_error("blow_up: germ must be saturated");
    const int nu = g.order();
    const bool dicritical = g.tangent_cone().is_zero();
    const int k = nu + (dicritical ? 1 : 0) - 1;

    // x-chart: du/dt = a(u,uv), dv/dt = (b(u,uv) - v a(u,uv)) / u, then the
    // pair is scaled by u^-t with t maximal so both stay polynomial.
    Poly2 p = g.coeff_x.subst_x_chart();
    Poly2 q = g.coeff_y.subst_x_chart() - Poly2::y() * p;
    int t = std::min(detail::x_order_or_max(p), detail::x_order_or_max(q) - 1);
    if (t != k) throw std::logic_error("blow_up: saturation order disagrees with tangent cone");
    Poly2 ax = t >= 0 ? p.divide_by_x_power(t) : p.mul_x_power(-t);
    Poly2 bx = q.is_zero() ? Poly2() : q.divide_by_x_power(t + 1);

    // y-chart, symmetric roles: dw/dt = (a(ws,s) - w b(ws,s)) / s, ds/dt = b(ws,s).
    Poly2 p2 = g.coeff_y.subst_y_chart();
    Poly2 q2 = g.coeff_x.subst_y_chart() - Poly2::x() * p2;
    int t2 = std::min(detail::y_order_or_max(p2), detail::y_order_or_max(q2) - 1);
    if (t2 != k) throw std::logic_error("blow_up: chart saturation orders disagree");
    Poly2 aw = q2.is_zero() ? Poly2() : q2.divide_by_y_power(t2 + 1);
    Poly2 bs = t2 >= 0 ? p2.divide_by_y_power(t2) : p2.mul_y_power(-t2);

    BlowUpResult r{
        VectorFieldGerm(ax, bx, g.saturated),
        VectorFieldGerm(aw, bs, g.saturated), // variables (w, s); E = {s = 0}
        !dicritical,
        nu,
        -(nu + (dicritical ? 1 : 0) - 1),
    };

    // Consistency: E = {u=0} is invariant iff u divides the du-component.
    bool inv_x = r.chart_x.coeff_x.is_zero() || r.chart_x.coeff_x.x_order() >= 1;
    bool inv_y = r.chart_y.coeff_y.is_zero() || r.chart_y.coeff_y.y_order() >= 1;
    if (inv_x != !dicritical || inv_y != !dicritical)
        throw std::logic_error("blow_up: chart invariance flags disagree");
    return r;
}

// Order of vanishing along E of the pulled-back dual one-form (the l(P)
// used to express the blow-up discrepancy as -(l(P)-1)). Computed from the
// x-chart pullback  pi^* (a dy - b dx) = -q du + u p dv.
inline int one_form_exceptional_order(const VectorFieldGerm& g) {
    Poly2 p = g.coeff_x.subst_x_chart();
    Poly2 q = g.coeff_y.subst_x_chart() - Poly2::y() * p;
    int l = INT32_MAX;
    if (!q.is_zero()) l = std::min(l, q.x_order());
    if (!p.is_zero()) l = std::min(l, p.x_order() + 1);
    return l;
}

struct ExceptionalSingularPoint {
    Chart chart;      // points with chart X coordinate t, or the y-chart origin
    Rational coord;   // t for chart X; always 0 for chart Y
    int multiplicity; // multiplicity as a root of the restricted common factor
};

// Locus of singular points with no rational coordinate, kept as squarefree
// factors of the restricted polynomial. Each factor of degree d stands for d
// distinct points; germ continuation there is refused.
struct ResidualSingularLocus {
    Poly1 factor;
    int multiplicity;
};

struct ExceptionalSingularities {
    std::vector<ExceptionalSingularPoint> points;
    std::vector<ResidualSingularLocus> residual;
};

inline ExceptionalSingularities singular_points_on_exceptional(const BlowUpResult& r) {
    ExceptionalSingularities out;
    Poly1 a0 = r.chart_x.coeff_x.restrict_x0();
    Poly1 b0 = r.chart_x.coeff_y.restrict_x0();
    if (a0.is_zero() && b0.is_zero())
        throw non_isolated_error("singular locus contains the exceptional divisor (unsaturated input?)");

    Poly1 common;
    if (a0.is_zero())
        common = b0.monic();
    else if (b0.is_zero())
        common = a0.monic();
    else
        common = Poly1::gcd(a0, b0);

    if (!common.is_zero() && common.degree() > 0) {
        auto roots = common.rational_roots();
        for (const auto& [t, m] : roots.roots)
            out.points.push_back({Chart::X, t, m});
        if (!roots.cofactor.is_zero() && roots.cofactor.degree() > 0)
            for (const auto& [f, m] : roots.cofactor.squarefree_decomposition())
                out.residual.push_back(ResidualSingularLocus{f, m});
    }

    // The one point of E not visible in the x-chart.
    if (r.chart_y.singular_at_origin()) out.points.push_back({Chart::Y, Rational(0), 1});

    return out;
}

// Local germ at a singular point of E, translated to the chart origin.
inline VectorFieldGerm germ_at(const BlowUpResult& r, Chart chart, const Rational& t) {
    if (chart == Chart::Y) {
        if (!t.is_zero())
            throw precondition_error("germ_at: y-chart points other than the origin are x-chart points");
        return r.chart_y;
    }
    if (t.is_zero()) return r.chart_x;
    return VectorFieldGerm(r.chart_x.coeff_x.translate_y(t), r.chart_x.coeff_y.translate_y(t),
                           r.chart_x.saturated);
}

// Coordinate change (x, y) = M (x', y'): the component pair transforms by
// M^-1 composed with the substitution.
inline VectorFieldGerm change_coordinates(const VectorFieldGerm& g, const Mat2& m) {
    Rational det = m.det();
    if (det.is_zero()) throw precondition_error("change_coordinates: singular matrix");
    Poly2 nx = Poly2::x() * m.a + Poly2::y() * m.b;
    Poly2 ny = Poly2::x() * m.c + Poly2::y() * m.d;
    Poly2 ac = g.coeff_x.compose(nx, ny);
    Poly2 bc = g.coeff_y.compose(nx, ny);
    Rational inv = Rational(1) / det;
    Poly2 na = (ac * m.d - bc * m.b) * inv;
    Poly2 nb = (bc * m.a - ac * m.c) * inv;
    return VectorFieldGerm(na, nb, g.saturated);
}

} // namespace folmmp
