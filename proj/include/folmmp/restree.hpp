#pragma once

// Blow-up trees over a germ: Seidenberg reduction, the double ledger of
// foliation and variety discrepancies, singularity classification, and the
// bounded-search decision procedure for (epsilon, delta)-adjoint log
// canonicity.
//
// Discrepancies of a divisor created by blowing up a point P follow the
// pullback recursion: the local blow-up contribution plus the totals of
// every existing divisor through P. Boundary components enter both ledgers
// through the order of vanishing of their pulled-back equations.

#include "folmmp/germ.hpp"
#include "folmmp/polynomial.hpp"
#include "folmmp/rational.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace folmmp {

class depth_exceeded_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Continuation at a singular point without rational coordinates.
class irrational_point_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

enum class SingKind { Terminal, Canonical, StrictlyLogCanonical, NotLogCanonical, Unknown };

struct SingularityClass {
    SingKind kind = SingKind::Unknown;
    // For strictly log canonical points: the coprime positive eigenvalue pair.
    std::optional<std::pair<long long, long long>> eigenvalue_pair;
    bool saddle_node = false;
    std::string note;
};

// A singular point is reduced (simple) when the linear part is non-nilpotent
// and the eigenvalue ratio is not a positive rational; saddle-nodes qualify.
inline bool is_reduced_singularity(const VectorFieldGerm& g) {
    LinearPart lp = linear_part(g);
    if (lp.regular_point) return false;
    const Mat2& j = lp.jacobian;
    if (j.is_nilpotent()) return false;
    Rational det = j.det();
    if (det.sign() <= 0) return true; // saddle-node or opposite-sign / imaginary ratio
    Rational tr = j.trace();
    Rational disc = tr * tr - det * Rational(4);
    return !disc.is_square(); // irrational ratio
}

namespace detail {

inline bool exactly_linear_diagonal(const VectorFieldGerm& g) {
    return g.coeff_x == Poly2::monomial(1, 0, g.coeff_x.coefficient(1, 0)) &&
           g.coeff_y == Poly2::monomial(0, 1, g.coeff_y.coefficient(0, 1)) &&
           !g.coeff_x.coefficient(1, 0).is_zero() && !g.coeff_y.coefficient(0, 1).is_zero();
}

// Primitive positive integer pair proportional to {l1, l2}, reported in
// ascending order (the generator is only defined up to scaling, and the
// coordinates up to swapping).
inline std::pair<long long, long long> primitive_pair(Rational l1, Rational l2) {
    if (l1.sign() < 0) {
        l1 = -l1;
        l2 = -l2;
    }
    BigInt n1 = l1.num() * l2.den(), n2 = l2.num() * l1.den();
    BigInt g = boost::multiprecision::gcd(n1, n2);
    n1 /= g;
    n2 /= g;
    if (n1 > n2) std::swap(n1, n2);
    return {(long long)n1, (long long)n2};
}

} // namespace detail

inline SingularityClass classify(const VectorFieldGerm& g) {
    if (!g.saturated) throw precondition_error("classify: germ must be saturated");
    SingularityClass out;
    LinearPart lp = linear_part(g);
    if (lp.regular_point) {
        out.kind = SingKind::Terminal;
        return out;
    }
    const Mat2& j = lp.jacobian;
    if (j.is_nilpotent()) {
        out.kind = SingKind::NotLogCanonical;
        return out;
    }
    Rational det = j.det(), tr = j.trace();
    if (det.is_zero()) {
        out.kind = SingKind::Canonical;
        out.saddle_node = true;
        return out;
    }
    if (is_reduced_singularity(g)) {
        out.kind = SingKind::Canonical;
        return out;
    }

    // Positive rational eigenvalue ratio from here on.
    Rational disc = tr * tr - det * Rational(4);
    Rational s = disc.sqrt();
    Rational l1 = (tr - s) / Rational(2), l2 = (tr + s) / Rational(2);
    auto pair = detail::primitive_pair(l1, l2);

    if (l1 == l2) {
        // Ratio one: diagonalizable means scalar, and scalar linear parts are
        // free of resonances, so any tail linearizes away.
        bool scalar = j.b.is_zero() && j.c.is_zero() && j.a == j.d;
        if (scalar) {
            out.kind = SingKind::StrictlyLogCanonical;
            out.eigenvalue_pair = {1, 1};
        } else {
            out.kind = SingKind::Unknown;
            out.note = "non-diagonalizable resonant linear part";
        }
        return out;
    }

    // Distinct rational eigenvalues: diagonalize over Q.
    auto eigvec = [&](const Rational& l) -> std::pair<Rational, Rational> {
        if (!j.b.is_zero()) return {j.b, l - j.a};
        if (!j.c.is_zero()) return {l - j.d, j.c};
        return j.a == l ? std::make_pair(Rational(1), Rational(0))
                        : std::make_pair(Rational(0), Rational(1));
    };
    auto v1 = eigvec(l1), v2 = eigvec(l2);
    Mat2 m{v1.first, v2.first, v1.second, v2.second};
    VectorFieldGerm d = change_coordinates(g, m);

    if (detail::exactly_linear_diagonal(d)) {
        out.kind = SingKind::StrictlyLogCanonical;
        out.eigenvalue_pair = detail::primitive_pair(d.coeff_x.coefficient(1, 0),
                                                     d.coeff_y.coefficient(0, 1));
        return out;
    }
    // Eigenvalue pair with both entries >= 2 admits no resonances, so the
    // higher-order tail is removable.
    if (pair.first >= 2 && pair.second >= 2) {
        out.kind = SingKind::StrictlyLogCanonical;
        out.eigenvalue_pair = pair;
        return out;
    }
    out.kind = SingKind::Unknown;
    out.note = "resonant eigenvalue pair with nonlinear tail";
    return out;
}

// ---------------------------------------------------------------------------
// Resolution trees
// ---------------------------------------------------------------------------

struct AdjointParams {
    Rational epsilon;
    Rational delta;
    int search_depth = 8;
};

struct GermBoundaryComponent {
    std::string name;
    Poly2 equation;      // reduced local equation through the origin
    Rational coefficient; // in [0, 1]
    bool invariant = false;
};
using GermBoundary = std::vector<GermBoundaryComponent>;

enum class LeafKind { NotLeaf, Regular, Reduced, DepthCapped };

struct TreeDivisor {
    int id = -1;
    bool invariant = true;
    Rational a_fol; // a(E, F, Delta), total over the root germ
    Rational a_var; // a(E, X, Delta)
    int self_intersection = -1;
    int depth = 1;              // blow-ups from the root when E was created
    int node = -1;              // node whose blow-up created E
    std::vector<Rational> boundary_mult; // mu_E(C) per boundary component
};

struct TreeNode {
    int id = 0;
    int parent = -1;
    Chart chart = Chart::X; // position on the parent divisor
    Rational coord;
    int depth = 0;
    VectorFieldGerm germ;
    std::optional<int> axis_x; // divisor with local equation {x = 0}
    std::optional<int> axis_y;
    std::vector<std::pair<int, Poly2>> boundary; // strict transforms through this point
    int created_divisor = -1;
    std::vector<int> children;
    LeafKind leaf = LeafKind::NotLeaf;
    bool residual_singularities = false; // singular points without rational coordinates
    bool boundary_residual_ok = true;    // irrational boundary crossings are simple

    TreeNode(int id_, VectorFieldGerm g) : id(id_), germ(std::move(g)) {}
};

struct ResolutionTree {
    VectorFieldGerm root_germ;
    GermBoundary boundary;
    std::vector<TreeNode> nodes;
    std::vector<TreeDivisor> divisors;
    std::vector<std::pair<int, int>> divisor_crossings; // unordered pairs that meet
    bool complete = false; // every leaf is Regular/Reduced, no residual blockers
    int blow_up_count() const { return (int)divisors.size(); }
};

struct PathStep {
    Chart chart;
    Rational coord;
};

struct Refutation {
    std::vector<PathStep> path; // centers from the root, in order
    int divisor_id = -1;
    Rational adjoint_coefficient; // a_fol + eps a_var of the witness divisor
    Rational bound;               // (iota + eps)(-1 + delta)
};

struct Certified {};
struct Inconclusive {
    std::string reason;
};
using AdjointOutcome = std::variant<Certified, Refutation, Inconclusive>;

namespace detail {

struct BuildConfig {
    int max_depth = 8;
    bool stop_on_violation = false;
    Rational epsilon;
    Rational delta;
};

// Leaf admissibility for a node whose germ is already regular or reduced:
// boundary branches smooth, at most two pairwise transverse branches, and no
// non-invariant branch through a singular point.
inline bool leaf_position_ok(const ResolutionTree& t, const TreeNode& n, bool singular) {
    int branches = (n.axis_x ? 1 : 0) + (n.axis_y ? 1 : 0) + (int)n.boundary.size();
    if (branches > 2) return false;
    std::vector<std::pair<Rational, Rational>> tangents; // linear parts (ex, ey)
    if (n.axis_x) tangents.emplace_back(Rational(1), Rational(0));
    if (n.axis_y) tangents.emplace_back(Rational(0), Rational(1));
    for (const auto& [ci, eq] : n.boundary) {
        if (eq.is_zero() || eq.order() != 1) return false; // singular or non-reduced branch
        tangents.emplace_back(eq.coefficient(1, 0), eq.coefficient(0, 1));
    }
    for (size_t i = 0; i < tangents.size(); ++i)
        for (size_t j = i + 1; j < tangents.size(); ++j) {
            Rational cross = tangents[i].first * tangents[j].second -
                             tangents[i].second * tangents[j].first;
            if (cross.is_zero()) return false; // tangential branches
        }
    if (singular) {
        if (n.axis_x && !t.divisors[*n.axis_x].invariant) return false;
        if (n.axis_y && !t.divisors[*n.axis_y].invariant) return false;
        for (const auto& [ci, eq] : n.boundary)
            if (!t.boundary[ci].invariant) return false;
    }
    return true;
}

} // namespace detail

// Builds the blow-up tree bottom-up in breadth-first order; children of a
// node are ordered x-chart points by coordinate, then the y-chart origin.
// With stop_on_violation set, stops at the shallowest divisor violating the
// adjoint inequality and reports it through the returned refutation.
inline std::pair<ResolutionTree, std::optional<Refutation>>
build_resolution_tree(const VectorFieldGerm& germ, const GermBoundary& boundary,
                      const detail::BuildConfig& cfg) {
    if (!germ.saturated) throw precondition_error("resolution tree: germ must be saturated");
    ResolutionTree t{germ, boundary, {}, {}, {}, false};

    TreeNode root(0, germ);
    for (size_t i = 0; i < boundary.size(); ++i) {
        const Poly2& eq = boundary[i].equation;
        if (eq.is_zero()) throw precondition_error("boundary component with zero equation");
        if (eq.eval00().is_zero()) root.boundary.emplace_back((int)i, eq);
    }
    t.nodes.push_back(root);

    std::deque<int> queue{0};
    bool all_leaves_fine = true;

    while (!queue.empty()) {
        int ni = queue.front();
        queue.pop_front();

        bool singular = t.nodes[ni].germ.singular_at_origin();
        bool settled = !singular || is_reduced_singularity(t.nodes[ni].germ);
        if (settled && detail::leaf_position_ok(t, t.nodes[ni], singular)) {
            t.nodes[ni].leaf = singular ? LeafKind::Reduced : LeafKind::Regular;
            continue;
        }
        if (t.nodes[ni].depth >= cfg.max_depth) {
            t.nodes[ni].leaf = LeafKind::DepthCapped;
            all_leaves_fine = false;
            continue;
        }

        // Blow up this node.
        BlowUpResult bu = blow_up(t.nodes[ni].germ);
        TreeDivisor div;
        div.id = (int)t.divisors.size();
        div.invariant = bu.exceptional_invariant;
        div.depth = t.nodes[ni].depth + 1;
        div.node = ni;
        div.self_intersection = -1;

        // Pullback recursion over the divisors through the center. Incident
        // totals already carry their boundary corrections, so only the local
        // multiplicity at the center is subtracted here.
        Rational afol(bu.foliation_discrepancy), avar(1);
        std::vector<Rational> local_mult(boundary.size(), Rational(0));
        for (const auto& [bi, eq] : t.nodes[ni].boundary) local_mult[bi] += Rational(eq.order());
        for (size_t ci = 0; ci < boundary.size(); ++ci) {
            Rational corr = boundary[ci].coefficient * local_mult[ci];
            if (!boundary[ci].invariant) afol -= corr;
            avar -= corr;
        }
        div.boundary_mult = local_mult;
        std::vector<int> incident;
        if (t.nodes[ni].axis_x) incident.push_back(*t.nodes[ni].axis_x);
        if (t.nodes[ni].axis_y) incident.push_back(*t.nodes[ni].axis_y);
        for (int di : incident) {
            afol += t.divisors[di].a_fol;
            avar += t.divisors[di].a_var;
            for (size_t ci = 0; ci < boundary.size(); ++ci)
                div.boundary_mult[ci] += t.divisors[di].boundary_mult[ci];
            t.divisors[di].self_intersection -= 1;
        }
        div.a_fol = afol;
        div.a_var = avar;

        // Crossing bookkeeping. The new divisor meets everything through the
        // center; divisors that crossed each other at the center separate.
        for (int di : incident) t.divisor_crossings.emplace_back(di, div.id);
        if (incident.size() == 2) {
            auto& xs = t.divisor_crossings;
            xs.erase(std::remove(xs.begin(), xs.end(), std::make_pair(incident[0], incident[1])),
                     xs.end());
            xs.erase(std::remove(xs.begin(), xs.end(), std::make_pair(incident[1], incident[0])),
                     xs.end());
        }

        t.divisors.push_back(div);
        t.nodes[ni].created_divisor = div.id;

        if (cfg.stop_on_violation) {
            int io = iota(div.invariant);
            Rational coeff = div.a_fol + cfg.epsilon * div.a_var;
            Rational bound = (Rational(io) + cfg.epsilon) * (Rational(-1) + cfg.delta);
            if (coeff < bound) {
                Refutation ref;
                ref.divisor_id = div.id;
                ref.adjoint_coefficient = coeff;
                ref.bound = bound;
                // Centers after the first blow-up, leading to the node that
                // created the witness divisor.
                int cur = ni;
                while (cur > 0) {
                    ref.path.push_back({t.nodes[cur].chart, t.nodes[cur].coord});
                    cur = t.nodes[cur].parent;
                }
                std::reverse(ref.path.begin(), ref.path.end());
                return {std::move(t), ref};
            }
        }

        // Child points: singular points of the transformed germ plus the
        // crossings of boundary strict transforms with E.
        struct ChildPoint {
            Chart chart;
            Rational coord;
        };
        std::vector<ChildPoint> pts;
        auto add_point = [&](Chart c, const Rational& v) {
            for (const auto& p : pts)
                if (p.chart == c && p.coord == v) return;
            pts.push_back({c, v});
        };

        ExceptionalSingularities sing = singular_points_on_exceptional(bu);
        for (const auto& sp : sing.points) add_point(sp.chart, sp.coord);
        if (!sing.residual.empty()) {
            t.nodes[ni].residual_singularities = true;
            all_leaves_fine = false;
        }

        // Boundary strict transforms in both charts.
        std::vector<std::pair<int, Poly2>> bnd_x, bnd_y;
        Poly1 germ_restriction_common; // for residual-crossing sanity below
        {
            Poly1 a0 = bu.chart_x.coeff_x.restrict_x0();
            Poly1 b0 = bu.chart_x.coeff_y.restrict_x0();
            if (a0.is_zero())
                germ_restriction_common = b0;
            else if (b0.is_zero())
                germ_restriction_common = a0;
            else
                germ_restriction_common = Poly1::gcd(a0, b0);
        }
        for (const auto& [ci, eq] : t.nodes[ni].boundary) {
            int m = eq.order();
            Poly2 ex = eq.subst_x_chart().divide_by_x_power(m);
            Poly2 ey = eq.subst_y_chart().divide_by_y_power(m);
            bnd_x.emplace_back(ci, ex);
            bnd_y.emplace_back(ci, ey);
            Poly1 r0 = ex.restrict_x0();
            if (!r0.is_zero() && r0.degree() > 0) {
                auto rr = r0.rational_roots();
                for (const auto& [v, mult] : rr.roots) add_point(Chart::X, v);
                if (!rr.cofactor.is_zero() && rr.cofactor.degree() > 0) {
                    // Irrational crossings must be simple and away from
                    // irrational singular points, else we cannot certify.
                    for (const auto& [f, mult] : rr.cofactor.squarefree_decomposition()) {
                        if (mult > 1) t.nodes[ni].boundary_residual_ok = false;
                    }
                    if (!germ_restriction_common.is_zero() && germ_restriction_common.degree() > 0 &&
                        Poly1::gcd(rr.cofactor, germ_restriction_common).degree() > 0)
                        t.nodes[ni].boundary_residual_ok = false;
                    if (!t.nodes[ni].boundary_residual_ok) all_leaves_fine = false;
                }
            } else if (r0.is_zero()) {
                throw std::logic_error("boundary strict transform contains E");
            }
            if (ey.eval00().is_zero()) add_point(Chart::Y, Rational(0));
        }

        std::sort(pts.begin(), pts.end(), [](const ChildPoint& a, const ChildPoint& b) {
            if (a.chart != b.chart) return a.chart == Chart::X;
            return a.coord < b.coord;
        });

        for (const auto& p : pts) {
            TreeNode child((int)t.nodes.size(), germ_at(bu, p.chart, p.coord));
            child.parent = ni;
            child.chart = p.chart;
            child.coord = p.coord;
            child.depth = t.nodes[ni].depth + 1;
            if (p.chart == Chart::X) {
                child.axis_x = div.id;
                if (p.coord.is_zero()) child.axis_y = t.nodes[ni].axis_y;
                for (const auto& [ci, ex] : bnd_x) {
                    Poly2 moved = ex.translate_y(p.coord);
                    if (moved.eval00().is_zero()) child.boundary.emplace_back(ci, moved);
                }
            } else {
                child.axis_y = div.id;
                child.axis_x = t.nodes[ni].axis_x;
                for (const auto& [ci, ey] : bnd_y)
                    if (ey.eval00().is_zero()) child.boundary.emplace_back(ci, ey);
            }
            t.nodes[ni].children.push_back(child.id);
            t.nodes.push_back(child);
            queue.push_back(child.id);
        }
    }

    t.complete = all_leaves_fine;
    for (const auto& n : t.nodes)
        if (n.leaf == LeafKind::DepthCapped || n.residual_singularities || !n.boundary_residual_ok)
            t.complete = false;
    return {std::move(t), std::nullopt};
}

// Full reduction of the germ: every leaf carries a reduced singularity or a
// regular point. Throws depth_exceeded_error / irrational_point_error when
// the bounded search cannot finish.
inline ResolutionTree seidenberg_reduce(const VectorFieldGerm& g, int max_depth,
                                        const GermBoundary& boundary = {}) {
    if (!g.singular_at_origin())
        throw precondition_error("seidenberg_reduce: germ is regular at the origin");
    detail::BuildConfig cfg;
    cfg.max_depth = max_depth;
    auto [tree, ref] = build_resolution_tree(g, boundary, cfg);
    for (const auto& n : tree.nodes) {
        if (n.residual_singularities)
            throw irrational_point_error(
                "reduction reached singular points without rational coordinates");
        if (n.leaf == LeafKind::DepthCapped)
            throw depth_exceeded_error("reduction did not terminate within depth " +
                                       std::to_string(max_depth));
    }
    return std::move(tree);
}

// ---------------------------------------------------------------------------
// (epsilon, delta)-adjoint log canonicity
// ---------------------------------------------------------------------------

namespace detail {

// Sufficient conditions under which no divisor beyond a complete reduction
// tree can violate the adjoint bound: every in-tree divisor satisfies it,
// boundary coefficients stay <= 1 - delta, and each crossing of two
// non-invariant objects passes the explicit corner inequality.
inline std::optional<std::string> closure_obstruction(const ResolutionTree& t,
                                                      const Rational& eps,
                                                      const Rational& delta) {
    for (const auto& c : t.boundary)
        if (c.coefficient > Rational(1) - delta)
            return "boundary coefficient " + c.coefficient.str() + " exceeds 1 - delta";

    auto s_div = [&](const TreeDivisor& d) { return d.a_fol + eps * d.a_var; };
    Rational t_new = (Rational(0) + eps) * (Rational(-1) + delta); // new divisors are invariant

    for (const auto& [i, j] : t.divisor_crossings) {
        if (t.divisors[i].invariant || t.divisors[j].invariant) continue;
        Rational s = s_div(t.divisors[i]) + s_div(t.divisors[j]) + Rational(1) + eps;
        if (s < t_new) return "crossing of two non-invariant divisors fails the corner bound";
    }
    for (const auto& n : t.nodes) {
        if (n.leaf == LeafKind::NotLeaf) continue;
        std::vector<Rational> ninv_s;
        if (n.axis_x && !t.divisors[*n.axis_x].invariant) ninv_s.push_back(s_div(t.divisors[*n.axis_x]));
        if (n.axis_y && !t.divisors[*n.axis_y].invariant) ninv_s.push_back(s_div(t.divisors[*n.axis_y]));
        for (const auto& [ci, eq] : n.boundary)
            if (!t.boundary[ci].invariant)
                ninv_s.push_back(-t.boundary[ci].coefficient * (Rational(1) + eps));
        if (ninv_s.size() >= 2) {
            Rational s = ninv_s[0] + ninv_s[1] + Rational(1) + eps;
            if (s < t_new) return "crossing of non-invariant branches fails the corner bound";
        }
    }
    return std::nullopt;
}

} // namespace detail

inline AdjointOutcome adjoint_lc_check(const VectorFieldGerm& g, const AdjointParams& params,
                                       const GermBoundary& boundary = {}) {
    if (!g.saturated) throw precondition_error("adjoint_lc_check: germ must be saturated");
    if (params.search_depth < 4)
        throw precondition_error("adjoint_lc_check: search_depth must be at least 4");
    if (params.epsilon.sign() <= 0) throw precondition_error("adjoint_lc_check: epsilon must be positive");
    if (params.delta.sign() < 0 || params.delta > Rational(1))
        throw precondition_error("adjoint_lc_check: delta must lie in [0, 1]");

    if (!g.singular_at_origin() && boundary.empty()) return Certified{};

    detail::BuildConfig cfg;
    cfg.max_depth = params.search_depth;
    cfg.stop_on_violation = true;
    cfg.epsilon = params.epsilon;
    cfg.delta = params.delta;
    auto [tree, ref] = build_resolution_tree(g, boundary, cfg);
    if (ref) return *ref;

    if (!tree.complete) {
        for (const auto& n : tree.nodes)
            if (n.residual_singularities)
                return Inconclusive{"singular points without rational coordinates"};
        return Inconclusive{"reduction exceeded search depth " +
                            std::to_string(params.search_depth)};
    }
    if (auto obstruction = detail::closure_obstruction(tree, params.epsilon, params.delta))
        return Inconclusive{*obstruction};
    return Certified{};
}

// Replays a refutation path blow-up by blow-up and returns the adjoint
// coefficient of the final divisor (tests compare it against the witness).
struct ReplayedWitness {
    Rational a_fol, a_var;
    bool invariant;
    int depth;
};

inline ReplayedWitness replay_refutation(const VectorFieldGerm& g, const GermBoundary& boundary,
                                         const Refutation& ref) {
    detail::BuildConfig cfg;
    cfg.max_depth = (int)ref.path.size() + 1;
    auto [tree, r2] = build_resolution_tree(g, boundary, cfg);
    // walk the path through the stored tree
    int node = 0;
    for (const auto& step : ref.path) {
        int next = -1;
        for (int c : tree.nodes[node].children) {
            const TreeNode& cn = tree.nodes[c];
            if (cn.chart == step.chart && cn.coord == step.coord) next = c;
        }
        if (next < 0) throw precondition_error("replay_refutation: path does not match the tree");
        node = next;
    }
    int div = tree.nodes[node].created_divisor;
    if (div < 0) throw precondition_error("replay_refutation: path ends before a blow-up");
    const TreeDivisor& d = tree.divisors[div];
    return {d.a_fol, d.a_var, d.invariant, d.depth};
}

// Full reduction tree of p x d/dx + q y d/dy. Exactly one exceptional
// divisor is transverse to the transformed foliation (the one created at the
// final radial stage).
inline ResolutionTree strict_lc_resolution(long long p, long long q) {
    if (p < 1 || q < 1) throw precondition_error("strict_lc_resolution: p, q must be positive");
    if (std::gcd(p, q) != 1) throw precondition_error("strict_lc_resolution: p, q must be coprime");
    VectorFieldGerm g(Poly2::monomial(1, 0, Rational(p)), Poly2::monomial(0, 1, Rational(q)));
    return seidenberg_reduce(g, (int)(p + q) + 2);
}

// ---------------------------------------------------------------------------
// Adjoint threshold
// ---------------------------------------------------------------------------

// Onset of certification in epsilon over a smooth ambient point: the checker
// refutes strictly below the returned value and certifies at and above it
// (on the finite tree; the closure argument extends the certificate).
struct ThresholdUnbounded {};   // certifies at every epsilon > 0
struct ThresholdEmpty {};       // no epsilon > 0 certifies at this delta
using ThresholdResult = std::variant<Rational, ThresholdUnbounded, ThresholdEmpty, Inconclusive>;

inline ThresholdResult adjoint_threshold(const VectorFieldGerm& g, const Rational& delta,
                                         int depth, const GermBoundary& boundary = {}) {
    detail::BuildConfig cfg;
    cfg.max_depth = depth;
    auto [tree, ref] = build_resolution_tree(g, boundary, cfg);
    if (!tree.complete) return Inconclusive{"reduction incomplete at depth " + std::to_string(depth)};
    for (const auto& c : boundary)
        if (c.coefficient > Rational(1) - delta) return Inconclusive{"boundary coefficient exceeds 1 - delta"};
    // Corner inequalities at crossings of non-invariant objects depend on
    // epsilon; refuse a single-onset answer when such crossings exist.
    for (const auto& [i, j] : tree.divisor_crossings)
        if (!tree.divisors[i].invariant && !tree.divisors[j].invariant)
            return Inconclusive{"non-invariant divisors cross"};
    for (const auto& n : tree.nodes) {
        int ninv = 0;
        if (n.leaf == LeafKind::NotLeaf) continue;
        if (n.axis_x && !tree.divisors[*n.axis_x].invariant) ++ninv;
        if (n.axis_y && !tree.divisors[*n.axis_y].invariant) ++ninv;
        for (const auto& [ci, eq] : n.boundary)
            if (!tree.boundary[ci].invariant) ++ninv;
        if (ninv >= 2) return Inconclusive{"non-invariant branches cross"};
    }

    bool has_lower = false, empty = false;
    Rational lower(0);
    std::optional<Rational> upper;
    for (const auto& d : tree.divisors) {
        // a_fol + eps a_var >= (iota + eps)(-1 + delta)
        //   <=>  alpha + eps beta >= 0 with
        Rational alpha = d.a_fol + (Rational(1) - delta) * Rational(iota(d.invariant));
        Rational beta = d.a_var + Rational(1) - delta;
        if (beta.sign() > 0) {
            if (alpha.sign() < 0) {
                Rational lo = -alpha / beta;
                if (!has_lower || lo > lower) lower = lo;
                has_lower = true;
            }
        } else if (beta.is_zero()) {
            if (alpha.sign() < 0) empty = true;
        } else {
            if (alpha.sign() < 0)
                empty = true;
            else {
                Rational up = alpha / (-beta);
                if (!upper || up < *upper) upper = up;
            }
        }
    }
    if (empty || (upper && has_lower && *upper < lower)) return ThresholdEmpty{};
    if (upper) return Inconclusive{"certified range is bounded above; no single onset"};
    if (!has_lower) return ThresholdUnbounded{};
    return lower;
}

// ---------------------------------------------------------------------------
// DOT export
// ---------------------------------------------------------------------------

namespace detail {

inline std::string jet_string(const Poly2& p, int max_degree = 2) {
    if (p.is_zero()) return "0";
    Poly2 jet;
    bool truncated = false;
    for (const auto& [k, c] : p.terms()) {
        if (k.first + k.second <= max_degree)
            jet.set(k.first, k.second, c);
        else
            truncated = true;
    }
    std::string s = jet.is_zero() ? "0" : to_string(jet);
    if (truncated) s += " + ...";
    return s;
}

} // namespace detail

// Graphviz rendering with deterministic node identifiers: point nodes "n<k>",
// divisor nodes "E<k>".
inline std::string to_dot(const ResolutionTree& t) {
    std::ostringstream os;
    os << "digraph resolution {\n";
    os << "  node [fontname=\"monospace\"];\n";
    for (const auto& n : t.nodes) {
        os << "  n" << n.id << " [shape=box,label=\"";
        if (n.id == 0)
            os << "root";
        else
            os << (n.chart == Chart::X ? "x-chart v=" : "y-chart w=") << n.coord.str();
        os << "\\ndx: " << detail::jet_string(n.germ.coeff_x)
           << "\\ndy: " << detail::jet_string(n.germ.coeff_y);
        if (n.leaf == LeafKind::Regular) os << "\\n[regular]";
        if (n.leaf == LeafKind::Reduced) os << "\\n[reduced]";
        if (n.leaf == LeafKind::DepthCapped) os << "\\n[depth capped]";
        if (n.residual_singularities) os << "\\n[irrational points]";
        os << "\"];\n";
    }
    for (const auto& d : t.divisors) {
        os << "  E" << d.id << " [shape=ellipse,label=\"E" << d.id
           << "\\niota=" << iota(d.invariant) << "\\na_fol=" << d.a_fol.str()
           << "\\na_var=" << d.a_var.str() << "\\nself=" << d.self_intersection << "\"];\n";
        os << "  n" << t.divisors[d.id].node << " -> E" << d.id << ";\n";
    }
    for (const auto& n : t.nodes) {
        if (n.parent < 0) continue;
        int div = t.nodes[n.parent].created_divisor;
        os << "  E" << div << " -> n" << n.id << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace folmmp
