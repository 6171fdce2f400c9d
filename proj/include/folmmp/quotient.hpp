#pragma once

// Cyclic quotient singularities 1/m(1,b) carrying the foliation descended
// from d/dx upstairs, their Hirzebruch-Jung resolutions with both
// discrepancy ledgers, the adjoint threshold of the quotient family, the
// foliated Riemann-Hurwitz pullback for finite covers, and the finite
// eigenvalue set Lambda(eps') of strictly log canonical pairs failing
// eps'-adjoint canonicity.
//
// The ledger computation runs on the toric resolution: with rays
// u_0 = (0,1), u_1 = (1,0), u_{i+1} = c_i u_i - u_{i-1} (ending at (m,-b)),
// the divisor u_0 is the invariant central leaf and u_{r+1} the transverse
// image of {x=0}. The descended fibration is singular exactly at the chain
// corners except the one on the transverse end, which pins the adjunction
// right-hand side d = (0, ..., 0, -1).

#include "folmmp/contfrac.hpp"
#include "folmmp/germ.hpp"
#include "folmmp/linalg.hpp"
#include "folmmp/restree.hpp"

#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace folmmp {

// ---------------------------------------------------------------------------
// Eigenvalue enumeration
// ---------------------------------------------------------------------------

struct EigenvaluePair {
    long long p = 1, q = 1; // coprime, normalized p >= q >= 1
    friend auto operator<=>(const EigenvaluePair&, const EigenvaluePair&) = default;
};

// All coprime pairs whose continued fraction digit sum is at most 1/eps'.
// Enumerated through canonical digit lists, so each pair appears once.
inline std::set<EigenvaluePair> eigenvalue_set(const Rational& eps_prime) {
    if (eps_prime.sign() <= 0) throw precondition_error("eigenvalue_set: eps' must be positive");
    BigInt cap = (Rational(1) / eps_prime).floor();
    // |Lambda| grows like 2^(1/eps'); refuse hopeless enumerations early.
    if (cap > 20) throw precondition_error("eigenvalue_set: digit-sum bound above 20 not supported");
    long long budget = (long long)cap;

    std::set<EigenvaluePair> out;
    std::vector<long long> digits;
    // depth-first over canonical digit lists with sum <= budget
    auto emit = [&]() {
        Rational v = evaluate_continued_fraction({digits});
        out.insert({(long long)v.num(), (long long)v.den()});
    };
    auto rec = [&](auto&& self, long long remaining) -> void {
        if (!digits.empty() && (digits.size() == 1 || digits.back() >= 2)) emit();
        for (long long u = 1; u <= remaining; ++u) {
            digits.push_back(u);
            self(self, remaining - u);
            digits.pop_back();
        }
    };
    rec(rec, budget);
    return out;
}

// ---------------------------------------------------------------------------
// Quotient germs and their resolution
// ---------------------------------------------------------------------------

struct CyclicQuotientGerm {
    long long m = 2, b = 1; // action (x, y) -> (zeta x, zeta^b y), gcd(m, b) = 1
    VectorFieldGerm upstairs;

    CyclicQuotientGerm(long long m_, long long b_, VectorFieldGerm up)
        : m(m_), b(b_), upstairs(std::move(up)) {
        if (m < 2 || b < 1 || b >= m) throw precondition_error("CyclicQuotientGerm: requires 1 <= b < m, m >= 2");
        if (std::gcd(m, b) != 1) throw precondition_error("CyclicQuotientGerm: m, b must be coprime");
        if (!equivariant())
            throw precondition_error("CyclicQuotientGerm: upstairs germ is not equivariant");
    }

    static CyclicQuotientGerm standard(long long m, long long b) {
        return CyclicQuotientGerm(m, b, VectorFieldGerm(Poly2(Rational(1)), Poly2()));
    }

    // The germ descends iff both coefficient functions transform with one
    // common character: weight(x^i y^j d/dx) = i - 1 + b j, and
    // weight(x^i y^j d/dy) = i + b (j - 1), all congruent mod m.
    bool equivariant() const {
        std::optional<long long> w;
        auto check = [&](const Poly2& p, long long shift) {
            for (const auto& [k, c] : p.terms()) {
                long long wt = ((k.first + b * (long long)k.second + shift) % m + m) % m;
                if (!w)
                    w = wt;
                else if (*w != wt)
                    return false;
            }
            return true;
        };
        return check(upstairs.coeff_x, -1) && check(upstairs.coeff_y, -b);
    }

    bool is_standard_fibration() const {
        return upstairs.coeff_y.is_zero() && !upstairs.coeff_x.is_zero() &&
               upstairs.coeff_x.total_degree() == 0;
    }
};

struct QuotientChainDivisor {
    long long c = 2;   // self-intersection -c
    bool invariant = true;
    Rational a_fol;
    Rational a_var;
};

struct QuotientResolution {
    long long m = 2, b = 1;
    std::vector<QuotientChainDivisor> chain; // ordered from the invariant-leaf end
    std::vector<Rational> adjunction_rhs;    // d_j = deg K restricted, foliation side
};

namespace detail {

inline MatQ chain_intersection_matrix(const std::vector<long long>& c) {
    size_t r = c.size();
    MatQ mat(r, std::vector<Rational>(r, Rational(0)));
    for (size_t i = 0; i < r; ++i) {
        mat[i][i] = Rational(-c[i]);
        if (i + 1 < r) {
            mat[i][i + 1] = Rational(1);
            mat[i + 1][i] = Rational(1);
        }
    }
    return mat;
}

} // namespace detail

// Fan rays of the resolved quotient in the basis where the lattice is Z^2:
// returns u_0 .. u_{r+1} and checks the recursion closes at (m, -b).
inline std::vector<std::pair<long long, long long>> quotient_fan_rays(long long m, long long b) {
    auto c = hirzebruch_jung(m, b);
    std::vector<std::pair<long long, long long>> rays{{0, 1}, {1, 0}};
    for (size_t i = 0; i < c.size(); ++i) {
        auto [px, py] = rays[rays.size() - 2];
        auto [qx, qy] = rays.back();
        rays.emplace_back(c[i] * qx - px, c[i] * qy - py);
    }
    if (rays.back() != std::make_pair(m, -b))
        throw std::logic_error("quotient_fan_rays: recursion did not close at (m, -b)");
    return rays;
}

inline QuotientResolution quotient_resolution(const CyclicQuotientGerm& g) {
    if (!g.is_standard_fibration())
        throw precondition_error(
            "quotient_resolution: only the transverse fibration germ d/dx is supported");
    auto c = hirzebruch_jung(g.m, g.b);
    quotient_fan_rays(g.m, g.b); // sanity: the chain matches the lattice data
    size_t r = c.size();
    MatQ mat = detail::chain_intersection_matrix(c);

    std::vector<Rational> rhs_var(r);
    for (size_t i = 0; i < r; ++i) rhs_var[i] = Rational(c[i] - 2);
    std::vector<Rational> a_var = solve_linear(mat, rhs_var);

    // The descended fibration is singular at every chain corner except the
    // one adjacent to the transverse end, so deg K_G restricted to E_j is
    // -2 + 2 in the interior and -2 + 1 at the last divisor.
    std::vector<Rational> d(r, Rational(0));
    d[r - 1] = Rational(-1);
    std::vector<Rational> a_fol = solve_linear(mat, d);

    QuotientResolution out;
    out.m = g.m;
    out.b = g.b;
    out.adjunction_rhs = d;
    for (size_t i = 0; i < r; ++i) out.chain.push_back({c[i], true, a_fol[i], a_var[i]});
    return out;
}

// Supremum of eps with a_fol + eps a_var >= 0 on every chain divisor
// (the delta = 1 criterion). Divisors with a_var >= 0 never constrain.
struct QuotientThreshold {
    std::optional<Rational> value; // empty = unbounded
    long long witness_divisor = -1;
};

inline QuotientThreshold quotient_adjoint_threshold(long long m, long long b) {
    if (m <= 2) throw precondition_error("quotient_adjoint_threshold: requires m >= 3");
    auto res = quotient_resolution(CyclicQuotientGerm::standard(m, b));
    QuotientThreshold out;
    for (size_t i = 0; i < res.chain.size(); ++i) {
        const auto& d = res.chain[i];
        if (d.a_var.sign() >= 0) continue;
        Rational t = d.a_fol / (-d.a_var);
        if (!out.value || t < *out.value) {
            out.value = t;
            out.witness_divisor = (long long)i;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Foliated Riemann-Hurwitz pullback
// ---------------------------------------------------------------------------

struct CoverDivisor {
    std::string name;
    bool invariant = false;
    Rational coefficient; // coefficient in K_{(X,F,Delta),eps} downstairs
};

struct RamificationDatum {
    std::string name;
    long long ramification = 1;
    bool invariant = false;
};

// K_{(Y,G,sigma^*Delta),eps} = sigma^* K_{(X,F,Delta),eps}
//                              + sum (r_D - 1)(iota(D) + eps) D
inline std::vector<CoverDivisor> rh_pullback(const std::vector<CoverDivisor>& downstairs,
                                             const std::vector<RamificationDatum>& ramification,
                                             const Rational& epsilon) {
    std::vector<CoverDivisor> up = downstairs;
    for (const auto& ram : ramification) {
        if (ram.ramification < 1)
            throw precondition_error("rh_pullback: ramification indices must be >= 1");
        auto it = std::find_if(up.begin(), up.end(),
                               [&](const CoverDivisor& d) { return d.name == ram.name; });
        if (it == up.end()) {
            up.push_back({ram.name, ram.invariant, Rational(0)});
            it = up.end() - 1;
        } else if (it->invariant != ram.invariant) {
            throw precondition_error("rh_pullback: inconsistent invariance flags for divisor '" +
                                     ram.name + "'");
        }
        Rational r(ram.ramification);
        it->coefficient = r * it->coefficient +
                          (r - Rational(1)) * (Rational(iota(ram.invariant)) + epsilon);
    }
    return up;
}

} // namespace folmmp
