#pragma once

// Sparse exact polynomials: Poly1 in one variable, Poly2 in two.
// Zero coefficients are never stored, so degree and vanishing order are
// well-defined for nonzero values. Degree caps are imposed by callers
// (the germ file parser), not here.

#include "folmmp/rational.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace folmmp {

// ---------------------------------------------------------------------------
// Univariate
// ---------------------------------------------------------------------------

struct Poly1RootData;

class Poly1 {
public:
    Poly1() = default;
    explicit Poly1(const Rational& c) {
        if (!c.is_zero()) terms_[0] = c;
    }
    static Poly1 monomial(int k, const Rational& c) {
        Poly1 p;
        if (!c.is_zero()) p.terms_[k] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        if (is_zero()) throw precondition_error("Poly1::degree of zero polynomial");
        return terms_.rbegin()->first;
    }

    Rational coefficient(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational leading() const { return coefficient(degree()); }

    void set(int k, const Rational& c) {
        if (c.is_zero())
            terms_.erase(k);
        else
            terms_[k] = c;
    }

    const std::map<int, Rational>& terms() const { return terms_; }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        Poly1 r = a;
        for (const auto& [k, c] : b.terms_) r.set(k, r.coefficient(k) + c);
        return r;
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        Poly1 r = a;
        for (const auto& [k, c] : b.terms_) r.set(k, r.coefficient(k) - c);
        return r;
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        Poly1 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.set(ka + kb, r.coefficient(ka + kb) + ca * cb);
        return r;
    }
    Poly1 operator*(const Rational& s) const {
        Poly1 r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
        return r;
    }
    friend bool operator==(const Poly1& a, const Poly1& b) { return a.terms_ == b.terms_; }

    Rational eval(const Rational& x) const {
        // Horner over the sparse support.
        Rational acc(0);
        int prev = -1;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (prev >= 0) {
                for (int i = 0; i < prev - it->first; ++i) acc *= x;
            }
            acc += it->second;
            prev = it->first;
        }
        if (prev > 0)
            for (int i = 0; i < prev; ++i) acc *= x;
        return acc;
    }

    Poly1 derivative() const {
        Poly1 r;
        for (const auto& [k, c] : terms_)
            if (k > 0) r.terms_[k - 1] = c * Rational(k);
        return r;
    }

    // Quotient and remainder; exact rational arithmetic.
    static std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b) {
        if (b.is_zero()) throw precondition_error("Poly1: division by zero polynomial");
        Poly1 q, r = a;
        int db = b.degree();
        Rational lb = b.leading();
        while (!r.is_zero() && r.degree() >= db) {
            int k = r.degree() - db;
            Rational c = r.leading() / lb;
            Poly1 t = Poly1::monomial(k, c);
            q = q + t;
            r = r - t * b;
        }
        return {q, r};
    }

    Poly1 monic() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / leading());
    }

    static Poly1 gcd(Poly1 a, Poly1 b) {
        while (!b.is_zero()) {
            auto [q, r] = divmod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.monic();
    }

    // Yun's squarefree decomposition: f = prod_i f_i^i with f_i squarefree,
    // pairwise coprime. Returns (f_i, i) for nonconstant f_i.
    std::vector<std::pair<Poly1, int>> squarefree_decomposition() const;

    // All rational roots with multiplicities, plus the root-free cofactor.
    Poly1RootData rational_roots() const;

private:
    std::map<int, Rational> terms_;
};

struct Poly1RootData {
    std::vector<std::pair<Rational, int>> roots;
    Poly1 cofactor; // no rational roots left; constant iff the poly split completely
};

inline std::vector<std::pair<Poly1, int>> Poly1::squarefree_decomposition() const {
    std::vector<std::pair<Poly1, int>> out;
    if (is_zero() || degree() == 0) return out;
    Poly1 f = monic();
    Poly1 g = gcd(f, f.derivative());
    Poly1 w = divmod(f, g).first;
    int i = 1;
    while (!(w.degree() == 0)) {
        Poly1 y = gcd(w, g);
        Poly1 fac = divmod(w, y).first;
        if (!fac.is_zero() && fac.degree() > 0) out.emplace_back(fac.monic(), i);
        w = y;
        g = divmod(g, y).first;
        ++i;
        if (g.is_zero() || (g.degree() == 0 && w.degree() == 0)) break;
    }
    return out;
}

namespace detail {

// Divisors of |n| via trial division plus a Miller-Rabin check on the
// leftover. Returns nullopt if a composite cofactor resists factoring
// (callers then treat potential roots as unresolved instead of guessing).
inline std::optional<std::vector<BigInt>> divisors(BigInt n) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<BigInt, int>> fac;
    for (BigInt p = 2; p * p <= n && p < 100000; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            fac.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (!boost::multiprecision::miller_rabin_test(n, 32)) return std::nullopt;
        fac.emplace_back(n, 1);
    }
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : fac) {
        size_t sz = divs.size();
        BigInt pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

} // namespace detail

inline Poly1RootData Poly1::rational_roots() const {
    Poly1RootData out;
    if (is_zero()) throw precondition_error("Poly1::rational_roots of zero polynomial");
    Poly1 f = *this;
    // Pull out the root at 0 first.
    int ord0 = f.terms_.begin()->first;
    if (ord0 > 0) {
        out.roots.emplace_back(Rational(0), ord0);
        Poly1 g;
        for (const auto& [k, c] : f.terms_) g.terms_[k - ord0] = c;
        f = g;
    }
    if (f.degree() == 0) {
        out.cofactor = f;
        return out;
    }
    // Clear denominators to a primitive integer polynomial.
    BigInt den = 1;
    for (const auto& [k, c] : f.terms()) den = den / boost::multiprecision::gcd(den, c.den()) * c.den();
    std::map<int, BigInt> zf;
    BigInt content = 0;
    for (const auto& [k, c] : f.terms()) {
        BigInt z = c.num() * (den / c.den());
        zf[k] = z;
        content = boost::multiprecision::gcd(content, z < 0 ? BigInt(-z) : z);
    }
    auto ps = detail::divisors(zf.begin()->second / content);
    auto qs = detail::divisors(zf.rbegin()->second / content);
    if (ps && qs) {
        for (const BigInt& p : *ps) {
            for (const BigInt& q : *qs) {
                for (int s : {1, -1}) {
                    Rational cand(s * p, q);
                    int mult = 0;
                    while (!f.is_zero() && f.degree() > 0 && f.eval(cand).is_zero()) {
                        Poly1 lin = Poly1::monomial(1, Rational(1)) - Poly1(cand);
                        auto [quot, rem] = divmod(f, lin);
                        f = quot;
                        ++mult;
                    }
                    if (mult > 0) out.roots.emplace_back(cand, mult);
                }
            }
        }
    }
    out.cofactor = f;
    return out;
}

// ---------------------------------------------------------------------------
// Bivariate
// ---------------------------------------------------------------------------

class Poly2 {
public:
    using Key = std::pair<int, int>; // (x exponent, y exponent)

    Poly2() = default;
    explicit Poly2(const Rational& c) {
        if (!c.is_zero()) terms_[{0, 0}] = c;
    }
    static Poly2 monomial(int i, int j, const Rational& c) {
        Poly2 p;
        if (!c.is_zero()) p.terms_[{i, j}] = c;
        return p;
    }
    static Poly2 x() { return monomial(1, 0, Rational(1)); }
    static Poly2 y() { return monomial(0, 1, Rational(1)); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rational>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    Rational coefficient(int i, int j) const {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? Rational(0) : it->second;
    }
    void set(int i, int j, const Rational& c) {
        if (c.is_zero())
            terms_.erase({i, j});
        else
            terms_[{i, j}] = c;
    }

    int total_degree() const {
        if (is_zero()) throw precondition_error("Poly2::total_degree of zero polynomial");
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
        return d;
    }

    // Minimal total degree of a term (the vanishing order at the origin).
    int order() const {
        if (is_zero()) throw precondition_error("Poly2::order of zero polynomial");
        int d = INT32_MAX;
        for (const auto& [k, c] : terms_) d = std::min(d, k.first + k.second);
        return d;
    }

    int x_order() const {
        if (is_zero()) throw precondition_error("Poly2::x_order of zero polynomial");
        int d = INT32_MAX;
        for (const auto& [k, c] : terms_) d = std::min(d, k.first);
        return d;
    }
    int y_order() const {
        if (is_zero()) throw precondition_error("Poly2::y_order of zero polynomial");
        int d = INT32_MAX;
        for (const auto& [k, c] : terms_) d = std::min(d, k.second);
        return d;
    }

    Poly2 homogeneous_part(int d) const {
        Poly2 r;
        for (const auto& [k, c] : terms_)
            if (k.first + k.second == d) r.terms_[k] = c;
        return r;
    }

    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [k, c] : b.terms_) r.set(k.first, k.second, r.coefficient(k.first, k.second) + c);
        return r;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) {
        Poly2 r = a;
        for (const auto& [k, c] : b.terms_) r.set(k.first, k.second, r.coefficient(k.first, k.second) - c);
        return r;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                Key k{ka.first + kb.first, ka.second + kb.second};
                r.set(k.first, k.second, r.coefficient(k.first, k.second) + ca * cb);
            }
        return r;
    }
    Poly2 operator*(const Rational& s) const {
        Poly2 r;
        if (s.is_zero()) return r;
        for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
        return r;
    }
    Poly2 operator-() const { return *this * Rational(-1); }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }

    Rational eval(const Rational& x, const Rational& y) const {
        Rational acc(0);
        for (const auto& [k, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < k.first; ++i) t *= x;
            for (int j = 0; j < k.second; ++j) t *= y;
            acc += t;
        }
        return acc;
    }
    Rational eval00() const { return coefficient(0, 0); }

    Poly2 dx() const {
        Poly2 r;
        for (const auto& [k, c] : terms_)
            if (k.first > 0) r.terms_[{k.first - 1, k.second}] = c * Rational(k.first);
        return r;
    }
    Poly2 dy() const {
        Poly2 r;
        for (const auto& [k, c] : terms_)
            if (k.second > 0) r.terms_[{k.first, k.second - 1}] = c * Rational(k.second);
        return r;
    }

    // Blow-up chart substitutions are exponent remaps, no expansion needed.
    // (x, y) -> (x, x*y): x^i y^j -> x^(i+j) y^j
    Poly2 subst_x_chart() const {
        Poly2 r;
        for (const auto& [k, c] : terms_) r.terms_[{k.first + k.second, k.second}] = c;
        return r;
    }
    // (x, y) -> (x*y, y): x^i y^j -> x^i y^(i+j)
    Poly2 subst_y_chart() const {
        Poly2 r;
        for (const auto& [k, c] : terms_) r.terms_[{k.first, k.first + k.second}] = c;
        return r;
    }

    Poly2 divide_by_x_power(int k) const {
        if (k == 0) return *this;
        Poly2 r;
        for (const auto& [key, c] : terms_) {
            if (key.first < k) throw precondition_error("Poly2: inexact division by x^k");
            r.terms_[{key.first - k, key.second}] = c;
        }
        return r;
    }
    Poly2 divide_by_y_power(int k) const {
        if (k == 0) return *this;
        Poly2 r;
        for (const auto& [key, c] : terms_) {
            if (key.second < k) throw precondition_error("Poly2: inexact division by y^k");
            r.terms_[{key.first, key.second - k}] = c;
        }
        return r;
    }

    Poly2 mul_x_power(int k) const {
        Poly2 r;
        for (const auto& [key, c] : terms_) r.terms_[{key.first + k, key.second}] = c;
        return r;
    }
    Poly2 mul_y_power(int k) const {
        Poly2 r;
        for (const auto& [key, c] : terms_) r.terms_[{key.first, key.second + k}] = c;
        return r;
    }

    // Restriction to {x = 0} as a polynomial in y, and symmetrically.
    Poly1 restrict_x0() const {
        Poly1 r;
        for (const auto& [k, c] : terms_)
            if (k.first == 0) r.set(k.second, c);
        return r;
    }
    Poly1 restrict_y0() const {
        Poly1 r;
        for (const auto& [k, c] : terms_)
            if (k.second == 0) r.set(k.first, c);
        return r;
    }

    // y -> y + t (moving a point of E to the chart origin).
    Poly2 translate_y(const Rational& t) const {
        if (t.is_zero()) return *this;
        Poly2 r;
        for (const auto& [k, c] : terms_) {
            // (y+t)^j expanded by running binomials
            Rational binom(1);
            Rational tpow(1);
            for (int h = k.second; h >= 0; --h) {
                r.set(k.first, h, r.coefficient(k.first, h) + c * binom * tpow);
                binom *= Rational(h);
                binom /= Rational(k.second - h + 1);
                tpow *= t;
            }
        }
        return r;
    }
    Poly2 translate_x(const Rational& t) const { return swap_xy().translate_y(t).swap_xy(); }

    Poly2 swap_xy() const {
        Poly2 r;
        for (const auto& [k, c] : terms_) r.terms_[{k.second, k.first}] = c;
        return r;
    }

    // Full composition p(fx, fy); used for linear coordinate changes.
    Poly2 compose(const Poly2& fx, const Poly2& fy) const {
        std::vector<Poly2> xp{Poly2(Rational(1))}, yp{Poly2(Rational(1))};
        Poly2 r;
        for (const auto& [k, c] : terms_) {
            while ((int)xp.size() <= k.first) xp.push_back(xp.back() * fx);
            while ((int)yp.size() <= k.second) yp.push_back(yp.back() * fy);
            r = r + xp[k.first] * yp[k.second] * c;
        }
        return r;
    }

private:
    std::map<Key, Rational> terms_;
};

// Human-readable form, e.g. "3/2*x^2*y - y^3". Graded order, constant first.
inline std::string to_string(const Poly2& p) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Poly2::Key, Rational>> ts(p.terms().begin(), p.terms().end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
        if (da != db) return da < db;
        return a.first.first > b.first.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [k, c] : ts) {
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += a.sign() < 0 ? " - " : " + ";
            if (a.sign() < 0) a = -a;
        }
        first = false;
        std::string mono;
        if (k.first > 0) mono += k.first == 1 ? "x" : "x^" + std::to_string(k.first);
        if (k.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += k.second == 1 ? "y" : "y^" + std::to_string(k.second);
        }
        if (mono.empty())
            out += a.str();
        else if (a == Rational(1))
            out += mono;
        else
            out += a.str() + "*" + mono;
    }
    return out;
}

} // namespace folmmp
