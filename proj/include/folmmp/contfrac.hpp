#pragma once

// Continued fractions (ordinary and negative-regular / Hirzebruch-Jung).
// Digit lists are kept in canonical form so they can serve as unique set
// representatives: ordinary expansions end with a digit >= 2 unless they
// consist of the single digit for an integer ratio.

#include "folmmp/rational.hpp"

#include <limits>
#include <numeric>
#include <vector>

namespace folmmp {

struct ContinuedFraction {
    std::vector<long long> digits; // u_1..u_k, all >= 1, u_k >= 2 when k >= 2

    long long digit_sum() const {
        long long s = 0;
        for (long long u : digits) s += u;
        return s;
    }
    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;
};

// p/q = u_1 + 1/(u_2 + 1/(...)). Requires p >= q >= 1 and gcd(p,q) = 1.
inline ContinuedFraction continued_fraction(long long p, long long q) {
    if (p < 1 || q < 1) throw precondition_error("continued_fraction: arguments must be positive");
    if (p < q) throw precondition_error("continued_fraction: expects p >= q");
    if (std::gcd(p, q) != 1) throw precondition_error("continued_fraction: arguments must be coprime");
    ContinuedFraction cf;
    while (q != 0) {
        cf.digits.push_back(p / q);
        long long r = p % q;
        p = q;
        q = r;
    }
    return cf;
}

inline Rational evaluate_continued_fraction(const ContinuedFraction& cf) {
    if (cf.digits.empty()) throw precondition_error("evaluate_continued_fraction: empty digit list");
    Rational v(cf.digits.back());
    for (auto it = cf.digits.rbegin() + 1; it != cf.digits.rend(); ++it)
        v = Rational(*it) + Rational(1) / v;
    return v;
}

// m/b = c_1 - 1/(c_2 - 1/(...)), all c_i >= 2. These are the negatives of the
// exceptional self-intersections in the minimal resolution of the cyclic
// quotient point 1/m(1,b). Requires 1 <= b < m and gcd(m,b) = 1.
inline std::vector<long long> hirzebruch_jung(long long m, long long b) {
    if (b < 1 || b >= m) throw precondition_error("hirzebruch_jung: requires 1 <= b < m");
    if (std::gcd(m, b) != 1) throw precondition_error("hirzebruch_jung: arguments must be coprime");
    std::vector<long long> c;
    while (b > 0) {
        long long ci = (m + b - 1) / b; // ceil(m/b)
        c.push_back(ci);
        long long r = ci * b - m;
        m = b;
        b = r;
    }
    return c;
}

inline Rational evaluate_hirzebruch_jung(const std::vector<long long>& c) {
    if (c.empty()) throw precondition_error("evaluate_hirzebruch_jung: empty digit list");
    Rational v(c.back());
    for (auto it = c.rbegin() + 1; it != c.rend(); ++it) v = Rational(*it) - Rational(1) / v;
    return v;
}

// Inverse direction: a chain of self-intersections -c_1..-c_r contracts to
// the cyclic quotient 1/m(1,b) with m/b the value of the HJ expansion.
inline std::pair<long long, long long> chain_to_quotient(const std::vector<long long>& c) {
    Rational v = evaluate_hirzebruch_jung(c);
    if (v.num() > (std::numeric_limits<long long>::max)() || v.den() > (std::numeric_limits<long long>::max)())
        throw precondition_error("chain_to_quotient: overflow");
    return {(long long)v.num(), (long long)v.den()};
}

} // namespace folmmp
