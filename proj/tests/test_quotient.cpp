#include <catch2/catch_amalgamated.hpp>

#include "folmmp/quotient.hpp"

#include <numeric>

using namespace folmmp;

namespace {

// Scan oracle for Lambda(eps'): all coprime pairs with p up to 2^S (the
// continuant of a digit list with sum S is at most 2^S), filtered by the
// digit sum criterion.
std::set<EigenvaluePair> eigenvalue_set_oracle(long long S) {
    std::set<EigenvaluePair> out;
    long long bound = 1LL << S;
    for (long long p = 1; p <= bound; ++p)
        for (long long q = 1; q <= p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            if (continued_fraction(p, q).digit_sum() <= S) out.insert({p, q});
        }
    return out;
}

// Independent toric route for the foliation ledger: on each chart of the
// resolution the coordinates are (possibly Laurent) monomials in the cover
// coordinates; the descended fibration is spanned by (i1 s, i2 t) where
// i1, i2 are the x-exponents. Corners with both exponents nonzero are the
// singular points.
struct ToricChartField {
    long long i1, i2; // x-exponents of the two chart coordinates
};

std::vector<ToricChartField> toric_chart_fields(long long m, long long b) {
    auto rays = quotient_fan_rays(m, b);
    std::vector<ToricChartField> charts;
    for (size_t k = 1; k < rays.size(); ++k) {
        auto [p1, p2] = rays[k - 1];
        auto [q1, q2] = rays[k];
        long long det = p1 * q2 - p2 * q1;
        REQUIRE((det == 1 || det == -1));
        // dual basis rows of [[p1,p2],[q1,q2]]^-T
        // w1 . u_{k-1} = 1, w1 . u_k = 0 and symmetrically for w2
        long long w1a = q2 * det, w1b = -q1 * det;
        long long w2a = -p2 * det, w2b = p1 * det;
        // monomial chi^(alpha,beta) = x^(m alpha - b beta) y^beta
        charts.push_back({m * w1a - b * w1b, m * w2a - b * w2b});
    }
    return charts;
}

std::vector<Rational> a_fol_toric_oracle(long long m, long long b) {
    auto c = hirzebruch_jung(m, b);
    auto charts = toric_chart_fields(m, b);
    size_t r = c.size();
    // divisor E_j lives in chart j (as {t=0}) and chart j+1 (as {s=0});
    // charts are indexed 0..r with chart k spanning rays (u_k, u_{k+1}).
    std::vector<Rational> d(r);
    for (size_t j = 1; j <= r; ++j) {
        int z = 0;
        // corner u_{j-1} ^ u_j in chart j-1, corner u_j ^ u_{j+1} in chart j
        if (charts[j - 1].i1 != 0 && charts[j - 1].i2 != 0) ++z;
        if (charts[j].i1 != 0 && charts[j].i2 != 0) ++z;
        d[j - 1] = Rational(-2 + z);

        // E_j must come out invariant in both of its charts: after removing
        // the common coordinate factor, {s=0} is transverse only when the
        // saturated field is i1 d/ds, and {t=0} only when it is i2 d/dt.
        bool inv_right = !(charts[j].i2 == 0 && charts[j].i1 != 0); // E_j = {s=0} in chart j
        bool inv_left = !(charts[j - 1].i1 == 0 && charts[j - 1].i2 != 0);
        CHECK(inv_right);
        CHECK(inv_left);
    }
    MatQ mat(r, std::vector<Rational>(r, Rational(0)));
    for (size_t i = 0; i < r; ++i) {
        mat[i][i] = Rational(-c[i]);
        if (i + 1 < r) mat[i][i + 1] = mat[i + 1][i] = Rational(1);
    }
    return solve_linear(mat, d);
}

} // namespace

TEST_CASE("eigenvalue set examples") {
    CHECK(eigenvalue_set(Rational(1)) == std::set<EigenvaluePair>{{1, 1}});
    CHECK(eigenvalue_set(Rational(1, 2)) == std::set<EigenvaluePair>{{1, 1}, {2, 1}});
    CHECK(eigenvalue_set(Rational(1, 3)) ==
          std::set<EigenvaluePair>{{1, 1}, {2, 1}, {3, 1}, {3, 2}});
    CHECK_THROWS_AS(eigenvalue_set(Rational(0)), precondition_error);
    CHECK_THROWS_AS(eigenvalue_set(Rational(-1, 2)), precondition_error);
}

TEST_CASE("eigenvalue set equals the scan oracle") {
    for (long long S : {1, 2, 3, 5, 10}) {
        auto fast = eigenvalue_set(Rational(1, S));
        auto slow = eigenvalue_set_oracle(S);
        CHECK(fast == slow);
    }
}

TEST_CASE("eigenvalue set is monotone in eps") {
    auto prev = eigenvalue_set(Rational(1));
    for (long long S = 2; S <= 12; ++S) {
        auto cur = eigenvalue_set(Rational(1, S));
        CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = cur;
    }
    // non-integer 1/eps' floors correctly: Lambda(2/5) = Lambda(1/2)
    CHECK(eigenvalue_set(Rational(2, 5)) == eigenvalue_set(Rational(1, 2)));
}

TEST_CASE("equivariance of upstairs germs") {
    CHECK_NOTHROW(CyclicQuotientGerm::standard(5, 2));
    // x d/dx is invariant for every action
    CHECK_NOTHROW(CyclicQuotientGerm(5, 2, VectorFieldGerm(Poly2::x(), Poly2())));
    // y d/dx has weight b - 1, x d/dy has weight 1 - b: mixing them breaks
    // equivariance unless 2(b-1) = 0 mod m
    CHECK_THROWS_AS(CyclicQuotientGerm(5, 2, VectorFieldGerm(Poly2::y(), Poly2::x())),
                    precondition_error);
    CHECK_NOTHROW(CyclicQuotientGerm(2, 1, VectorFieldGerm(Poly2::y(), Poly2::x())));
}

TEST_CASE("quotient resolution examples") {
    // m=2: single (-2)-curve, Du Val, terminal foliation point
    auto r2 = quotient_resolution(CyclicQuotientGerm::standard(2, 1));
    REQUIRE(r2.chain.size() == 1);
    CHECK(r2.chain[0].a_var == Rational(0));
    CHECK(r2.chain[0].a_fol == Rational(1, 2));
    CHECK(r2.chain[0].a_fol.sign() > 0);

    // m=3: single (-3)-curve with a_var = -1/3
    auto r3 = quotient_resolution(CyclicQuotientGerm::standard(3, 1));
    REQUIRE(r3.chain.size() == 1);
    CHECK(r3.chain[0].a_var == Rational(-1, 3));
    CHECK(r3.chain[0].a_fol == Rational(1, 3));

    // m=5, b=2: chain [3,2], a_var from the 2x2 system
    auto r52 = quotient_resolution(CyclicQuotientGerm::standard(5, 2));
    REQUIRE(r52.chain.size() == 2);
    CHECK(r52.chain[0].c == 3);
    CHECK(r52.chain[1].c == 2);
    CHECK(r52.chain[0].a_var == Rational(-2, 5));
    CHECK(r52.chain[1].a_var == Rational(-1, 5));
    CHECK(r52.chain[0].a_fol == Rational(1, 5));
    CHECK(r52.chain[1].a_fol == Rational(3, 5));

    // only the transverse fibration is supported
    CHECK_THROWS_AS(quotient_resolution(CyclicQuotientGerm(5, 2, VectorFieldGerm(Poly2::x(), Poly2()))),
                    precondition_error);
}

TEST_CASE("quotient ledgers solve their defining linear systems exactly") {
    for (long long m = 2; m <= 24; ++m) {
        for (long long b = 1; b < m; ++b) {
            if (std::gcd(m, b) != 1) continue;
            auto res = quotient_resolution(CyclicQuotientGerm::standard(m, b));
            size_t r = res.chain.size();
            // residual of both systems is zero
            for (size_t i = 0; i < r; ++i) {
                Rational acc_var(0), acc_fol(0);
                for (size_t j = 0; j < r; ++j) {
                    Rational gram = i == j        ? Rational(-res.chain[i].c)
                                    : (i + 1 == j || j + 1 == i) ? Rational(1)
                                                                 : Rational(0);
                    acc_var += gram * res.chain[j].a_var;
                    acc_fol += gram * res.chain[j].a_fol;
                }
                CHECK(acc_var == Rational(res.chain[i].c - 2));
                CHECK(acc_fol == res.adjunction_rhs[i]);
            }
            // terminality of the descended foliation
            for (const auto& d : res.chain) CHECK(d.a_fol.sign() > 0);
        }
    }
}

TEST_CASE("quotient foliation ledger matches the toric chart oracle") {
    for (long long m = 2; m <= 20; ++m) {
        for (long long b = 1; b < m; ++b) {
            if (std::gcd(m, b) != 1) continue;
            auto res = quotient_resolution(CyclicQuotientGerm::standard(m, b));
            auto oracle = a_fol_toric_oracle(m, b);
            REQUIRE(res.chain.size() == oracle.size());
            for (size_t i = 0; i < oracle.size(); ++i) CHECK(res.chain[i].a_fol == oracle[i]);
        }
    }
}

TEST_CASE("quotient adjoint threshold") {
    // m=3, b=1 realizes 1/(m-2) = 1
    auto t31 = quotient_adjoint_threshold(3, 1);
    REQUIRE(t31.value.has_value());
    CHECK(*t31.value == Rational(1));

    // b = m-1 is Du Val: no constraining divisor
    for (long long m : {3, 4, 7}) {
        auto t = quotient_adjoint_threshold(m, m - 1);
        CHECK(!t.value.has_value());
    }

    // b = 1 gives exactly 1/(m-2): single (-m)-curve with
    // a_fol = 1/m and a_var = -(m-2)/m
    for (long long m = 3; m <= 12; ++m) {
        auto t = quotient_adjoint_threshold(m, 1);
        REQUIRE(t.value.has_value());
        CHECK(*t.value == Rational(1, m - 2));
    }

    CHECK_THROWS_AS(quotient_adjoint_threshold(2, 1), precondition_error);
}

TEST_CASE("riemann-hurwitz pullback") {
    std::vector<CoverDivisor> down{{"D1", false, Rational(1, 2)}, {"D2", true, Rational(-1)}};
    Rational eps(1, 10);

    // trivial ramification is the identity on coefficients
    auto up0 = rh_pullback(down, {{"D1", 1, false}, {"D2", 1, true}}, eps);
    CHECK(up0[0].coefficient == Rational(1, 2));
    CHECK(up0[1].coefficient == Rational(-1));

    // r = m on an invariant divisor of coefficient 0: correction (m-1) eps
    auto up1 = rh_pullback({}, {{"E", 5, true}}, eps);
    REQUIRE(up1.size() == 1);
    CHECK(up1[0].coefficient == Rational(4) * eps);

    // r = m on a non-invariant divisor: correction (m-1)(1 + eps)
    auto up2 = rh_pullback({}, {{"E", 5, false}}, eps);
    CHECK(up2[0].coefficient == Rational(4) * (Rational(1) + eps));

    // ramified divisor with existing coefficient: r c + (r-1)(iota + eps)
    auto up3 = rh_pullback(down, {{"D1", 3, false}}, eps);
    CHECK(up3[0].coefficient == Rational(3) * Rational(1, 2) + Rational(2) * (Rational(1) + eps));
    CHECK(up3[1].coefficient == Rational(-1)); // untouched

    // inconsistent invariance flags are rejected
    CHECK_THROWS_AS(rh_pullback(down, {{"D1", 2, true}}, eps), precondition_error);
    CHECK_THROWS_AS(rh_pullback(down, {{"D1", 0, false}}, eps), precondition_error);
}
