#include <catch2/catch_amalgamated.hpp>

#include "folmmp/polynomial.hpp"

using folmmp::Poly1;
using folmmp::Poly2;
using folmmp::Rational;

namespace {
Poly2 X() { return Poly2::x(); }
Poly2 Y() { return Poly2::y(); }
} // namespace

TEST_CASE("poly order and degree") {
    // x^2 y + y^4 has order 3
    Poly2 p = X() * X() * Y() + Y() * Y() * Y() * Y();
    CHECK(p.order() == 3);
    CHECK(p.total_degree() == 4);

    Poly2 q = Poly2(Rational(1)) + X();
    CHECK(q.order() == 0);

    // canceling sum is the zero polynomial and is rejected
    Poly2 z = X() * Y() - Y() * X();
    CHECK(z.is_zero());
    CHECK_THROWS_AS(z.order(), folmmp::precondition_error);
}

TEST_CASE("chart substitutions are exponent remaps") {
    Poly2 p = Poly2::monomial(2, 1, Rational(3)); // 3 x^2 y
    CHECK(p.subst_x_chart() == Poly2::monomial(3, 1, Rational(3)));
    CHECK(p.subst_y_chart() == Poly2::monomial(2, 3, Rational(3)));
}

TEST_CASE("translation") {
    // f = y^2, y -> y+2: y^2 + 4y + 4
    Poly2 f = Y() * Y();
    Poly2 g = f.translate_y(Rational(2));
    CHECK(g.coefficient(0, 2) == Rational(1));
    CHECK(g.coefficient(0, 1) == Rational(4));
    CHECK(g.coefficient(0, 0) == Rational(4));
    // evaluation check on a non-trivial poly
    Poly2 h = X() * Y() * Y() - X() * X() + Y();
    Poly2 ht = h.translate_y(Rational(-3, 2)).translate_x(Rational(5, 7));
    CHECK(ht.eval(Rational(1), Rational(2)) ==
          h.eval(Rational(1) + Rational(5, 7), Rational(2) - Rational(3, 2)));
}

TEST_CASE("compose with linear change") {
    Poly2 f = X() * Y();
    Poly2 g = f.compose(X() + Y(), X() - Y()); // (x+y)(x-y) = x^2 - y^2
    CHECK(g == X() * X() - Y() * Y());
}

TEST_CASE("univariate gcd and division") {
    // (t-1)^2 (t+2) and (t-1)(t-3)
    Poly1 t = Poly1::monomial(1, Rational(1));
    Poly1 a = (t - Poly1(Rational(1))) * (t - Poly1(Rational(1))) * (t + Poly1(Rational(2)));
    Poly1 b = (t - Poly1(Rational(1))) * (t - Poly1(Rational(3)));
    Poly1 g = Poly1::gcd(a, b);
    CHECK(g == (t - Poly1(Rational(1))).monic());
    auto [q, r] = Poly1::divmod(a, b);
    CHECK(q * b + r == a);
}

TEST_CASE("squarefree decomposition") {
    Poly1 t = Poly1::monomial(1, Rational(1));
    Poly1 f = (t - Poly1(Rational(2))) * (t - Poly1(Rational(2))) * (t + Poly1(Rational(1)));
    auto dec = f.squarefree_decomposition();
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].second == 1);
    CHECK(dec[0].first == (t + Poly1(Rational(1))).monic());
    CHECK(dec[1].second == 2);
    CHECK(dec[1].first == (t - Poly1(Rational(2))).monic());
}

TEST_CASE("rational roots") {
    Poly1 t = Poly1::monomial(1, Rational(1));
    // 6 t^3 - 5 t^2 + ... pick roots 1/2, -2/3, 0 (double)
    Poly1 f = (t * Rational(2) - Poly1(Rational(1))) * (t * Rational(3) + Poly1(Rational(2))) * t * t;
    auto rd = f.rational_roots();
    REQUIRE(rd.roots.size() == 3);
    bool found_half = false, found_m23 = false, found_zero = false;
    for (auto& [r, m] : rd.roots) {
        if (r == Rational(1, 2)) found_half = m == 1;
        if (r == Rational(-2, 3)) found_m23 = m == 1;
        if (r == Rational(0)) found_zero = m == 2;
    }
    CHECK(found_half);
    CHECK(found_m23);
    CHECK(found_zero);
    CHECK(rd.cofactor.degree() == 0);

    // t^2 + 1 has no rational roots; cofactor keeps it
    Poly1 g = t * t + Poly1(Rational(1));
    auto rg = g.rational_roots();
    CHECK(rg.roots.empty());
    CHECK(rg.cofactor.degree() == 2);
}

TEST_CASE("printing matches the germ text format") {
    Poly2 p = Poly2::monomial(2, 1, Rational(3, 2)) - Poly2::monomial(0, 3, Rational(1));
    CHECK(folmmp::to_string(p) == "3/2*x^2*y - y^3");
    CHECK(folmmp::to_string(Poly2(Rational(1)) + X()) == "1 + x");
    CHECK(folmmp::to_string(Poly2()) == "0");
}
