#include <catch2/catch_amalgamated.hpp>

#include "folmmp/contfrac.hpp"

#include <numeric>

using namespace folmmp;

TEST_CASE("continued fraction examples") {
    CHECK(continued_fraction(1, 1).digits == std::vector<long long>{1});
    // 5/2 = 2 + 1/2
    CHECK(continued_fraction(5, 2).digits == std::vector<long long>{2, 2});
    // 7/3 = 2 + 1/3
    CHECK(continued_fraction(7, 3).digits == std::vector<long long>{2, 3});
    CHECK_THROWS_AS(continued_fraction(4, 2), precondition_error);
    CHECK_THROWS_AS(continued_fraction(2, 3), precondition_error);
    CHECK_THROWS_AS(continued_fraction(0, 1), precondition_error);
}

TEST_CASE("continued fraction canonical form and round-trip") {
    for (long long p = 1; p <= 200; ++p) {
        for (long long q = 1; q <= p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            auto cf = continued_fraction(p, q);
            for (long long d : cf.digits) CHECK(d >= 1);
            if (cf.digits.size() >= 2) CHECK(cf.digits.back() >= 2);
            CHECK(evaluate_continued_fraction(cf) == Rational(p, q));
        }
    }
}

TEST_CASE("continued fraction round-trips up to 10^4 on a sample grid") {
    // full sweep near the bound plus a sparse sweep across it
    for (long long p : {9973LL, 10000LL}) {
        for (long long q = 1; q <= p; q += 7) {
            if (std::gcd(p, q) != 1) continue;
            CHECK(evaluate_continued_fraction(continued_fraction(p, q)) == Rational(p, q));
        }
    }
}

TEST_CASE("hirzebruch-jung examples") {
    CHECK(hirzebruch_jung(2, 1) == std::vector<long long>{2});
    CHECK(hirzebruch_jung(3, 1) == std::vector<long long>{3});
    // 5/2 = 3 - 1/2
    CHECK(hirzebruch_jung(5, 2) == std::vector<long long>{3, 2});
    CHECK_THROWS_AS(hirzebruch_jung(4, 2), precondition_error);
    CHECK_THROWS_AS(hirzebruch_jung(3, 3), precondition_error);
}

TEST_CASE("hirzebruch-jung round-trip for all m <= 500") {
    for (long long m = 2; m <= 500; ++m) {
        for (long long b = 1; b < m; ++b) {
            if (std::gcd(m, b) != 1) continue;
            auto c = hirzebruch_jung(m, b);
            for (long long ci : c) CHECK(ci >= 2);
            CHECK(evaluate_hirzebruch_jung(c) == Rational(m, b));
            auto [mm, bb] = chain_to_quotient(c);
            CHECK(mm == m);
            CHECK(bb == b);
        }
    }
}
