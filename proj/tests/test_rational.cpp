#include <catch2/catch_amalgamated.hpp>

#include "folmmp/rational.hpp"

#include <random>

using folmmp::BigInt;
using folmmp::Rational;

TEST_CASE("rational normalization") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(0, -5).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), folmmp::precondition_error);
}

TEST_CASE("rational arithmetic is exact") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 1000);
    for (int i = 0; i < 2000; ++i) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng));
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("rational parse and print round-trip") {
    CHECK(Rational::parse("3/4").str() == "3/4");
    CHECK(Rational::parse("-3/4").str() == "-3/4");
    CHECK(Rational::parse("3/-4").str() == "-3/4");
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse("14/2").str() == "7");
    CHECK_THROWS_AS(Rational::parse("x"), folmmp::precondition_error);
    CHECK_THROWS_AS(Rational::parse("1/0"), folmmp::precondition_error);
}

TEST_CASE("rational ordering, floor, ceil") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).ceil() == -3);
}

TEST_CASE("rational squares") {
    CHECK(Rational(9, 4).is_square());
    CHECK(Rational(9, 4).sqrt() == Rational(3, 2));
    CHECK_FALSE(Rational(2).is_square());
    CHECK_FALSE(Rational(-9, 4).is_square());
    CHECK(Rational(0).is_square());
}

TEST_CASE("big values stay exact") {
    Rational big(BigInt("123456789012345678901234567890"), BigInt(7));
    Rational r = big * Rational(7) / Rational(BigInt("123456789012345678901234567890"));
    CHECK(r == Rational(1));
}
