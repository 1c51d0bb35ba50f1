#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace jetforge;

TEST_CASE("rational arithmetic is exact and canonical") {
    Rational half(BigInt(1), BigInt(2));
    Rational third(BigInt(1), BigInt(3));
    CHECK(half + third == Rational(BigInt(5), BigInt(6)));

    // gcd reduction on construction
    Rational r(BigInt(2), BigInt(4));
    CHECK(r.numerator() == 1);
    CHECK(r.denominator() == 2);

    // denominator is kept positive
    Rational s(BigInt(1), BigInt(-2));
    CHECK(s.denominator() == 2);
    CHECK(s.numerator() == -1);

    CHECK(Rational(6) * Rational(BigInt(1), BigInt(3)) == Rational(2));
    CHECK((-half).numerator() == -1);
    CHECK(half.inverse() == Rational(2));
}

TEST_CASE("rational division by zero is an error, never a value") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), arithmetic_error);
    CHECK_THROWS_AS(Rational(0).inverse(), arithmetic_error);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), arithmetic_error);
}

TEST_CASE("prime field arithmetic") {
    PrimeField F5(5);
    CHECK((F5.from_int(3) * F5.from_int(4)).v == 2); // 12 mod 5
    CHECK((F5.from_int(2) + F5.from_int(4)).v == 1);
    CHECK((F5.from_int(1) - F5.from_int(3)).v == 3);
    CHECK((-F5.from_int(2)).v == 3);
    for (int a = 1; a < 5; ++a)
        CHECK((F5.from_int(a) * F5.from_int(a).inverse()).v == 1);
    CHECK(F5.from_int(-7).v == 3);

    // (1/2) in F_5 is 3
    CHECK(F5.from_fraction(BigInt(1), BigInt(2)).v == 3);
    CHECK_THROWS_AS(F5.from_fraction(BigInt(1), BigInt(5)), arithmetic_error);
    CHECK_THROWS_AS(F5.from_int(0).inverse(), arithmetic_error);
}

TEST_CASE("prime modulus is validated once, at field construction") {
    CHECK_THROWS_AS(PrimeField(6), arithmetic_error);
    CHECK_THROWS_AS(PrimeField(1), arithmetic_error);
    CHECK_THROWS_AS(PrimeField(0), arithmetic_error);
    CHECK_THROWS_AS(PrimeField(1ull << 31), arithmetic_error);
    CHECK_NOTHROW(PrimeField(2));
    CHECK_NOTHROW(PrimeField(2147483647)); // 2^31 - 1 is prime
}

TEST_CASE("mixed moduli cannot be combined") {
    PrimeField F5(5), F7(7);
    CHECK_THROWS_AS(F5.from_int(1) + F7.from_int(1), field_mismatch_error);
}

TEST_CASE("field operations are closed and exact on random pairs") {
    std::mt19937_64 rng(11);
    RationalField Q;
    PrimeField F5(5);
    for (int i = 0; i < 500; ++i) {
        auto a = random_scalar(Q, rng), b = random_scalar(Q, rng);
        CHECK(a + b - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        auto x = random_scalar(F5, rng), y = random_scalar(F5, rng);
        CHECK(x + y - y == x);
        if (!y.is_zero()) CHECK((x * y) / y == x);
    }
}
