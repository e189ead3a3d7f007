#include <doctest.h>

#include <random>

#include "ffc/field.hpp"

using namespace ffc;

TEST_CASE("primality by trial division") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(9));
    CHECK(is_prime(2147483647));
    CHECK_FALSE(is_prime(2147483649ULL));
}

TEST_CASE("field construction rejects composite and oversize moduli") {
    CHECK_THROWS_AS(PrimeField(4), PreconditionError);
    CHECK_THROWS_AS(PrimeField(1), PreconditionError);
    CHECK_THROWS_AS(PrimeField(0), PreconditionError);
    CHECK_THROWS_AS(PrimeField(4294967311ULL), PreconditionError);
    CHECK_NOTHROW(PrimeField(2147483647));
}

TEST_CASE("elements stay canonical") {
    PrimeField f(7);
    CHECK(FpElement(-1, f).value() == 6);
    CHECK(FpElement(15, f).value() == 1);
    CHECK(FpElement(-15, f).value() == 6);
    FpElement a(3, f), b(5, f);
    CHECK((a + b).value() == 1);
    CHECK((a - b).value() == 5);
    CHECK((a * b).value() == 1);
    CHECK((a / b).value() == 2);
    CHECK((-a).value() == 4);
    CHECK(a.pow(6).value() == 1);
    CHECK(FpElement(0, f).pow(0).value() == 1);
}

TEST_CASE("mixed-field arithmetic is rejected") {
    FpElement a(1, PrimeField(3)), b(1, PrimeField(5));
    CHECK_THROWS_AS(a + b, FieldMismatch);
    CHECK_THROWS_AS(a * b, FieldMismatch);
    CHECK_THROWS_AS(FpElement(0, PrimeField(5)).inv(), PreconditionError);
}

TEST_CASE("field axioms on random samples, including the largest modulus") {
    std::mt19937_64 rng(7);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 65521ULL, 2147483647ULL}) {
        PrimeField f(p);
        std::uniform_int_distribution<std::int64_t> d(0, static_cast<std::int64_t>(p) - 1);
        for (int k = 0; k < 200; ++k) {
            FpElement a(d(rng), f), b(d(rng), f), c(d(rng), f);
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a - a == FpElement(0, f));
            CHECK(a.value() < p);
            // independent check of the product against 128-bit arithmetic
            unsigned __int128 prod = static_cast<unsigned __int128>(a.value()) * b.value() % p;
            CHECK((a * b).value() == static_cast<Residue>(prod));
            if (a.value() != 0) {
                CHECK((a * a.inv()).value() == 1);
                CHECK(a.pow(p - 1).value() == 1);
            }
        }
    }
}
