#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace ffc;

namespace {

FpPolynomial random_poly(std::mt19937_64& rng, PrimeField f, int degree) {
    std::uniform_int_distribution<std::int64_t> d(0, f.modulus() - 1);
    std::vector<Residue> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = static_cast<Residue>(d(rng));
    return FpPolynomial(c, f);
}

FpPolynomial product(const std::vector<IrreducibleFactor>& fs, PrimeField f) {
    auto acc = FpPolynomial::constant(1, f);
    for (const auto& x : fs) acc = acc * poly_pow(x.factor, x.multiplicity);
    return acc;
}

} // namespace

TEST_CASE("normalization and printing") {
    PrimeField f(3);
    auto p = FpPolynomial::from_coeffs({0, 0, 2, 1, 0, 0}, f);
    CHECK(p.degree() == 3);
    CHECK(p.to_string() == "s^3 + 2s^2");
    CHECK(FpPolynomial::from_coeffs({0, 0}, f).is_zero());
    CHECK(FpPolynomial::from_coeffs({0, 0}, f).degree() == -1);
    CHECK(FpPolynomial(f).to_string() == "0");
    CHECK(FpPolynomial::from_coeffs({2, 0, 0, 1}, f).to_string() == "s^3 + 2");
    CHECK(FpPolynomial::linear(1, f).to_string() == "s + 2");
}

TEST_CASE("division identity f = q g + r on random inputs") {
    std::mt19937_64 rng(3);
    for (std::uint64_t p : {2ULL, 3ULL, 13ULL}) {
        PrimeField f(p);
        for (int k = 0; k < 100; ++k) {
            auto a = random_poly(rng, f, static_cast<int>(rng() % 8));
            auto b = random_poly(rng, f, static_cast<int>(rng() % 5));
            if (b.is_zero()) {
                CHECK_THROWS_AS(poly_divmod(a, b), PreconditionError);
                continue;
            }
            auto [q, r] = poly_divmod(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
            auto g = poly_gcd(a, b);
            if (!g.is_zero()) {
                CHECK(g.is_monic());
                CHECK(poly_mod(a, g).is_zero());
                CHECK(poly_mod(b, g).is_zero());
            }
        }
    }
}

TEST_CASE("evaluation and powmod match repeated multiplication") {
    PrimeField f(5);
    auto g = FpPolynomial::from_coeffs({2, 1, 0, 1}, f);
    auto x = FpPolynomial::monomial(1, 1, f);
    auto acc = FpPolynomial::constant(1, f);
    for (int e = 0; e < 30; ++e) {
        CHECK(poly_powmod(x, static_cast<std::uint64_t>(e), g) == poly_mod(acc, g));
        acc = poly_mod(acc * x, g);
    }
    auto h = FpPolynomial::from_coeffs({1, 2, 3}, f);
    for (Residue v = 0; v < 5; ++v) CHECK(poly_eval(h, v) == (1 + 2 * v + 3 * v * v) % 5);
}

TEST_CASE("factorization recombines into the input, factors irreducible") {
    std::mt19937_64 rng(5);
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        PrimeField f(p);
        for (int k = 0; k < 60; ++k) {
            auto a = random_poly(rng, f, 1 + static_cast<int>(rng() % 6)).monic();
            if (a.degree() < 1) continue;
            auto fs = factor_irreducible(a);
            CHECK(product(fs, f) == a);
            for (const auto& x : fs) {
                CHECK(x.factor.is_monic());
                if (x.factor.degree() >= 2 && x.factor.degree() <= 3) CHECK(oracle::irreducible_small(testing::coeffs(x.factor), p));
                CHECK(is_irreducible(x.factor));
            }
        }
    }
}

TEST_CASE("known factorizations") {
    PrimeField f3(3);
    // s^3 - 1 = (s - 1)^3 over F_3
    auto fs = factor_irreducible(FpPolynomial::from_coeffs({2, 0, 0, 1}, f3));
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].factor == FpPolynomial::linear(1, f3));
    CHECK(fs[0].multiplicity == 3);
    // s^2 + 1 is irreducible over F_3
    CHECK(is_irreducible(FpPolynomial::from_coeffs({1, 0, 1}, f3)));
    CHECK_FALSE(is_irreducible(FpPolynomial::from_coeffs({1, 0, 1}, PrimeField(5))));
    CHECK_THROWS_AS(factor_irreducible(FpPolynomial(f3)), PreconditionError);
}

TEST_CASE("multiplicative order agrees with a linear scan") {
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL}) {
        PrimeField f(p);
        std::mt19937_64 rng(p);
        for (int k = 0; k < 40; ++k) {
            auto g = random_poly(rng, f, 1 + static_cast<int>(rng() % 4)).monic();
            if (g.degree() < 1 || g.coeff(0) == 0) continue;
            CHECK(poly_order(g) == oracle::order(testing::coeffs(g), static_cast<oracle::Int>(p)));
        }
    }
    // primitive polynomial s^2 + s + 2 over F_3 has order 8
    CHECK(poly_order(FpPolynomial::from_coeffs({2, 1, 1}, PrimeField(3))) == 8);
    CHECK_THROWS_AS(poly_order(FpPolynomial::from_coeffs({0, 1}, PrimeField(3))), PreconditionError);
}

TEST_CASE("roots listed with multiplicity") {
    PrimeField f(7);
    auto a = FpPolynomial::linear(2, f) * FpPolynomial::linear(2, f) * FpPolynomial::linear(5, f) *
             FpPolynomial::from_coeffs({1, 0, 1}, f);  // s^2+1 has no root mod 7
    CHECK(poly_roots(a) == std::vector<Residue>{2, 2, 5});
    // brute force: every listed root evaluates to zero
    for (std::uint64_t p : {2ULL, 3ULL, 11ULL}) {
        PrimeField g(p);
        std::mt19937_64 rng(p * 17);
        for (int k = 0; k < 40; ++k) {
            auto h = random_poly(rng, g, 1 + static_cast<int>(rng() % 6));
            if (h.degree() < 1) continue;
            std::vector<Residue> expect;
            for (Residue v = 0; v < p; ++v)
                if (poly_eval(h, v) == 0) expect.push_back(v);
            auto got = poly_roots(h);
            got.erase(std::unique(got.begin(), got.end()), got.end());
            CHECK(got == expect);
        }
    }
}
