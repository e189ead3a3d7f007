#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "ffc/field.hpp"

namespace ffc {

/// Dense polynomial over F_p; coeffs[k] multiplies s^k.
///
/// Always normalized: no trailing zero coefficients, so the zero polynomial
/// has an empty coefficient vector and degree -1.
class FpPolynomial {
  public:
    explicit FpPolynomial(PrimeField field) : field_(field) {}
    FpPolynomial(std::vector<Residue> coeffs, PrimeField field);

    // Low degree first, reduced mod p: {-1, 1} is s - 1.
    static FpPolynomial from_coeffs(std::initializer_list<std::int64_t> low_to_high, PrimeField field);
    static FpPolynomial monomial(std::size_t degree, Residue coeff, PrimeField field);
    static FpPolynomial constant(Residue c, PrimeField field) { return monomial(0, c, field); }
    // s - root
    static FpPolynomial linear(Residue root, PrimeField field);

    const PrimeField& field() const noexcept { return field_; }
    const std::vector<Residue>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
    Residue leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
    Residue coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0; }

    FpPolynomial monic() const;

    // Highest degree first with canonical coefficients, e.g. "s^3 + 2s^2".
    std::string to_string(char var = 's') const;

    friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

  private:
    void normalize();

    PrimeField field_;
    std::vector<Residue> coeffs_;
};

FpPolynomial poly_add(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial poly_sub(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial poly_mul(const FpPolynomial& f, const FpPolynomial& g);
// Throws PreconditionError on a zero divisor.
std::pair<FpPolynomial, FpPolynomial> poly_divmod(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial poly_mod(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial poly_gcd(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial poly_pow(const FpPolynomial& f, std::uint64_t e);
// f^e mod m by square-and-multiply.
FpPolynomial poly_powmod(const FpPolynomial& f, std::uint64_t e, const FpPolynomial& m);
Residue poly_eval(const FpPolynomial& f, Residue x);

inline FpPolynomial operator+(const FpPolynomial& f, const FpPolynomial& g) { return poly_add(f, g); }
inline FpPolynomial operator-(const FpPolynomial& f, const FpPolynomial& g) { return poly_sub(f, g); }
inline FpPolynomial operator*(const FpPolynomial& f, const FpPolynomial& g) { return poly_mul(f, g); }

struct IrreducibleFactor {
    FpPolynomial factor;
    unsigned multiplicity;
};

inline constexpr std::uint64_t default_factor_guard = 10'000'000;

/// Complete factorization of a monic f (deg >= 1) into monic irreducibles by
/// trial division over all monic candidates of degree <= deg(f)/2, taken in
/// increasing degree and lexicographic coefficient order. Factors come out in
/// that order. `guard` caps the number of candidate divisors tried.
std::vector<IrreducibleFactor> factor_irreducible(const FpPolynomial& f,
                                                  std::uint64_t guard = default_factor_guard);

bool is_irreducible(const FpPolynomial& f, std::uint64_t guard = default_factor_guard);

/// Least r >= 1 with s^r = 1 (mod g). Requires g nonconstant and g(0) != 0.
/// Linear scan over powers of s; `guard` caps the scan length.
std::uint64_t poly_order(const FpPolynomial& g, std::uint64_t guard = default_factor_guard);

// Roots of f in F_p with multiplicity, ascending.
std::vector<Residue> poly_roots(const FpPolynomial& f);

} // namespace ffc
