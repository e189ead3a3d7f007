#pragma once

#include <cstdint>
#include <ostream>

#include "ffc/errors.hpp"

namespace ffc {

// Canonical residue in [0, p-1].
using Residue = std::uint32_t;

// Deterministic trial division up to sqrt(n).
bool is_prime(std::uint64_t n);

/// The prime field F_p, 2 <= p <= 2^31 - 1.
///
/// Raw-residue arithmetic lives here so that matrix and polynomial kernels can
/// work on plain `Residue` buffers; `FpElement` wraps a residue together with
/// its field for the scalar API.
class PrimeField {
  public:
    static constexpr std::uint64_t max_modulus = (std::uint64_t{1} << 31) - 1;

    explicit PrimeField(std::uint64_t p);

    Residue modulus() const noexcept { return p_; }

    // Mathematical modulus: nonnegative for negative v.
    Residue reduce(std::int64_t v) const noexcept {
        auto r = v % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }
    Residue reduce_u64(std::uint64_t v) const noexcept { return static_cast<Residue>(v % p_); }

    Residue add(Residue a, Residue b) const noexcept {
        std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Residue>(s >= p_ ? s - p_ : s);
    }
    Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(std::uint64_t{a} * b % p_);
    }

    // 0^0 = 1.
    Residue pow(Residue a, std::uint64_t e) const noexcept;

    // a^(p-2); throws PreconditionError for a = 0.
    Residue inv(Residue a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

  private:
    Residue p_;
};

// Throws FieldMismatch when the two fields differ.
void require_same_field(const PrimeField& a, const PrimeField& b, const char* what);

class FpElement {
  public:
    FpElement(std::int64_t v, PrimeField field) : field_(field), value_(field.reduce(v)) {}

    Residue value() const noexcept { return value_; }
    const PrimeField& field() const noexcept { return field_; }

    FpElement inv() const;
    FpElement pow(std::uint64_t e) const;

    friend FpElement operator+(const FpElement& a, const FpElement& b);
    friend FpElement operator-(const FpElement& a, const FpElement& b);
    friend FpElement operator*(const FpElement& a, const FpElement& b);
    friend FpElement operator/(const FpElement& a, const FpElement& b);
    friend FpElement operator-(const FpElement& a);

    friend bool operator==(const FpElement&, const FpElement&) = default;

  private:
    PrimeField field_;
    Residue value_;
};

std::ostream& operator<<(std::ostream& os, const FpElement& x);

} // namespace ffc
