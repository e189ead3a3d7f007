#include "ffc/field.hpp"

#include <string>

namespace ffc {

bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    if (n < 4) {
        return true;
    }
    if (n % 2 == 0) {
        return false;
    }
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) {
    if (p > max_modulus) {
        throw PreconditionError("modulus " + std::to_string(p) + " exceeds 2^31 - 1");
    }
    if (!is_prime(p)) {
        throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
    }
    p_ = static_cast<Residue>(p);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
    std::uint64_t result = 1 % p_;
    std::uint64_t base = a % p_;
    while (e != 0) {
        if (e & 1) {
            result = result * base % p_;
        }
        base = base * base % p_;
        e >>= 1;
    }
    return static_cast<Residue>(result);
}

Residue PrimeField::inv(Residue a) const {
    if (a % p_ == 0) {
        throw PreconditionError("inverse of zero in F_" + std::to_string(p_));
    }
    return pow(a, p_ - 2);
}

void require_same_field(const PrimeField& a, const PrimeField& b, const char* what) {
    if (a != b) {
        throw FieldMismatch(std::string(what) + ": operands over F_" + std::to_string(a.modulus()) + " and F_" +
                            std::to_string(b.modulus()));
    }
}

FpElement FpElement::inv() const { return FpElement(field_.inv(value_), field_); }

FpElement FpElement::pow(std::uint64_t e) const { return FpElement(field_.pow(value_, e), field_); }

FpElement operator+(const FpElement& a, const FpElement& b) {
    require_same_field(a.field_, b.field_, "add");
    return FpElement(a.field_.add(a.value_, b.value_), a.field_);
}

FpElement operator-(const FpElement& a, const FpElement& b) {
    require_same_field(a.field_, b.field_, "sub");
    return FpElement(a.field_.sub(a.value_, b.value_), a.field_);
}

FpElement operator*(const FpElement& a, const FpElement& b) {
    require_same_field(a.field_, b.field_, "mul");
    return FpElement(a.field_.mul(a.value_, b.value_), a.field_);
}

FpElement operator/(const FpElement& a, const FpElement& b) {
    require_same_field(a.field_, b.field_, "div");
    return a * b.inv();
}

FpElement operator-(const FpElement& a) { return FpElement(a.field_.neg(a.value_), a.field_); }

std::ostream& operator<<(std::ostream& os, const FpElement& x) { return os << x.value(); }

} // namespace ffc
