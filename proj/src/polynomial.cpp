#include "ffc/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace ffc {

FpPolynomial::FpPolynomial(std::vector<Residue> coeffs, PrimeField field) : field_(field), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) {
        c = field_.reduce_u64(c);
    }
    normalize();
}

FpPolynomial FpPolynomial::from_coeffs(std::initializer_list<std::int64_t> low_to_high, PrimeField field) {
    std::vector<Residue> c;
    for (auto v : low_to_high) {
        c.push_back(field.reduce(v));
    }
    return FpPolynomial(std::move(c), field);
}

FpPolynomial FpPolynomial::monomial(std::size_t degree, Residue coeff, PrimeField field) {
    std::vector<Residue> c(degree + 1, 0);
    c[degree] = coeff;
    return FpPolynomial(std::move(c), field);
}

FpPolynomial FpPolynomial::linear(Residue root, PrimeField field) {
    return FpPolynomial({field.neg(field.reduce_u64(root)), 1}, field);
}

void FpPolynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

FpPolynomial FpPolynomial::monic() const {
    if (is_zero()) {
        return *this;
    }
    Residue inv = field_.inv(leading());
    std::vector<Residue> c = coeffs_;
    for (auto& v : c) {
        v = field_.mul(v, inv);
    }
    return FpPolynomial(std::move(c), field_);
}

std::string FpPolynomial::to_string(char var) const {
    if (is_zero()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Residue c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        if (k == 0) {
            os << c;
            continue;
        }
        if (c != 1) {
            os << c;
        }
        os << var;
        if (k > 1) {
            os << '^' << k;
        }
    }
    return os.str();
}

FpPolynomial poly_add(const FpPolynomial& f, const FpPolynomial& g) {
    require_same_field(f.field(), g.field(), "poly_add");
    const auto& F = f.field();
    std::vector<Residue> c(std::max(f.coeffs().size(), g.coeffs().size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = F.add(f.coeff(k), g.coeff(k));
    }
    return FpPolynomial(std::move(c), F);
}

FpPolynomial poly_sub(const FpPolynomial& f, const FpPolynomial& g) {
    require_same_field(f.field(), g.field(), "poly_sub");
    const auto& F = f.field();
    std::vector<Residue> c(std::max(f.coeffs().size(), g.coeffs().size()), 0);
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = F.sub(f.coeff(k), g.coeff(k));
    }
    return FpPolynomial(std::move(c), F);
}

FpPolynomial poly_mul(const FpPolynomial& f, const FpPolynomial& g) {
    require_same_field(f.field(), g.field(), "poly_mul");
    const auto& F = f.field();
    if (f.is_zero() || g.is_zero()) {
        return FpPolynomial(F);
    }
    std::vector<Residue> c(f.coeffs().size() + g.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (f.coeffs()[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
            c[i + j] = F.add(c[i + j], F.mul(f.coeffs()[i], g.coeffs()[j]));
        }
    }
    return FpPolynomial(std::move(c), F);
}

std::pair<FpPolynomial, FpPolynomial> poly_divmod(const FpPolynomial& f, const FpPolynomial& g) {
    require_same_field(f.field(), g.field(), "poly_divmod");
    if (g.is_zero()) {
        throw PreconditionError("polynomial division by zero");
    }
    const auto& F = f.field();
    if (f.degree() < g.degree()) {
        return {FpPolynomial(F), f};
    }
    std::vector<Residue> rem = f.coeffs();
    const auto& d = g.coeffs();
    const std::size_t dg = d.size() - 1;
    const Residue lead_inv = F.inv(d.back());
    std::vector<Residue> quot(rem.size() - dg, 0);
    for (std::size_t k = quot.size(); k-- > 0;) {
        Residue q = F.mul(rem[k + dg], lead_inv);
        quot[k] = q;
        if (q == 0) {
            continue;
        }
        for (std::size_t j = 0; j <= dg; ++j) {
            rem[k + j] = F.sub(rem[k + j], F.mul(q, d[j]));
        }
    }
    rem.resize(dg);
    return {FpPolynomial(std::move(quot), F), FpPolynomial(std::move(rem), F)};
}

FpPolynomial poly_mod(const FpPolynomial& f, const FpPolynomial& g) { return poly_divmod(f, g).second; }

FpPolynomial poly_gcd(const FpPolynomial& f, const FpPolynomial& g) {
    FpPolynomial a = f, b = g;
    while (!b.is_zero()) {
        auto r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPolynomial poly_pow(const FpPolynomial& f, std::uint64_t e) {
    FpPolynomial result = FpPolynomial::constant(1, f.field());
    FpPolynomial base = f;
    while (e != 0) {
        if (e & 1) {
            result = result * base;
        }
        e >>= 1;
        if (e != 0) {
            base = base * base;
        }
    }
    return result;
}

FpPolynomial poly_powmod(const FpPolynomial& f, std::uint64_t e, const FpPolynomial& m) {
    FpPolynomial result = poly_mod(FpPolynomial::constant(1, f.field()), m);
    FpPolynomial base = poly_mod(f, m);
    while (e != 0) {
        if (e & 1) {
            result = poly_mod(result * base, m);
        }
        e >>= 1;
        if (e != 0) {
            base = poly_mod(base * base, m);
        }
    }
    return result;
}

Residue poly_eval(const FpPolynomial& f, Residue x) {
    const auto& F = f.field();
    x = F.reduce_u64(x);
    Residue acc = 0;
    for (std::size_t k = f.coeffs().size(); k-- > 0;) {
        acc = F.add(F.mul(acc, x), f.coeffs()[k]);
    }
    return acc;
}

namespace {

// Advance a monic candidate's lower coefficients as a base-p odometer whose
// most significant digit is the s^(d-1) coefficient. Returns false on wrap.
bool next_monic(std::vector<Residue>& c, Residue p) {
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        if (++c[k] < p) {
            return true;
        }
        c[k] = 0;
    }
    return false;
}

} // namespace

std::vector<IrreducibleFactor> factor_irreducible(const FpPolynomial& f, std::uint64_t guard) {
    if (f.degree() < 1 || !f.is_monic()) {
        throw PreconditionError("factor_irreducible: input must be monic of degree >= 1");
    }
    const auto& F = f.field();
    std::vector<IrreducibleFactor> factors;
    FpPolynomial rest = f;
    std::uint64_t tried = 0;
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        // Lexicographic over (c_{d-1}, ..., c_0) means c_0 varies fastest.
        std::vector<Residue> c(static_cast<std::size_t>(d) + 1, 0);
        c.back() = 1;
        do {
            if (++tried > guard) {
                throw GuardExceeded("factor_irreducible: more than " + std::to_string(guard) +
                                    " candidate divisors");
            }
            FpPolynomial g(c, F);
            unsigned mult = 0;
            while (rest.degree() >= d) {
                auto [q, r] = poly_divmod(rest, g);
                if (!r.is_zero()) {
                    break;
                }
                rest = std::move(q);
                ++mult;
            }
            if (mult > 0) {
                factors.push_back({g, mult});
            }
        } while (2 * d <= rest.degree() && next_monic(c, F.modulus()));
    }
    if (rest.degree() >= 1) {
        factors.push_back({rest, 1});
    }
    return factors;
}

bool is_irreducible(const FpPolynomial& f, std::uint64_t guard) {
    if (f.degree() < 1) {
        return false;
    }
    auto factors = factor_irreducible(f.monic(), guard);
    return factors.size() == 1 && factors.front().multiplicity == 1;
}

std::uint64_t poly_order(const FpPolynomial& g, std::uint64_t guard) {
    if (g.degree() < 1) {
        throw PreconditionError("poly_order: polynomial must be nonconstant");
    }
    if (g.coeff(0) == 0) {
        throw PreconditionError("poly_order: g(0) = 0, order undefined");
    }
    const auto& F = g.field();
    const FpPolynomial m = g.monic();
    const auto& mc = m.coeffs();
    const std::size_t d = mc.size() - 1;
    // x holds s^r mod m as d coefficients.
    std::vector<Residue> x(d, 0);
    x[0] = 1;
    auto is_one = [&] {
        if (x[0] != 1) {
            return false;
        }
        return std::all_of(x.begin() + 1, x.end(), [](Residue v) { return v == 0; });
    };
    for (std::uint64_t r = 1; r <= guard; ++r) {
        // multiply by s, then reduce the s^d term using s^d = -sum mc[k] s^k
        Residue top = x[d - 1];
        for (std::size_t k = d - 1; k > 0; --k) {
            x[k] = x[k - 1];
        }
        x[0] = 0;
        if (top != 0) {
            for (std::size_t k = 0; k < d; ++k) {
                x[k] = F.sub(x[k], F.mul(top, mc[k]));
            }
        }
        if (is_one()) {
            return r;
        }
    }
    throw GuardExceeded("poly_order: no order found within " + std::to_string(guard) + " steps");
}

namespace {

// Distinct roots of a squarefree f that splits into linear factors over F_p.
void split_roots(const FpPolynomial& f, std::vector<Residue>& out) {
    const auto& F = f.field();
    const Residue p = F.modulus();
    if (f.degree() <= 0) {
        return;
    }
    if (f.degree() == 1) {
        out.push_back(F.neg(F.mul(f.coeff(0), F.inv(f.coeff(1)))));
        return;
    }
    if (p == 2) {
        for (Residue a = 0; a < 2; ++a) {
            if (poly_eval(f, a) == 0) {
                out.push_back(a);
            }
        }
        return;
    }
    // Deterministic equal-degree splitting: gcd(f, (s + a)^((p-1)/2) - 1) for a = 0, 1, ...
    for (Residue a = 0; a < p; ++a) {
        FpPolynomial shifted = FpPolynomial({a, 1}, F);
        FpPolynomial h = poly_powmod(shifted, (p - 1) / 2, f) - FpPolynomial::constant(1, F);
        FpPolynomial g = poly_gcd(f, h);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            split_roots(g, out);
            split_roots(poly_divmod(f, g).first.monic(), out);
            return;
        }
    }
}

} // namespace

std::vector<Residue> poly_roots(const FpPolynomial& f) {
    if (f.is_zero()) {
        throw PreconditionError("poly_roots: zero polynomial has every element as a root");
    }
    const auto& F = f.field();
    std::vector<Residue> roots;
    if (f.degree() < 1) {
        return roots;
    }
    FpPolynomial m = f.monic();
    // Product of the distinct linear factors: gcd(f, s^p - s).
    FpPolynomial s = FpPolynomial::monomial(1, 1, F);
    FpPolynomial sp = poly_powmod(s, F.modulus(), m);
    FpPolynomial lin = poly_gcd(m, sp - s);
    std::vector<Residue> distinct;
    split_roots(lin, distinct);
    for (Residue r : distinct) {
        FpPolynomial x = FpPolynomial::linear(r, F);
        FpPolynomial rest = m;
        while (rest.degree() >= 1) {
            auto [q, rem] = poly_divmod(rest, x);
            if (!rem.is_zero()) {
                break;
            }
            roots.push_back(r);
            rest = std::move(q);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace ffc
