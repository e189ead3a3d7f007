#include "ffc/linalg.hpp"

#include <algorithm>
#include <string>

namespace ffc {

RrefResult rref(const FpMatrix& a) {
    const auto& f = a.field();
    FpMatrix r = a;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t piv = row;
        while (piv < r.rows() && r(piv, col) == 0) {
            ++piv;
        }
        if (piv == r.rows()) {
            continue;
        }
        if (piv != row) {
            std::swap_ranges(r.row(piv).begin(), r.row(piv).end(), r.row(row).begin());
        }
        const Residue inv = f.inv(r(row, col));
        for (auto& v : r.row(row)) {
            v = f.mul(v, inv);
        }
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col) == 0) {
                continue;
            }
            const Residue factor = r(i, col);
            auto src = r.row(row);
            auto dst = r.row(i);
            for (std::size_t j = col; j < r.cols(); ++j) {
                dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), pivots.size(), std::move(pivots)};
}

std::size_t rank(const FpMatrix& a) { return rref(a).rank; }

std::vector<FpVector> kernel_basis(const FpMatrix& a) {
    const auto& f = a.field();
    auto [r, rk, pivots] = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    std::vector<FpVector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) {
            continue;
        }
        FpVector v(a.cols(), 0);
        v[free] = 1;
        for (std::size_t k = 0; k < rk; ++k) {
            v[pivots[k]] = f.neg(r(k, free));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

AffineSubset::AffineSubset(PrimeField field, std::size_t dim, std::optional<FpVector> particular,
                           std::vector<FpVector> kernel_basis)
    : field_(field), dim_(dim), particular_(std::move(particular)), kernel_(std::move(kernel_basis)) {
    if (particular_ && particular_->size() != dim_) {
        throw DimensionMismatch("affine subset: particular solution has wrong length");
    }
    for (const auto& k : kernel_) {
        if (k.size() != dim_) {
            throw DimensionMismatch("affine subset: kernel vector has wrong length");
        }
    }
}

std::uint64_t AffineSubset::cardinality() const {
    if (is_empty()) {
        return 0;
    }
    auto c = checked_power(field_.modulus(), kernel_.size());
    if (c == 0) {
        throw GuardExceeded("affine subset cardinality overflows 64 bits");
    }
    return c;
}

bool AffineSubset::contains(std::span<const Residue> x) const {
    if (is_empty() || x.size() != dim_) {
        return false;
    }
    // x - particular must lie in span(kernel): rank test on the stacked rows.
    FpMatrix m(kernel_.size() + 1, dim_, field_);
    for (std::size_t k = 0; k < kernel_.size(); ++k) {
        std::copy(kernel_[k].begin(), kernel_[k].end(), m.row(k).begin());
    }
    for (std::size_t j = 0; j < dim_; ++j) {
        m(kernel_.size(), j) = field_.sub(x[j], (*particular_)[j]);
    }
    return rank(m) == kernel_.size();
}

void AffineSubset::for_each(const std::function<void(const FpVector&)>& visit, std::uint64_t guard) const {
    if (is_empty()) {
        return;
    }
    const auto total = cardinality();
    if (total > guard) {
        throw GuardExceeded("affine subset has " + std::to_string(total) + " members, guard is " +
                            std::to_string(guard));
    }
    const Residue p = field_.modulus();
    std::vector<Residue> digits(kernel_.size(), 0);
    FpVector x = *particular_;
    for (std::uint64_t n = 0; n < total; ++n) {
        visit(x);
        // Odometer step: a digit wrapping from p-1 to 0 adds its basis vector once more.
        for (std::size_t k = 0; k < digits.size(); ++k) {
            for (std::size_t j = 0; j < dim_; ++j) {
                x[j] = field_.add(x[j], kernel_[k][j]);
            }
            if (++digits[k] < p) {
                break;
            }
            digits[k] = 0;
        }
    }
}

std::vector<FpVector> AffineSubset::members(std::uint64_t guard) const {
    std::vector<FpVector> out;
    for_each([&](const FpVector& x) { out.push_back(x); }, guard);
    return out;
}

AffineSubset preimage(const FpMatrix& a, std::span<const Residue> v) {
    if (v.size() != a.rows()) {
        throw DimensionMismatch("preimage: vector length " + std::to_string(v.size()) + " != rows " +
                                std::to_string(a.rows()));
    }
    const auto& f = a.field();
    FpMatrix aug(a.rows(), a.cols() + 1, f);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::copy(a.row(i).begin(), a.row(i).end(), aug.row(i).begin());
        aug(i, a.cols()) = f.reduce_u64(v[i]);
    }
    auto [r, rk, pivots] = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) {
        return AffineSubset::empty(f, a.cols());
    }
    FpVector particular(a.cols(), 0);
    for (std::size_t k = 0; k < rk; ++k) {
        particular[pivots[k]] = r(k, a.cols());
    }
    return AffineSubset(f, a.cols(), std::move(particular), kernel_basis(a));
}

FpPolynomial char_poly(const FpMatrix& a) {
    if (!a.is_square()) {
        throw DimensionMismatch("char_poly: matrix is not square");
    }
    const auto& f = a.field();
    const std::size_t n = a.rows();
    FpMatrix h = a;

    // Hessenberg reduction: eliminate below the subdiagonal column by column.
    // Each step is a similarity H <- E H E^-1 with elementary E.
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = m;
        while (piv < n && h(piv, m - 1) == 0) {
            ++piv;
        }
        if (piv == n) {
            continue;
        }
        if (piv != m) {
            std::swap_ranges(h.row(piv).begin(), h.row(piv).end(), h.row(m).begin());
            for (std::size_t i = 0; i < n; ++i) {
                std::swap(h(i, piv), h(i, m));
            }
        }
        const Residue inv = f.inv(h(m, m - 1));
        for (std::size_t i = m + 1; i < n; ++i) {
            const Residue u = f.mul(h(i, m - 1), inv);
            if (u == 0) {
                continue;
            }
            // row_i -= u row_m
            auto src = h.row(m);
            auto dst = h.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                dst[j] = f.sub(dst[j], f.mul(u, src[j]));
            }
            // col_m += u col_i
            for (std::size_t r = 0; r < n; ++r) {
                h(r, m) = f.add(h(r, m), f.mul(u, h(r, i)));
            }
        }
    }

    // Determinant recurrence for det(sI - H):
    // P_k = (s - h_kk) P_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) P_{i-1}
    std::vector<std::vector<Residue>> polys(n + 1);
    polys[0] = {1};
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t c = k - 1; // zero-based column
        std::vector<Residue> pk(k + 1, 0);
        const auto& prev = polys[k - 1];
        for (std::size_t d = 0; d < prev.size(); ++d) {
            pk[d + 1] = f.add(pk[d + 1], prev[d]);
            pk[d] = f.sub(pk[d], f.mul(h(c, c), prev[d]));
        }
        Residue prod = 1;
        for (std::size_t i = c; i-- > 0;) {
            prod = f.mul(prod, h(i + 1, i));
            if (prod == 0) {
                break;
            }
            const Residue coef = f.mul(h(i, c), prod);
            if (coef == 0) {
                continue;
            }
            const auto& q = polys[i];
            for (std::size_t d = 0; d < q.size(); ++d) {
                pk[d] = f.sub(pk[d], f.mul(coef, q[d]));
            }
        }
        polys[k] = std::move(pk);
    }
    return FpPolynomial(std::move(polys[n]), f);
}

std::vector<Residue> eigenvalues_in_field(const FpMatrix& a) { return poly_roots(char_poly(a)); }

FpMatrix eval_matrix_polynomial(const FpPolynomial& g, const FpMatrix& a) {
    require_same_field(g.field(), a.field(), "eval_matrix_polynomial");
    if (!a.is_square()) {
        throw DimensionMismatch("eval_matrix_polynomial: matrix is not square");
    }
    const auto& f = a.field();
    FpMatrix acc = FpMatrix::zero(a.rows(), a.cols(), f);
    for (std::size_t k = g.coeffs().size(); k-- > 0;) {
        acc = acc * a;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            acc(i, i) = f.add(acc(i, i), g.coeffs()[k]);
        }
    }
    return acc;
}

} // namespace ffc
