#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ffc/matrix.hpp"
#include "ffc/polynomial.hpp"

namespace ffc {

struct RrefResult {
    FpMatrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row-echelon form by Gauss-Jordan elimination.
RrefResult rref(const FpMatrix& a);
std::size_t rank(const FpMatrix& a);

// Basis of Ker(A), one vector per free column, with a 1 in that column.
std::vector<FpVector> kernel_basis(const FpMatrix& a);

inline constexpr std::uint64_t default_state_guard = 10'000'000;

/// {particular + sum_k c_k kernel[k]} or the empty set.
///
/// Members are enumerated lazily in base-p order of the coefficients c_k,
/// after a cardinality check against the caller's guard.
class AffineSubset {
  public:
    AffineSubset(PrimeField field, std::size_t dim, std::optional<FpVector> particular,
                 std::vector<FpVector> kernel_basis);

    static AffineSubset empty(PrimeField field, std::size_t dim) { return {field, dim, std::nullopt, {}}; }

    bool is_empty() const noexcept { return !particular_.has_value(); }
    const std::optional<FpVector>& particular() const noexcept { return particular_; }
    const std::vector<FpVector>& kernel_basis() const noexcept { return kernel_; }
    std::size_t dimension() const noexcept { return dim_; }

    // p^k, or 0 when empty. Throws GuardExceeded if it does not fit in 64 bits.
    std::uint64_t cardinality() const;

    bool contains(std::span<const Residue> x) const;

    // Calls `visit` on every member; throws GuardExceeded when cardinality > guard.
    void for_each(const std::function<void(const FpVector&)>& visit,
                  std::uint64_t guard = default_state_guard) const;
    std::vector<FpVector> members(std::uint64_t guard = default_state_guard) const;

  private:
    PrimeField field_;
    std::size_t dim_;
    std::optional<FpVector> particular_;
    std::vector<FpVector> kernel_;
};

// All x with A x = v.
AffineSubset preimage(const FpMatrix& a, std::span<const Residue> v);

/// Characteristic polynomial det(sI - A), monic of degree n.
///
/// Reduction to upper Hessenberg form by similarity transforms with pivoting,
/// followed by the Hessenberg determinant recurrence.
FpPolynomial char_poly(const FpMatrix& a);

// Roots of char_poly(A) inside F_p with multiplicity, ascending.
std::vector<Residue> eigenvalues_in_field(const FpMatrix& a);

// g(A) by Horner's rule.
FpMatrix eval_matrix_polynomial(const FpPolynomial& g, const FpMatrix& a);

} // namespace ffc
