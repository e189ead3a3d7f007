#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "ffc/field.hpp"

namespace ffc {

// Column or row vector over F_p; the field is carried by the matrix it meets.
using FpVector = std::vector<Residue>;

/// Dense row-major matrix over F_p with canonical entries.
class FpMatrix {
  public:
    FpMatrix(std::size_t rows, std::size_t cols, PrimeField field);
    FpMatrix(std::size_t rows, std::size_t cols, PrimeField field, std::vector<Residue> entries);

    // Entries are reduced mod p, so incidence-style -1 entries are accepted.
    static FpMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows, PrimeField field);
    static FpMatrix identity(std::size_t n, PrimeField field);
    static FpMatrix zero(std::size_t rows, std::size_t cols, PrimeField field) { return {rows, cols, field}; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    const PrimeField& field() const noexcept { return field_; }

    Residue operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    Residue& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

    std::span<const Residue> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<Residue> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    FpVector column(std::size_t j) const;

    const std::vector<Residue>& entries() const noexcept { return data_; }

    FpMatrix transpose() const;
    bool is_zero() const noexcept;
    std::size_t nonzero_count() const noexcept;

    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Residue> data_;
};

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b);
FpVector mat_vec(const FpMatrix& a, std::span<const Residue> x);
// Row vector times matrix: (x^T A)^T.
FpVector vec_mat(std::span<const Residue> x, const FpMatrix& a);
FpMatrix mat_add(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_sub(const FpMatrix& a, const FpMatrix& b);
FpMatrix mat_scale(const FpMatrix& a, Residue c);
FpMatrix mat_pow(const FpMatrix& a, std::uint64_t e);

inline FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) { return mat_mul(a, b); }
inline FpVector operator*(const FpMatrix& a, std::span<const Residue> x) { return mat_vec(a, x); }
inline FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) { return mat_add(a, b); }
inline FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) { return mat_sub(a, b); }

// Block layout [a_ij * B].
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);

// Reduce arbitrary integers into canonical residues.
FpVector make_vector(std::initializer_list<std::int64_t> values, const PrimeField& field);

// Base-p little-endian packing: index = sum_i x_i p^i (agent 1 least significant).
std::uint64_t encode_state(std::span<const Residue> x, Residue p);
FpVector decode_state(std::uint64_t index, std::size_t n, Residue p);

// p^n, or nullopt-like sentinel 0 when it does not fit in 64 bits.
std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent);

} // namespace ffc
