#pragma once

#include <doctest.h>

#include "ffc/matrix.hpp"
#include "ffc/polynomial.hpp"
#include "oracles.hpp"

namespace testing {

inline ffc::FpMatrix to_fp(const oracle::Mat& m, std::uint64_t p) {
    ffc::PrimeField f(p);
    ffc::FpMatrix a(m.size(), m[0].size(), f);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) a(i, j) = f.reduce(m[i][j]);
    return a;
}

inline oracle::Mat to_plain(const ffc::FpMatrix& a) {
    oracle::Mat m(a.rows(), oracle::Vec(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    return m;
}

inline oracle::Vec to_plain(const ffc::FpVector& x) { return {x.begin(), x.end()}; }

inline oracle::Vec coeffs(const ffc::FpPolynomial& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

inline ffc::FpMatrix a1() { return ffc::FpMatrix::from_rows({{2, 1, 1}, {2, 1, 1}, {2, 1, 1}}, ffc::PrimeField(3)); }
inline ffc::FpMatrix a2() { return ffc::FpMatrix::from_rows({{2, 1, 1}, {1, 2, 1}, {1, 2, 1}}, ffc::PrimeField(3)); }
inline ffc::FpMatrix a3() { return ffc::FpMatrix::from_rows({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}, ffc::PrimeField(3)); }
inline ffc::FpMatrix f11() { return ffc::FpMatrix::from_rows({{9, 3, 0}, {1, 9, 2}, {0, 7, 5}}, ffc::PrimeField(11)); }
inline ffc::FpMatrix f5() {
    return ffc::FpMatrix::from_rows({{0, 4, 2, 0}, {1, 1, 0, 4}, {0, 0, 2, 4}, {0, 1, 2, 3}}, ffc::PrimeField(5));
}

} // namespace testing
