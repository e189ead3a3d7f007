#include "ffc/matrix.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ffc {

namespace {

void require_dims(bool ok, const char* what, std::size_t r1, std::size_t c1, std::size_t r2, std::size_t c2) {
    if (!ok) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(r1) + "x" + std::to_string(c1) + " vs " +
                                std::to_string(r2) + "x" + std::to_string(c2));
    }
}

// How many products (p-1)^2 can be accumulated in a uint64 before a reduction.
std::size_t lazy_block(Residue p) {
    std::uint64_t sq = std::uint64_t{p - 1} * (p - 1);
    if (sq == 0) {
        return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(std::numeric_limits<std::uint64_t>::max() / sq - 1);
}

} // namespace

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, PrimeField field, std::vector<Residue> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatch("matrix entry count " + std::to_string(data_.size()) + " != " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    for (auto& v : data_) {
        v = field_.reduce_u64(v);
    }
}

FpMatrix FpMatrix::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows, PrimeField field) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    FpMatrix m(r, c, field);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw DimensionMismatch("ragged matrix rows");
        }
        std::size_t j = 0;
        for (auto v : row) {
            m(i, j++) = field.reduce(v);
        }
        ++i;
    }
    return m;
}

FpMatrix FpMatrix::identity(std::size_t n, PrimeField field) {
    FpMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

FpVector FpMatrix::column(std::size_t j) const {
    FpVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        c[i] = (*this)(i, j);
    }
    return c;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

bool FpMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
}

std::size_t FpMatrix::nonzero_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(data_.begin(), data_.end(), [](Residue v) { return v != 0; }));
}

FpMatrix mat_mul(const FpMatrix& a, const FpMatrix& b) {
    require_same_field(a.field(), b.field(), "mat_mul");
    require_dims(a.cols() == b.rows(), "mat_mul", a.rows(), a.cols(), b.rows(), b.cols());
    const auto& f = a.field();
    const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
    const std::size_t block = lazy_block(f.modulus());
    FpMatrix c(n, m, f);
    std::vector<std::uint64_t> acc(m);
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        std::size_t pending = 0;
        for (std::size_t k = 0; k < inner; ++k) {
            const std::uint64_t aik = a(i, k);
            if (aik == 0) {
                continue;
            }
            const Residue* brow = b.row(k).data();
            for (std::size_t j = 0; j < m; ++j) {
                acc[j] += aik * brow[j];
            }
            if (++pending == block) {
                for (auto& v : acc) {
                    v %= f.modulus();
                }
                pending = 1;
            }
        }
        auto crow = c.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            crow[j] = f.reduce_u64(acc[j]);
        }
    }
    return c;
}

FpVector mat_vec(const FpMatrix& a, std::span<const Residue> x) {
    require_dims(a.cols() == x.size(), "mat_vec", a.rows(), a.cols(), x.size(), 1);
    const auto& f = a.field();
    FpVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t acc = 0;
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            acc = (acc + std::uint64_t{r[j]} * x[j]) % f.modulus();
        }
        y[i] = static_cast<Residue>(acc);
    }
    return y;
}

FpVector vec_mat(std::span<const Residue> x, const FpMatrix& a) {
    require_dims(a.rows() == x.size(), "vec_mat", 1, x.size(), a.rows(), a.cols());
    const auto& f = a.field();
    FpVector y(a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (x[i] == 0) {
            continue;
        }
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            y[j] = f.add(y[j], f.mul(x[i], r[j]));
        }
    }
    return y;
}

FpMatrix mat_add(const FpMatrix& a, const FpMatrix& b) {
    require_same_field(a.field(), b.field(), "mat_add");
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "mat_add", a.rows(), a.cols(), b.rows(), b.cols());
    FpMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = a.field().add(a(i, j), b(i, j));
        }
    }
    return c;
}

FpMatrix mat_sub(const FpMatrix& a, const FpMatrix& b) {
    require_same_field(a.field(), b.field(), "mat_sub");
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "mat_sub", a.rows(), a.cols(), b.rows(), b.cols());
    FpMatrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) = a.field().sub(a(i, j), b(i, j));
        }
    }
    return c;
}

FpMatrix mat_scale(const FpMatrix& a, Residue c) {
    FpMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(i, j) = a.field().mul(a(i, j), c);
        }
    }
    return r;
}

FpMatrix mat_pow(const FpMatrix& a, std::uint64_t e) {
    if (!a.is_square()) {
        throw DimensionMismatch("mat_pow: matrix is not square");
    }
    FpMatrix result = FpMatrix::identity(a.rows(), a.field());
    FpMatrix base = a;
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

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
    require_same_field(a.field(), b.field(), "kronecker");
    const auto& f = a.field();
    FpMatrix k(a.rows() * b.rows(), a.cols() * b.cols(), f);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Residue aij = a(i, j);
            if (aij == 0) {
                continue;
            }
            for (std::size_t r = 0; r < b.rows(); ++r) {
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    k(i * b.rows() + r, j * b.cols() + c) = f.mul(aij, b(r, c));
                }
            }
        }
    }
    return k;
}

FpVector make_vector(std::initializer_list<std::int64_t> values, const PrimeField& field) {
    FpVector v;
    v.reserve(values.size());
    for (auto x : values) {
        v.push_back(field.reduce(x));
    }
    return v;
}

std::uint64_t encode_state(std::span<const Residue> x, Residue p) {
    std::uint64_t index = 0;
    for (std::size_t i = x.size(); i-- > 0;) {
        index = index * p + x[i];
    }
    return index;
}

FpVector decode_state(std::uint64_t index, std::size_t n, Residue p) {
    FpVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<Residue>(index % p);
        index /= p;
    }
    return x;
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exponent) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exponent; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
            return 0;
        }
        r *= base;
    }
    return r;
}

} // namespace ffc
