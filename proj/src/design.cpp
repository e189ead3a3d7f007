#include "ffc/design.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace ffc {

GraphSpec::GraphSpec(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) : GraphSpec(n) {
    for (auto [i, j] : edges) {
        add_edge(i, j);
    }
}

GraphSpec GraphSpec::complete(std::size_t n) {
    GraphSpec g(n);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= n; ++j) {
            g.add_edge(i, j);
        }
    }
    return g;
}

GraphSpec GraphSpec::support_of(const FpMatrix& a) {
    if (!a.is_square()) {
        throw DimensionMismatch("support_of: matrix is not square");
    }
    GraphSpec g(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) != 0) {
                g.add_edge(i + 1, j + 1);
            }
        }
    }
    return g;
}

void GraphSpec::add_edge(std::size_t i, std::size_t j) {
    if (i < 1 || i > n_ || j < 1 || j > n_) {
        throw PreconditionError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside 1.." +
                                std::to_string(n_));
    }
    auto slot = adj_[(i - 1) * n_ + (j - 1)];
    if (slot) {
        throw PreconditionError("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    slot = true;
    ++edge_count_;
}

bool GraphSpec::has_edge(std::size_t i, std::size_t j) const {
    return i >= 1 && i <= n_ && j >= 1 && j <= n_ && adj_[(i - 1) * n_ + (j - 1)];
}

std::vector<std::pair<std::size_t, std::size_t>> GraphSpec::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 1; i <= n_; ++i) {
        for (std::size_t j = 1; j <= n_; ++j) {
            if (has_edge(i, j)) {
                out.emplace_back(i, j);
            }
        }
    }
    return out;
}

std::vector<std::size_t> GraphSpec::roots() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 1; v <= n_; ++v) {
        // Information flows j -> i along edge (i, j).
        std::vector<bool> seen(n_ + 1, false);
        std::deque<std::size_t> queue{v};
        seen[v] = true;
        std::size_t reached = 1;
        while (!queue.empty()) {
            auto j = queue.front();
            queue.pop_front();
            for (std::size_t i = 1; i <= n_; ++i) {
                if (!seen[i] && has_edge(i, j)) {
                    seen[i] = true;
                    ++reached;
                    queue.push_back(i);
                }
            }
        }
        if (reached == n_) {
            out.push_back(v);
        }
    }
    return out;
}

std::optional<std::uint64_t> existence_bound_exponent(const GraphSpec& g) {
    const std::uint64_t n = g.vertex_count();
    const std::uint64_t m = g.edge_count();
    if (g.roots().empty() || 2 * m <= n * n + n) {
        return std::nullopt;
    }
    return (2 * m - n * n - n) / 2;
}

namespace {

struct RowLayout {
    std::vector<std::size_t> free_cols;
    std::optional<std::size_t> fixed_col;
};

class CandidateBuilder {
  public:
    CandidateBuilder(const GraphSpec& g, const PrimeField& field) : field_(field), n_(g.vertex_count()) {
        for (std::size_t i = 1; i <= n_; ++i) {
            RowLayout row;
            for (std::size_t j = 1; j <= n_; ++j) {
                if (g.has_edge(i, j)) {
                    row.free_cols.push_back(j - 1);
                }
            }
            if (!row.free_cols.empty()) {
                row.fixed_col = row.free_cols.back();
                row.free_cols.pop_back();
            } else {
                feasible_ = false;
            }
            free_count_ += row.free_cols.size();
            rows_.push_back(std::move(row));
        }
    }

    // Some row has no edges, so its sum cannot be 1.
    bool feasible() const noexcept { return feasible_; }
    std::size_t free_count() const noexcept { return free_count_; }

    // digits: one residue per free entry, row-major.
    FpMatrix build(const std::vector<Residue>& digits) const {
        FpMatrix a(n_, n_, field_);
        std::size_t d = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            Residue sum = 0;
            for (auto c : rows_[i].free_cols) {
                a(i, c) = digits[d++];
                sum = field_.add(sum, a(i, c));
            }
            if (rows_[i].fixed_col) {
                a(i, *rows_[i].fixed_col) = field_.sub(1, sum);
            }
        }
        return a;
    }

  private:
    PrimeField field_;
    std::size_t n_;
    std::vector<RowLayout> rows_;
    std::size_t free_count_ = 0;
    bool feasible_ = true;
};

bool accepts(const FpMatrix& a, const FpPolynomial& target, bool average) {
    if (average && !is_column_stochastic(a)) {
        return false;
    }
    return char_poly(a) == target;
}

bool lex_less(const FpMatrix& x, const FpMatrix& y) { return x.entries() < y.entries(); }

} // namespace

DesignResult enumerate_consensus_matrices(const GraphSpec& g, const PrimeField& field, const DesignOptions& options) {
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        throw PreconditionError("design: graph has no vertices");
    }
    if (options.average_constraint && n % field.modulus() == 0) {
        throw PreconditionError("design: average consensus is impossible when n is a multiple of p");
    }
    DesignResult result;
    result.existence_bound_exponent = existence_bound_exponent(g);
    const CandidateBuilder builder(g, field);
    const FpPolynomial target = consensus_char_poly(n, field);
    const Residue p = field.modulus();

    if (!builder.feasible()) {
        result.search_exhaustive = true;
        result.total_count = 0;
        return result;
    }

    const std::uint64_t space = checked_power(p, builder.free_count());
    const bool exhaustive = space != 0 && space <= options.exhaustive_limit;
    if (!exhaustive && !options.allow_sampling) {
        throw GuardExceeded("design: " + std::to_string(p) + "^" + std::to_string(builder.free_count()) +
                            " candidates exceed the exhaustive limit " + std::to_string(options.exhaustive_limit));
    }

    std::vector<Residue> digits(builder.free_count(), 0);
    if (exhaustive) {
        std::uint64_t count = 0;
        for (std::uint64_t k = 0; k < space; ++k) {
            FpMatrix a = builder.build(digits);
            if (accepts(a, target, options.average_constraint)) {
                ++count;
                if (!options.max_results || result.matrices.size() < *options.max_results) {
                    result.matrices.push_back(std::move(a));
                }
            }
            // Last free entry varies fastest.
            for (std::size_t d = digits.size(); d-- > 0;) {
                if (++digits[d] < p) {
                    break;
                }
                digits[d] = 0;
            }
        }
        result.candidates_examined = space;
        result.total_count = count;
        result.search_exhaustive = true;
    } else {
        std::mt19937_64 rng(options.seed);
        for (std::uint64_t k = 0; k < options.samples; ++k) {
            for (auto& d : digits) {
                d = static_cast<Residue>(rng() % p);
            }
            FpMatrix a = builder.build(digits);
            if (!accepts(a, target, options.average_constraint)) {
                continue;
            }
            auto pos = std::lower_bound(result.matrices.begin(), result.matrices.end(), a, lex_less);
            if (pos == result.matrices.end() || *pos != a) {
                result.matrices.insert(pos, std::move(a));
            }
            if (options.max_results && result.matrices.size() >= *options.max_results) {
                result.candidates_examined = k + 1;
                break;
            }
            result.candidates_examined = k + 1;
        }
        if (result.candidates_examined == 0) {
            result.candidates_examined = options.samples;
        }
        result.search_exhaustive = false;
    }
    std::sort(result.matrices.begin(), result.matrices.end(), lex_less);
    return result;
}

FpMatrix fully_connected_design(std::span<const Residue> v, const PrimeField& field) {
    if (v.empty()) {
        throw PreconditionError("fully_connected_design: empty weight vector");
    }
    Residue sum = 0;
    for (auto x : v) {
        sum = field.add(sum, field.reduce_u64(x));
    }
    if (sum != 1) {
        throw PreconditionError("fully_connected_design: weights sum to " + std::to_string(sum) + ", not 1");
    }
    FpMatrix a(v.size(), v.size(), field);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            a(i, j) = field.reduce_u64(v[j]);
        }
    }
    return a;
}

FpMatrix spanning_tree_design(const GraphSpec& g, const PrimeField& field) {
    const std::size_t n = g.vertex_count();
    const auto roots = g.roots();
    if (roots.empty()) {
        throw PreconditionError("spanning_tree_design: graph has no root");
    }
    auto root = std::find_if(roots.begin(), roots.end(), [&](std::size_t v) { return g.has_edge(v, v); });
    if (root == roots.end()) {
        throw PreconditionError("spanning_tree_design: no root carries a self-loop");
    }
    FpMatrix a(n, n, field);
    a(*root - 1, *root - 1) = 1;
    std::vector<bool> placed(n + 1, false);
    placed[*root] = true;
    std::vector<std::size_t> level{*root};
    // Level by level; each new vertex attaches to the lowest-index parent on the previous level.
    while (!level.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i = 1; i <= n; ++i) {
            if (placed[i]) {
                continue;
            }
            for (auto parent : level) {
                if (g.has_edge(i, parent)) {
                    a(i - 1, parent - 1) = 1;
                    placed[i] = true;
                    next.push_back(i);
                    break;
                }
            }
        }
        level = std::move(next);
    }
    return a;
}

FpMatrix kronecker_compose(const std::vector<FpMatrix>& factors) {
    if (factors.empty()) {
        throw PreconditionError("kronecker_compose: no factors");
    }
    for (const auto& m : factors) {
        require_same_field(factors.front().field(), m.field(), "kronecker_compose");
        if (!m.is_square() || !is_row_stochastic(m) || char_poly(m) != consensus_char_poly(m.rows(), m.field())) {
            throw PreconditionError("kronecker_compose: factor does not achieve consensus");
        }
    }
    FpMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kronecker(out, factors[k]);
    }
    return out;
}

} // namespace ffc
