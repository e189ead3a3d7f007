#include "ffc/analysis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_set>

namespace ffc {

namespace {

void require_square(const FpMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw DimensionMismatch(std::string(what) + ": matrix is not square");
    }
}

// Power iteration A^0, A^1, ... until a repeat; returns (T, A^T).
std::pair<std::uint64_t, FpMatrix> stabilize_powers(const FpMatrix& a) {
    const std::size_t n = a.rows();
    FpMatrix current = FpMatrix::identity(n, a.field());
    for (std::uint64_t t = 0; t <= n; ++t) {
        FpMatrix next = t == 0 ? a : current * a;
        if (next == current) {
            return {t, std::move(current)};
        }
        current = std::move(next);
    }
    throw PreconditionError("matrix powers did not stabilize within n steps");
}

bool consensus_criterion(const FpMatrix& a, const FpPolynomial& cp) {
    return is_row_stochastic(a) && cp == consensus_char_poly(a.rows(), a.field());
}

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        throw GuardExceeded("cycle count overflows 64 bits");
    }
    return a * b;
}

} // namespace

bool is_row_stochastic(const FpMatrix& a) {
    require_square(a, "is_row_stochastic");
    const auto& f = a.field();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Residue s = 0;
        for (auto v : a.row(i)) {
            s = f.add(s, v);
        }
        if (s != 1) {
            return false;
        }
    }
    return true;
}

bool is_column_stochastic(const FpMatrix& a) { return is_row_stochastic(a.transpose()); }

bool is_nilpotent(const FpMatrix& a) {
    require_square(a, "is_nilpotent");
    FpMatrix power = a;
    for (std::uint64_t e = 1; e < a.rows(); e *= 2) {
        if (power.is_zero()) {
            return true;
        }
        power = power * power;
    }
    return power.is_zero();
}

FpPolynomial consensus_char_poly(std::size_t n, const PrimeField& field) {
    std::vector<Residue> c(n + 1, 0);
    c[n] = 1;
    c[n - 1] = field.neg(1);
    return FpPolynomial(std::move(c), field);
}

ConsensusReport certify_consensus(const FpMatrix& a) {
    require_square(a, "certify_consensus");
    const std::size_t n = a.rows();
    const auto& f = a.field();
    ConsensusReport report{.char_poly = char_poly(a)};
    report.is_row_stochastic = is_row_stochastic(a);
    report.is_column_stochastic = is_column_stochastic(a);
    // Cayley-Hamilton: A^n = 0 iff P_A = s^n.
    report.is_nilpotent = report.char_poly == FpPolynomial::monomial(n, 1, f);
    report.achieves_consensus = report.is_row_stochastic && report.char_poly == consensus_char_poly(n, f);

    if (report.achieves_consensus) {
        auto [t, limit] = stabilize_powers(a);
        report.convergence_time = t;
        report.pi = FpVector(limit.row(0).begin(), limit.row(0).end());
    }

    if (!report.achieves_consensus) {
        report.average_reason = "matrix does not achieve consensus";
    } else if (n % f.modulus() == 0) {
        report.average_reason = "n is a multiple of p";
    } else if (!report.is_column_stochastic) {
        report.average_reason = "column sums are not all 1";
    } else {
        report.achieves_average_consensus = true;
    }
    return report;
}

FpVector consensus_functional(const FpMatrix& a) {
    require_square(a, "consensus_functional");
    if (!consensus_criterion(a, char_poly(a))) {
        throw PreconditionError("consensus_functional: matrix does not achieve consensus");
    }
    const auto& f = a.field();
    const std::size_t n = a.rows();
    // Unknown pi^T: (A^T - I) pi^T = 0 and 1^T pi^T = 1.
    FpMatrix sys(n + 1, n + 1, f);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            sys(i, j) = a(j, i);
        }
        sys(i, i) = f.sub(sys(i, i), 1);
    }
    for (std::size_t j = 0; j < n; ++j) {
        sys(n, j) = 1;
    }
    sys(n, n) = 1;
    auto [r, rk, pivots] = rref(sys);
    if (rk != n || pivots.back() != n - 1) {
        throw PreconditionError("consensus_functional: left fixed vector is not unique");
    }
    FpVector pi(n);
    for (std::size_t k = 0; k < n; ++k) {
        pi[pivots[k]] = r(k, n);
    }
    return pi;
}

std::uint64_t convergence_time(const FpMatrix& a) {
    require_square(a, "convergence_time");
    if (!consensus_criterion(a, char_poly(a))) {
        throw PreconditionError("convergence_time: matrix does not achieve consensus");
    }
    return stabilize_powers(a).first;
}

std::uint64_t TransitionGraph::cycle_count() const noexcept {
    std::uint64_t total = 0;
    for (const auto& [len, count] : cycle_inventory) {
        total += count;
    }
    return total;
}

TransitionGraph build_transition_graph(const FpMatrix& a, std::uint64_t guard) {
    require_square(a, "build_transition_graph");
    const auto& f = a.field();
    const Residue p = f.modulus();
    const std::size_t n = a.rows();
    const std::uint64_t states = checked_power(p, n);
    const std::uint64_t cap = std::min<std::uint64_t>(guard, std::numeric_limits<std::uint32_t>::max());
    if (states == 0 || states > cap) {
        throw GuardExceeded("transition graph needs " + std::to_string(p) + "^" + std::to_string(n) +
                            " states, guard is " + std::to_string(cap));
    }

    TransitionGraph tg{.field = f, .n = n};
    tg.successor.resize(states);
    std::vector<std::uint64_t> place(n);
    for (std::size_t i = 0; i < n; ++i) {
        place[i] = i == 0 ? 1 : place[i - 1] * p;
    }

    // Walk states in index order keeping y = A x; bumping digit k adds column k,
    // and a digit wrapping from p-1 to 0 also adds column k (-(p-1) = 1).
    std::vector<Residue> x(n, 0), y(n, 0);
    const FpMatrix cols = a.transpose();
    auto add_column = [&](std::size_t k) {
        auto c = cols.row(k);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = f.add(y[i], c[i]);
        }
    };
    for (std::uint64_t s = 0; s < states; ++s) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < n; ++i) {
            idx += y[i] * place[i];
        }
        tg.successor[s] = static_cast<std::uint32_t>(idx);
        for (std::size_t k = 0; k < n; ++k) {
            add_column(k);
            if (++x[k] < p) {
                break;
            }
            x[k] = 0;
        }
    }

    // Three-colour traversal: 0 unvisited, 1 on the current path, 2 finished.
    tg.on_cycle.assign(states, false);
    std::vector<std::uint8_t> colour(states, 0);
    std::vector<std::uint32_t> path;
    for (std::uint64_t start = 0; start < states; ++start) {
        if (colour[start] != 0) {
            continue;
        }
        path.clear();
        std::uint32_t v = static_cast<std::uint32_t>(start);
        while (colour[v] == 0) {
            colour[v] = 1;
            path.push_back(v);
            v = tg.successor[v];
        }
        if (colour[v] == 1) {
            std::uint64_t len = 0;
            std::uint32_t w = v;
            do {
                tg.on_cycle[w] = true;
                w = tg.successor[w];
                ++len;
            } while (w != v);
            ++tg.cycle_inventory[len];
        }
        for (auto u : path) {
            colour[u] = 2;
        }
    }
    return tg;
}

bool consensus_by_cycles(const TransitionGraph& tg) {
    const Residue p = tg.field.modulus();
    if (tg.cycle_inventory.size() != 1 || tg.cycle_inventory.begin()->first != 1 ||
        tg.cycle_inventory.begin()->second != p) {
        return false;
    }
    for (Residue alpha = 0; alpha < p; ++alpha) {
        FpVector ones(tg.n, alpha);
        auto idx = encode_state(ones, p);
        if (tg.successor[idx] != idx) {
            return false;
        }
    }
    return true;
}

InverseRecursionResult inverse_recursion(const FpMatrix& a, Residue alpha, std::uint64_t max_steps,
                                         std::uint64_t guard) {
    require_square(a, "inverse_recursion");
    const auto& f = a.field();
    const Residue p = f.modulus();
    const std::size_t n = a.rows();
    if (max_steps < n) {
        throw PreconditionError("inverse_recursion: max_steps must be at least n");
    }
    if (checked_power(p, n) == 0) {
        throw GuardExceeded("inverse_recursion: state space does not fit in 64 bits");
    }

    InverseRecursionResult result;
    std::vector<std::uint64_t> current{encode_state(FpVector(n, f.reduce_u64(alpha)), p)};
    const auto kernel = kernel_basis(a);
    const std::uint64_t fibre = checked_power(p, kernel.size());

    for (std::uint64_t t = 0; t < max_steps; ++t) {
        std::unordered_set<std::uint64_t> next_set;
        for (auto idx : current) {
            auto fibre_set = preimage(a, decode_state(idx, n, p));
            if (fibre_set.is_empty()) {
                continue;
            }
            if (next_set.size() + fibre > guard) {
                throw GuardExceeded("inverse_recursion: set size exceeds guard " + std::to_string(guard));
            }
            fibre_set.for_each([&](const FpVector& x) { next_set.insert(encode_state(x, p)); }, guard);
        }
        std::vector<std::uint64_t> next(next_set.begin(), next_set.end());
        std::sort(next.begin(), next.end());
        if (next == current) {
            result.stabilized = true;
            result.converged = t < n;
            result.steps = t;
            result.limiting_set_size = current.size();
            result.members = std::move(current);
            return result;
        }
        current = std::move(next);
    }
    result.steps = max_steps;
    result.limiting_set_size = current.size();
    result.members = std::move(current);
    return result;
}

bool consensus_by_inverse_recursion(const FpMatrix& a, Residue alpha) {
    const std::size_t n = a.rows();
    auto r = inverse_recursion(a, alpha, std::max<std::uint64_t>(n, 1));
    return r.converged && r.limiting_set_size == checked_power(a.field().modulus(), n - 1);
}

CycleInventory combine_inventories(const CycleInventory& x, const CycleInventory& y) {
    CycleInventory out;
    for (const auto& [la, ca] : x) {
        for (const auto& [lb, cb] : y) {
            const std::uint64_t g = std::gcd(la, lb);
            out[la / g * lb] += mul_checked(mul_checked(ca, cb), g);
        }
    }
    return out;
}

CycleInventory predict_cycle_structure(const FpMatrix& a, std::uint64_t guard) {
    require_square(a, "predict_cycle_structure");
    const auto& f = a.field();
    const Residue p = f.modulus();
    const std::size_t n = a.rows();
    CycleInventory total{{1, 1}};
    const FpPolynomial s = FpPolynomial::monomial(1, 1, f);
    for (const auto& [g, mult] : factor_irreducible(char_poly(a), guard)) {
        if (g == s) {
            continue; // transient states only; the zero vector is already counted
        }
        const FpMatrix ga = eval_matrix_polynomial(g, a);
        CycleInventory component{{1, 1}};
        FpMatrix power = FpMatrix::identity(n, f);
        std::uint64_t prev_size = 1;
        const std::size_t full = static_cast<std::size_t>(g.degree()) * mult;
        for (unsigned h = 1; h <= mult; ++h) {
            power = power * ga;
            const std::size_t nullity = n - rank(power);
            const std::uint64_t size = checked_power(p, nullity);
            if (size == 0) {
                throw GuardExceeded("predict_cycle_structure: primary component too large");
            }
            if (size > prev_size) {
                const std::uint64_t len = poly_order(poly_pow(g, h), guard);
                component[len] += (size - prev_size) / len;
            }
            prev_size = size;
            if (nullity == full) {
                break;
            }
        }
        total = combine_inventories(total, component);
    }
    return total;
}

} // namespace ffc
