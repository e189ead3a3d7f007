#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffc/linalg.hpp"

namespace ffc {

// cycle length -> number of cycles of that length
using CycleInventory = std::map<std::uint64_t, std::uint64_t>;

struct ConsensusReport {
    bool is_row_stochastic = false;
    bool is_column_stochastic = false;
    bool is_nilpotent = false;
    bool achieves_consensus = false;
    bool achieves_average_consensus = false;
    // Why average consensus fails, empty when it holds.
    std::string average_reason{};
    FpPolynomial char_poly;
    std::optional<std::uint64_t> convergence_time{};
    std::optional<FpVector> pi{};
};

bool is_row_stochastic(const FpMatrix& a);
bool is_column_stochastic(const FpMatrix& a);
// A^n = 0, by repeated squaring with early exit.
bool is_nilpotent(const FpMatrix& a);

// s^(n-1) (s - 1)
FpPolynomial consensus_char_poly(std::size_t n, const PrimeField& field);

/// Certify consensus by the characteristic-polynomial criterion. When
/// consensus holds, T and pi come from the powers A^0, A^1, ... up to the
/// first repeat, so A^T = 1 pi.
ConsensusReport certify_consensus(const FpMatrix& a);

// Unique pi with pi A = pi, pi 1 = 1, by elimination. Throws PreconditionError
// for a non-consensus matrix.
FpVector consensus_functional(const FpMatrix& a);

// Least T with A^T = A^(T+1). Throws PreconditionError for a non-consensus matrix.
std::uint64_t convergence_time(const FpMatrix& a);

/// Functional graph v -> A v on all p^n states, indexed by `encode_state`.
struct TransitionGraph {
    PrimeField field;
    std::size_t n = 0;
    std::vector<std::uint32_t> successor{};
    std::vector<bool> on_cycle{};
    CycleInventory cycle_inventory{};

    std::uint64_t state_count() const noexcept { return successor.size(); }
    std::uint64_t cycle_count() const noexcept;
};

TransitionGraph build_transition_graph(const FpMatrix& a, std::uint64_t guard = default_state_guard);

// Exactly p cycles, all self-loops at the states alpha 1.
bool consensus_by_cycles(const TransitionGraph& tg);

struct InverseRecursionResult {
    // Stabilized S^T = S^(T+1) with T < n.
    bool converged = false;
    // Stabilized at all within max_steps.
    bool stabilized = false;
    std::uint64_t limiting_set_size = 0;
    // T, the first index with S^T = S^(T+1) (or max_steps when not stabilized).
    std::uint64_t steps = 0;
    // Sorted state indices of the last set computed.
    std::vector<std::uint64_t> members;
};

/// S^0 = {alpha 1}, S^(t+1) = A^-1(S^t). Sets are capped by `guard`.
InverseRecursionResult inverse_recursion(const FpMatrix& a, Residue alpha, std::uint64_t max_steps,
                                         std::uint64_t guard = default_state_guard);

// Consensus iff converged and |S_alpha| = p^(n-1), for row-stochastic A.
bool consensus_by_inverse_recursion(const FpMatrix& a, Residue alpha);

// Two disjoint functional graphs combined: cycles a and b give gcd(a,b) cycles of lcm(a,b).
CycleInventory combine_inventories(const CycleInventory& x, const CycleInventory& y);

/// Cycle inventory of the transition graph predicted from the irreducible
/// factors of char_poly(A). For each factor g != s of multiplicity m, the
/// vectors annihilated by g(A)^h but not g(A)^(h-1) lie on cycles of length
/// ord(g^h); their number is p^(d_h) - p^(d_(h-1)), d_h = nullity(g(A)^h).
/// Primary components combine with `combine_inventories`.
CycleInventory predict_cycle_structure(const FpMatrix& a, std::uint64_t guard = default_factor_guard);

} // namespace ffc
