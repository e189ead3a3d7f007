#pragma once

// Randomized and exhaustive property checks shared by the unit suite and the
// acceptance runner. Each returns ok plus a one-line summary.

#include <random>
#include <sstream>
#include <string>

#include "ffc/analysis.hpp"
#include "ffc/design.hpp"
#include "ffc/sim.hpp"
#include "oracles.hpp"

namespace props {

struct Outcome {
    bool ok = true;
    std::string detail;
};

inline ffc::FpMatrix to_fp(const oracle::Mat& m, oracle::Int p) {
    ffc::PrimeField f(static_cast<std::uint64_t>(p));
    ffc::FpMatrix a(m.size(), m.size(), f);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a(i, j) = f.reduce(m[i][j]);
    return a;
}

// Consensus by definition: A^n x is a multiple of 1 for every x.
inline bool consensus_by_definition(const oracle::Mat& m, oracle::Int p) {
    const std::size_t n = m.size();
    for (std::uint64_t s = 0; s < oracle::ipow(p, n); ++s) {
        auto x = oracle::decode(s, n, p);
        for (std::size_t k = 0; k < n; ++k) x = oracle::apply(m, x, p);
        for (auto v : x)
            if (v != x[0]) return false;
    }
    return true;
}

struct Tally {
    std::uint64_t matrices = 0;
    std::uint64_t consensus = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t bound_violations = 0;
};

// Char-poly, transition-graph and inverse-recursion verdicts (for every alpha)
// must agree with each other and with the definition; certified matrices must
// reach consensus within n-1 steps.
inline void check_equivalence(const oracle::Mat& m, oracle::Int p, Tally& t) {
    auto a = to_fp(m, p);
    const std::size_t n = m.size();
    const auto rep = ffc::certify_consensus(a);
    const bool by_cycles = ffc::consensus_by_cycles(ffc::build_transition_graph(a));
    const bool truth = consensus_by_definition(m, p);
    bool agree = rep.achieves_consensus == by_cycles && by_cycles == truth;
    for (oracle::Int alpha = 0; alpha < p; ++alpha)
        agree = agree && ffc::consensus_by_inverse_recursion(a, static_cast<ffc::Residue>(alpha)) == truth;
    ++t.matrices;
    t.mismatches += !agree;
    if (rep.achieves_consensus) {
        ++t.consensus;
        if (!rep.convergence_time || *rep.convergence_time + 1 > n) ++t.bound_violations;
    }
}

inline std::string describe(const Tally& t) {
    std::ostringstream os;
    os << t.matrices << " matrices, " << t.consensus << " consensus, " << t.mismatches << " disagreements, "
       << t.bound_violations << " T>n-1";
    return os.str();
}

inline Outcome equivalence_exhaustive(std::size_t n, oracle::Int p) {
    Tally t;
    const std::size_t free_per_row = n - 1;
    const std::uint64_t total = oracle::ipow(p, n * free_per_row);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        auto v = oracle::decode(idx, n * free_per_row, p);
        oracle::Mat m(n, oracle::Vec(n));
        for (std::size_t i = 0; i < n; ++i) {
            oracle::Int s = 0;
            for (std::size_t j = 0; j < free_per_row; ++j) {
                m[i][j] = v[i * free_per_row + j];
                s += m[i][j];
            }
            m[i][n - 1] = oracle::mod(1 - s, p);
        }
        check_equivalence(m, p, t);
    }
    return {t.mismatches == 0 && t.bound_violations == 0 && t.matrices == total, describe(t)};
}

// Uniform row-stochastic samples, plus perturbed rank-one matrices 1 v + N
// (N with zero row sums), which reach consensus far more often.
inline Outcome equivalence_sampled(std::size_t n, oracle::Int p, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally t;
    for (std::size_t k = 0; k < samples; ++k) check_equivalence(oracle::random_row_stochastic(n, p, rng), p, t);
    for (std::size_t k = 0; k < samples / 5; ++k) {
        oracle::Mat m(n, oracle::Vec(n, 0));
        oracle::Vec v(n);
        oracle::Int s = 0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            v[j] = static_cast<oracle::Int>(rng() % p);
            s += v[j];
        }
        v[n - 1] = oracle::mod(1 - s, p);
        for (std::size_t i = 0; i < n; ++i) m[i] = v;
        for (std::size_t i = 2; i < n; ++i) {
            oracle::Int c = static_cast<oracle::Int>(rng() % p);
            m[i][0] = oracle::mod(m[i][0] + c, p);
            m[i][1] = oracle::mod(m[i][1] - c, p);
        }
        check_equivalence(m, p, t);
    }
    return {t.mismatches == 0 && t.bound_violations == 0 && t.matrices >= samples, describe(t)};
}

// Consensus value equals pi x(0) for every initial state.
inline Outcome consensus_value(const ffc::FpMatrix& a) {
    const auto rep = ffc::certify_consensus(a);
    if (!rep.achieves_consensus) return {false, "not a consensus matrix"};
    const auto& f = a.field();
    const std::size_t n = a.rows();
    const oracle::Int p = f.modulus();
    std::uint64_t states = 0, bad = 0;
    for (std::uint64_t s = 0; s < oracle::ipow(p, n); ++s) {
        auto x = ffc::decode_state(s, n, f.modulus());
        ffc::Residue value = 0;
        for (std::size_t j = 0; j < n; ++j) value = f.add(value, f.mul((*rep.pi)[j], x[j]));
        auto traj = ffc::run_consensus(ffc::SimConfig(a, *rep.convergence_time), x);
        ++states;
        bad += traj.states.back() != ffc::FpVector(n, value);
    }
    return {bad == 0, std::to_string(states) + " states, " + std::to_string(bad) + " wrong"};
}

inline Outcome consensus_value_corpus() {
    using ffc::PrimeField;
    std::vector<ffc::FpMatrix> corpus;
    for (auto [n, p] : {std::pair<std::size_t, std::uint64_t>{2, 2}, {2, 3}, {2, 5}, {3, 2}, {3, 3}, {4, 3}, {4, 2}}) {
        ffc::DesignOptions opt;
        opt.max_results = 40;
        auto r = ffc::enumerate_consensus_matrices(ffc::GraphSpec::complete(n), PrimeField(p), opt);
        for (auto& m : r.matrices)
            if (oracle::ipow(p, n) <= 81) corpus.push_back(m);
    }
    std::uint64_t states = 0;
    for (const auto& a : corpus) {
        auto o = consensus_value(a);
        if (!o.ok) return {false, o.detail};
        states += oracle::ipow(a.field().modulus(), a.rows());
    }
    return {!corpus.empty(), std::to_string(corpus.size()) + " matrices, " + std::to_string(states) + " initial states"};
}

// Column sums of 1 conserve the state sum every round.
inline Outcome sum_conservation(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ffc::FpMatrix> corpus;
    ffc::DesignOptions opt;
    opt.average_constraint = true;
    for (auto [n, p] : {std::pair<std::size_t, std::uint64_t>{3, 5}, {2, 3}, {3, 2}, {4, 3}}) {
        auto r = ffc::enumerate_consensus_matrices(ffc::GraphSpec::complete(n), ffc::PrimeField(p), opt);
        corpus.insert(corpus.end(), r.matrices.begin(), r.matrices.end());
    }
    std::uint64_t rounds = 0, bad = 0;
    for (const auto& a : corpus) {
        const auto& f = a.field();
        for (int trial = 0; trial < 5; ++trial) {
            ffc::FpVector x(a.rows());
            for (auto& v : x) v = static_cast<ffc::Residue>(rng() % f.modulus());
            auto traj = ffc::run_consensus(ffc::SimConfig(a, 2 * a.rows()), x);
            ffc::Residue s0 = 0;
            for (auto v : x) s0 = f.add(s0, v);
            for (const auto& st : traj.states) {
                ffc::Residue s = 0;
                for (auto v : st) s = f.add(s, v);
                bad += s != s0;
                ++rounds;
            }
        }
    }
    return {bad == 0 && !corpus.empty(),
            std::to_string(corpus.size()) + " matrices, " + std::to_string(rounds) + " rounds, " + std::to_string(bad) +
                " violations"};
}

// Three agents over F_5: (2,2,2) must be refused because n*max exceeds p,
// while (0,0,1) recovers 1/3.
inline Outcome wraparound_counterexample() {
    ffc::PrimeField f(5);
    auto a = ffc::FpMatrix::from_rows({{2, 3, 1}, {2, 4, 0}, {2, 4, 0}}, f);
    bool refused = false;
    try {
        ffc::run_average(ffc::SimConfig(a), ffc::FpVector{2, 2, 2});
    } catch (const ffc::PreconditionError&) {
        refused = true;
    }
    // what the field iteration would report for (2,2,2): consensus on 2, but
    // the recovered value is 6 mod 5 over 3, not the true average 2
    auto traj = ffc::run_consensus(ffc::SimConfig(a), ffc::FpVector{2, 2, 2});
    bool wrong_if_accepted = ffc::recover_real_average(traj.states.back()[0], 3, f) != ffc::Rational(2, 1);
    auto ok = ffc::run_average(ffc::SimConfig(a), ffc::FpVector{0, 0, 1});
    bool third = ok.x_average == ffc::Rational(1, 3);
    return {refused && wrong_if_accepted && third,
            std::string("(2,2,2) refused=") + (refused ? "yes" : "no") + ", (0,0,1) -> " + ok.x_average.to_string()};
}

// n = p = 3 on the complete graph: no consensus matrix averages.
inline Outcome multiple_of_p_impossibility() {
    ffc::PrimeField f(3);
    auto r = ffc::enumerate_consensus_matrices(ffc::GraphSpec::complete(3), f);
    std::uint64_t column_stochastic = 0, averaging = 0;
    for (const auto& m : r.matrices) {
        auto rep = ffc::certify_consensus(m);
        column_stochastic += rep.is_column_stochastic;
        averaging += rep.achieves_average_consensus;
    }
    return {r.search_exhaustive && !r.matrices.empty() && column_stochastic == 0 && averaging == 0,
            std::to_string(r.matrices.size()) + " consensus matrices, " + std::to_string(column_stochastic) +
                " with unit column sums, " + std::to_string(averaging) + " averaging"};
}

} // namespace props
