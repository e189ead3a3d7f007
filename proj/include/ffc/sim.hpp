#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffc/analysis.hpp"

namespace ffc {

// Exact rational in lowest terms with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    std::string to_string() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct SimConfig {
    FpMatrix a;
    std::uint64_t max_rounds;
    std::uint64_t seed = 1;

    // max_rounds defaults to n.
    explicit SimConfig(FpMatrix matrix, std::optional<std::uint64_t> rounds = std::nullopt, std::uint64_t seed = 1);
};

struct Trajectory {
    // states[t] is x(t); states[0] is the initial state.
    std::vector<FpVector> states;
};

/// Synchronous rounds: every agent broadcasts x_i(t), then all agents set
/// x_i(t+1) = sum over in-neighbours j of a_ij x_j(t) from the same snapshot.
Trajectory run_consensus(const SimConfig& cfg, std::span<const Residue> x0);

struct AverageResult {
    Residue x_field;
    Rational x_average;
    Trajectory trajectory;
    // First round from which every agent holds x_field.
    std::uint64_t rounds_to_consensus;
    // Agent 1's estimate mod(n x_1(t), p)/n at every round.
    std::vector<Rational> agent_estimates;
};

// mod(n x_F, p) / n in lowest terms.
Rational recover_real_average(Residue x_field, std::uint64_t n, const PrimeField& field);

/// Distributed average computation. Rejects, before running: a matrix that is
/// not average-consensus, n a multiple of p, and n max(x0) > p.
AverageResult run_average(const SimConfig& cfg, std::span<const Residue> x0);

/// Camera network: undirected graph stored as oriented edges (i, j), i < j,
/// zero-based, with one relative measurement eta_k = theta_i - theta_j per edge
/// in k-encoding (angle k 2 pi / p).
class MeasurementGraph {
  public:
    MeasurementGraph(std::size_t n, PrimeField field, std::vector<std::pair<std::size_t, std::size_t>> edges,
                     FpVector eta);

    // Oriented edges {i, j} with a_ij or a_ji nonzero, i < j, sorted.
    static MeasurementGraph from_support(const FpMatrix& a, FpVector eta = {});

    std::size_t camera_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const PrimeField& field() const noexcept { return field_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
    const FpVector& eta() const noexcept { return eta_; }
    void set_eta(FpVector eta);

    // Dense m x n incidence matrix: +1 at column i, -1 at column j.
    FpMatrix incidence_matrix() const;
    // B x without materializing B.
    FpVector apply_incidence(std::span<const Residue> x) const;
    // eta = B theta.
    FpVector measurements_for(std::span<const Residue> theta) const;

  private:
    std::size_t n_;
    PrimeField field_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    FpVector eta_;
};

/// n x m matrix whose column for edge (i, j) holds a_ij at row i and -a_ji at
/// row j, so that L B = I - A for row-stochastic A supported on the graph.
FpMatrix build_L(const FpMatrix& a, const MeasurementGraph& mg);

struct PoseResult {
    FpVector theta;
    // First t with x(t) = x(t+1) within the simulated rounds.
    std::optional<std::uint64_t> rounds_to_fixed;
    // First T with e(t) = e(T) for every recorded t >= T.
    std::uint64_t error_constant_from = 0;
    // e(t) = eta - B x(t), t = 0..max_rounds.
    std::vector<FpVector> error_trace;
    std::vector<FpVector> states;
};

/// x(t+1) = A x(t) + L eta, agent-local: agent i adds a_ij eta_ij over its
/// in-neighbours, with eta_ji = -eta_ij.
PoseResult run_pose_estimation(const SimConfig& cfg, const MeasurementGraph& mg, std::span<const Residue> theta0);

struct MeasurementSplit {
    FpVector parallel;   // in Im(B)
    FpVector orthogonal; // in Im(B)^perp
};

// nullopt when Im(B) meets Im(B)^perp nontrivially (no unique split over F_p).
std::optional<MeasurementSplit> decompose_measurement(const MeasurementGraph& mg);

// (I - B sum_{tau<T} A^tau L) v
FpVector predicted_steady_error(const FpMatrix& a, const MeasurementGraph& mg, std::span<const Residue> v,
                                std::uint64_t t);

/// Static measurement noise: each edge independently, with probability
/// `fraction`, gets a uniform nonzero offset. Deterministic in `seed`.
FpVector add_measurement_noise(std::span<const Residue> eta, const PrimeField& field, double fraction,
                               std::uint64_t seed);

} // namespace ffc
