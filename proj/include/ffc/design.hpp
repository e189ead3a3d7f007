#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffc/analysis.hpp"

namespace ffc {

/// Directed interaction graph on vertices 1..n. An edge (i, j) means agent i
/// senses agent j, i.e. a_ij may be nonzero. Self-loops are ordinary edges.
class GraphSpec {
  public:
    explicit GraphSpec(std::size_t n) : n_(n), adj_(n * n, false) {}
    GraphSpec(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    static GraphSpec complete(std::size_t n);
    // Nonzero pattern of a matrix.
    static GraphSpec support_of(const FpMatrix& a);

    void add_edge(std::size_t i, std::size_t j);
    bool has_edge(std::size_t i, std::size_t j) const;

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }
    // Sorted (i, j), 1-based.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    // Vertices (1-based) with a directed path to every vertex, ascending.
    std::vector<std::size_t> roots() const;

    std::vector<std::string> labels;

  private:
    std::size_t n_;
    std::size_t edge_count_ = 0;
    std::vector<bool> adj_;
};

struct DesignOptions {
    std::uint64_t exhaustive_limit = 100'000'000;
    bool average_constraint = false;
    std::optional<std::size_t> max_results;
    // Draw random candidates instead of failing when the space exceeds exhaustive_limit.
    bool allow_sampling = false;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
};

struct DesignResult {
    std::vector<FpMatrix> matrices;
    // Exact number of solutions; only for exhaustive searches.
    std::optional<std::uint64_t> total_count;
    bool search_exhaustive = false;
    std::uint64_t candidates_examined = 0;
    // p^((2m - n^2 - n)/2) exponent when G has a root and m > (n^2 + n)/2.
    std::optional<std::uint64_t> existence_bound_exponent;
};

// Exponent of the lower bound on the number of consensus matrices, if the
// graph satisfies the existence hypotheses.
std::optional<std::uint64_t> existence_bound_exponent(const GraphSpec& g);

/// All matrices supported on G that are row-stochastic with characteristic
/// polynomial s^(n-1)(s-1). The last edge of each row is fixed by its row sum
/// before the remaining p^(m-n) candidates are enumerated row-major.
DesignResult enumerate_consensus_matrices(const GraphSpec& g, const PrimeField& field,
                                          const DesignOptions& options = {});

// Every row equal to v; requires v 1 = 1.
FpMatrix fully_connected_design(std::span<const Residue> v, const PrimeField& field);

// 0/1 matrix on a BFS spanning tree rooted at the lowest-index root with a self-loop.
FpMatrix spanning_tree_design(const GraphSpec& g, const PrimeField& field);

// Iterated Kronecker product of consensus matrices.
FpMatrix kronecker_compose(const std::vector<FpMatrix>& factors);

} // namespace ffc
