#include "ffc/sim.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ffc {

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    num = g == 0 ? 0 : n / g;
    den = g == 0 ? 1 : d / g;
}

std::string Rational::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

SimConfig::SimConfig(FpMatrix matrix, std::optional<std::uint64_t> rounds, std::uint64_t seed_value)
    : a(std::move(matrix)), max_rounds(rounds.value_or(a.rows())), seed(seed_value) {
    if (!a.is_square()) {
        throw DimensionMismatch("SimConfig: network matrix is not square");
    }
    if (max_rounds < 1) {
        throw PreconditionError("SimConfig: max_rounds must be at least 1");
    }
}

namespace {

struct InNeighbour {
    std::size_t agent;
    Residue weight;
};

// What each agent listens to: the nonzero entries of its row.
std::vector<std::vector<InNeighbour>> in_neighbours(const FpMatrix& a) {
    std::vector<std::vector<InNeighbour>> lists(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto row = a.row(i);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0) {
                lists[i].push_back({j, row[j]});
            }
        }
    }
    return lists;
}

// One synchronous round from the `current` snapshot, plus an optional per-agent offset.
void step(const std::vector<std::vector<InNeighbour>>& lists, const PrimeField& f, const FpVector& current,
          const FpVector* offset, FpVector& next) {
    for (std::size_t i = 0; i < lists.size(); ++i) {
        Residue acc = offset ? (*offset)[i] : 0;
        for (const auto& [j, w] : lists[i]) {
            acc = f.add(acc, f.mul(w, current[j]));
        }
        next[i] = acc;
    }
}

void require_state(const FpMatrix& a, std::span<const Residue> x, const char* what) {
    if (x.size() != a.rows()) {
        throw DimensionMismatch(std::string(what) + ": state has length " + std::to_string(x.size()) +
                                ", network has " + std::to_string(a.rows()) + " agents");
    }
    for (auto v : x) {
        if (v >= a.field().modulus()) {
            throw PreconditionError(std::string(what) + ": state entry " + std::to_string(v) + " is not in [0, p-1]");
        }
    }
}

// Sum over in-edges of a_ij eta_ij, with eta_ji = -eta_ij.
FpVector measurement_input(const FpMatrix& a, const MeasurementGraph& mg, std::span<const Residue> eta) {
    const auto& f = a.field();
    FpVector c(a.rows(), 0);
    for (std::size_t k = 0; k < mg.edges().size(); ++k) {
        auto [i, j] = mg.edges()[k];
        c[i] = f.add(c[i], f.mul(a(i, j), eta[k]));
        c[j] = f.sub(c[j], f.mul(a(j, i), eta[k]));
    }
    return c;
}

void require_compatible(const FpMatrix& a, const MeasurementGraph& mg) {
    require_same_field(a.field(), mg.field(), "pose estimation");
    if (a.rows() != mg.camera_count()) {
        throw DimensionMismatch("network matrix has " + std::to_string(a.rows()) + " agents, camera graph has " +
                                std::to_string(mg.camera_count()));
    }
    std::vector<bool> adjacent(a.rows() * a.rows(), false);
    for (auto [i, j] : mg.edges()) {
        adjacent[i * a.rows() + j] = adjacent[j * a.rows() + i] = true;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.rows(); ++j) {
            if (i != j && a(i, j) != 0 && !adjacent[i * a.rows() + j]) {
                throw PreconditionError("weight a_" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                        " is nonzero but cameras are not adjacent");
            }
        }
    }
}

} // namespace

Trajectory run_consensus(const SimConfig& cfg, std::span<const Residue> x0) {
    require_state(cfg.a, x0, "run_consensus");
    const auto lists = in_neighbours(cfg.a);
    Trajectory traj;
    traj.states.reserve(cfg.max_rounds + 1);
    traj.states.emplace_back(x0.begin(), x0.end());
    FpVector next(x0.size());
    for (std::uint64_t t = 0; t < cfg.max_rounds; ++t) {
        step(lists, cfg.a.field(), traj.states.back(), nullptr, next);
        traj.states.push_back(next);
    }
    return traj;
}

Rational recover_real_average(Residue x_field, std::uint64_t n, const PrimeField& field) {
    if (n == 0) {
        throw PreconditionError("recover_real_average: n must be positive");
    }
    if (n % field.modulus() == 0) {
        throw PreconditionError("recover_real_average: n is a multiple of p");
    }
    const Residue scaled = field.mul(field.reduce_u64(n), x_field);
    return Rational(scaled, static_cast<std::int64_t>(n));
}

AverageResult run_average(const SimConfig& cfg, std::span<const Residue> x0) {
    require_state(cfg.a, x0, "run_average");
    const auto& f = cfg.a.field();
    const std::uint64_t n = cfg.a.rows();
    const std::uint64_t p = f.modulus();
    if (n % p == 0) {
        throw PreconditionError("run_average: n = " + std::to_string(n) + " is a multiple of p = " + std::to_string(p));
    }
    const std::uint64_t largest = *std::max_element(x0.begin(), x0.end());
    if (n * largest > p) {
        throw PreconditionError("run_average: n * max(x0) = " + std::to_string(n * largest) + " exceeds p = " +
                                std::to_string(p));
    }
    const auto report = certify_consensus(cfg.a);
    if (!report.achieves_average_consensus) {
        throw PreconditionError("run_average: matrix does not achieve average consensus (" + report.average_reason +
                                ")");
    }

    AverageResult result{.x_field = 0, .x_average = {}, .trajectory = run_consensus(cfg, x0),
                         .rounds_to_consensus = 0, .agent_estimates = {}};
    const auto& states = result.trajectory.states;
    result.x_field = states.back().front();
    result.x_average = recover_real_average(result.x_field, n, f);
    for (const auto& x : states) {
        result.agent_estimates.push_back(recover_real_average(x.front(), n, f));
    }
    std::uint64_t t = states.size();
    while (t > 0 && std::all_of(states[t - 1].begin(), states[t - 1].end(),
                                [&](Residue v) { return v == result.x_field; })) {
        --t;
    }
    result.rounds_to_consensus = t;
    return result;
}

MeasurementGraph::MeasurementGraph(std::size_t n, PrimeField field,
                                   std::vector<std::pair<std::size_t, std::size_t>> edges, FpVector eta)
    : n_(n), field_(field), edges_(std::move(edges)), eta_(std::move(eta)) {
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    for (auto [i, j] : edges_) {
        if (i >= j || j >= n_) {
            throw PreconditionError("measurement edge (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    ") must satisfy i < j <= n");
        }
    }
    seen = edges_;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw PreconditionError("duplicate measurement edge");
    }
    if (eta_.empty()) {
        eta_.assign(edges_.size(), 0);
    }
    set_eta(eta_);
}

MeasurementGraph MeasurementGraph::from_support(const FpMatrix& a, FpVector eta) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            if (a(i, j) != 0 || a(j, i) != 0) {
                edges.emplace_back(i, j);
            }
        }
    }
    return MeasurementGraph(a.rows(), a.field(), std::move(edges), std::move(eta));
}

void MeasurementGraph::set_eta(FpVector eta) {
    if (eta.size() != edges_.size()) {
        throw DimensionMismatch("measurement vector has " + std::to_string(eta.size()) + " entries for " +
                                std::to_string(edges_.size()) + " edges");
    }
    for (auto& v : eta) {
        v = field_.reduce_u64(v);
    }
    eta_ = std::move(eta);
}

FpMatrix MeasurementGraph::incidence_matrix() const {
    FpMatrix b(edges_.size(), n_, field_);
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        b(k, edges_[k].first) = 1;
        b(k, edges_[k].second) = field_.neg(1);
    }
    return b;
}

FpVector MeasurementGraph::apply_incidence(std::span<const Residue> x) const {
    if (x.size() != n_) {
        throw DimensionMismatch("apply_incidence: vector length mismatch");
    }
    FpVector y(edges_.size());
    for (std::size_t k = 0; k < edges_.size(); ++k) {
        y[k] = field_.sub(x[edges_[k].first], x[edges_[k].second]);
    }
    return y;
}

FpVector MeasurementGraph::measurements_for(std::span<const Residue> theta) const { return apply_incidence(theta); }

FpMatrix build_L(const FpMatrix& a, const MeasurementGraph& mg) {
    require_compatible(a, mg);
    const auto& f = a.field();
    FpMatrix l(a.rows(), mg.edge_count(), f);
    for (std::size_t k = 0; k < mg.edge_count(); ++k) {
        auto [i, j] = mg.edges()[k];
        l(i, k) = a(i, j);
        l(j, k) = f.neg(a(j, i));
    }
    return l;
}

PoseResult run_pose_estimation(const SimConfig& cfg, const MeasurementGraph& mg, std::span<const Residue> theta0) {
    require_compatible(cfg.a, mg);
    require_state(cfg.a, theta0, "run_pose_estimation");
    const auto report = certify_consensus(cfg.a);
    if (!report.achieves_average_consensus) {
        throw PreconditionError("run_pose_estimation: matrix does not achieve average consensus (" +
                                report.average_reason + ")");
    }
    const auto& f = cfg.a.field();
    const auto lists = in_neighbours(cfg.a);
    const FpVector input = measurement_input(cfg.a, mg, mg.eta());

    PoseResult result;
    result.states.emplace_back(theta0.begin(), theta0.end());
    FpVector next(theta0.size());
    for (std::uint64_t t = 0; t < cfg.max_rounds; ++t) {
        step(lists, f, result.states.back(), &input, next);
        if (!result.rounds_to_fixed && next == result.states.back()) {
            result.rounds_to_fixed = t;
        }
        result.states.push_back(next);
    }
    for (const auto& x : result.states) {
        FpVector e = mg.apply_incidence(x);
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = f.sub(mg.eta()[k], e[k]);
        }
        result.error_trace.push_back(std::move(e));
    }
    std::uint64_t from = result.error_trace.size() - 1;
    while (from > 0 && result.error_trace[from - 1] == result.error_trace.back()) {
        --from;
    }
    result.error_constant_from = from;
    result.theta = result.states.back();
    return result;
}

std::optional<MeasurementSplit> decompose_measurement(const MeasurementGraph& mg) {
    const auto& f = mg.field();
    const std::size_t m = mg.edge_count();
    if (m == 0) {
        return MeasurementSplit{};
    }
    // Rows of rref(B^T) span Im(B).
    auto [r, rk, pivots] = rref(mg.incidence_matrix().transpose());
    FpMatrix basis(rk, m, f);
    for (std::size_t k = 0; k < rk; ++k) {
        std::copy(r.row(k).begin(), r.row(k).end(), basis.row(k).begin());
    }
    // Gram matrix C C^T is invertible iff Im(B) and its orthogonal complement meet only in 0.
    const FpMatrix gram = basis * basis.transpose();
    const FpVector rhs = mat_vec(basis, mg.eta());
    FpMatrix aug(rk, rk + 1, f);
    for (std::size_t i = 0; i < rk; ++i) {
        std::copy(gram.row(i).begin(), gram.row(i).end(), aug.row(i).begin());
        aug(i, rk) = rhs[i];
    }
    auto solved = rref(aug);
    if (solved.rank != rk || (rk > 0 && solved.pivot_cols.back() != rk - 1)) {
        return std::nullopt;
    }
    FpVector y(rk);
    for (std::size_t k = 0; k < rk; ++k) {
        y[k] = solved.reduced(k, rk);
    }
    MeasurementSplit split;
    split.parallel = vec_mat(y, basis);
    split.orthogonal.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        split.orthogonal[k] = f.sub(mg.eta()[k], split.parallel[k]);
    }
    return split;
}

FpVector predicted_steady_error(const FpMatrix& a, const MeasurementGraph& mg, std::span<const Residue> v,
                                std::uint64_t t) {
    require_compatible(a, mg);
    const auto& f = a.field();
    FpVector z = measurement_input(a, mg, v);
    FpVector sum(a.rows(), 0);
    for (std::uint64_t tau = 0; tau < t; ++tau) {
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] = f.add(sum[i], z[i]);
        }
        z = mat_vec(a, z);
    }
    FpVector e = mg.apply_incidence(sum);
    for (std::size_t k = 0; k < e.size(); ++k) {
        e[k] = f.sub(f.reduce_u64(v[k]), e[k]);
    }
    return e;
}

FpVector add_measurement_noise(std::span<const Residue> eta, const PrimeField& field, double fraction,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    FpVector out(eta.begin(), eta.end());
    const Residue p = field.modulus();
    for (auto& v : out) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const Residue offset = static_cast<Residue>(1 + rng() % (p - 1));
        if (u < fraction) {
            v = field.add(field.reduce_u64(v), offset);
        }
    }
    return out;
}

} // namespace ffc
