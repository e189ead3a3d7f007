#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "ffc/analysis.hpp"
#include "ffc/design.hpp"
#include "ffc/sim.hpp"

using namespace ffc;

TEST_CASE("rationals normalize") {
    CHECK(Rational(6, 8) == Rational(3, 4));
    CHECK(Rational(0, 5).to_string() == "0");
    CHECK(Rational(4, 2).to_string() == "2");
    CHECK(Rational(3, 4).to_string() == "3/4");
    CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
}

TEST_CASE("config defaults to n rounds and rejects zero rounds") {
    SimConfig cfg(testing::f5());
    CHECK(cfg.max_rounds == 4);
    CHECK_THROWS_AS(SimConfig(testing::f5(), 0), PreconditionError);
    CHECK_THROWS_AS(SimConfig(FpMatrix(2, 3, PrimeField(3))), DimensionMismatch);
}

TEST_CASE("trajectories follow x(t+1) = A x(t)") {
    std::mt19937_64 rng(41);
    for (oracle::Int p : {2, 3, 7}) {
        auto m = oracle::random_row_stochastic(5, p, rng);
        // sparsify a little so the neighbour lists differ from dense rows
        m[0][1] = 0;
        m[2][3] = 0;
        auto a = testing::to_fp(m, p);
        oracle::Vec x = oracle::decode(rng() % oracle::ipow(p, 5), 5, p);
        auto traj = run_consensus(SimConfig(a, 12), FpVector(x.begin(), x.end()));
        REQUIRE(traj.states.size() == 13);
        for (std::size_t t = 0; t < 13; ++t) {
            CHECK(testing::to_plain(traj.states[t]) == x);
            x = oracle::apply(m, x, p);
        }
    }
    CHECK_THROWS_AS(run_consensus(SimConfig(testing::a3()), FpVector{1, 0}), DimensionMismatch);
    CHECK_THROWS_AS(run_consensus(SimConfig(testing::a3()), FpVector{1, 0, 3}), PreconditionError);
}

TEST_CASE("period-3 oscillation from a unit impulse") {
    auto traj = run_consensus(SimConfig(testing::a3(), 6), FpVector{1, 0, 0});
    std::vector<FpVector> expect{{1, 0, 0}, {2, 1, 1}, {0, 2, 2}, {1, 0, 0}, {2, 1, 1}, {0, 2, 2}, {1, 0, 0}};
    CHECK(traj.states == expect);
}

TEST_CASE("real average recovery") {
    PrimeField f5(5);
    CHECK(recover_real_average(3, 4, f5) == Rational(1, 2));
    CHECK(recover_real_average(2, 4, f5) == Rational(3, 4));
    CHECK_THROWS_AS(recover_real_average(1, 5, f5), PreconditionError);
}

TEST_CASE("average computation on four agents") {
    auto r = run_average(SimConfig(testing::f5()), FpVector{0, 1, 1, 1});
    CHECK(r.x_field == 2);
    CHECK(r.x_average == Rational(3, 4));
    CHECK(r.rounds_to_consensus == 3);
    REQUIRE(r.agent_estimates.size() == 5);
    CHECK(r.agent_estimates[3] == Rational(3, 4));
    CHECK(r.agent_estimates[4] == Rational(3, 4));
    // agent 1 already holds the final value at round 2, but the network has not agreed yet
    CHECK(r.trajectory.states[2] != FpVector(4, r.x_field));
}

TEST_CASE("average computation preconditions") {
    PrimeField f5(5);
    auto a = FpMatrix::from_rows({{2, 3, 1}, {2, 4, 0}, {2, 4, 0}}, f5);
    // n * max = 6 > 5: the wraparound makes the field value meaningless
    CHECK_THROWS_AS(run_average(SimConfig(a), FpVector{2, 2, 2}), PreconditionError);
    auto ok = run_average(SimConfig(a), FpVector{0, 0, 1});
    CHECK(ok.x_average == Rational(1, 3));
    // consensus but not average consensus
    CHECK_THROWS_AS(run_average(SimConfig(testing::f11()), FpVector{0, 0, 1}), PreconditionError);
}

TEST_CASE("incidence matrix invariants") {
    PrimeField f(5);
    MeasurementGraph mg(4, f, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, FpVector(4, 0));
    auto b = mg.incidence_matrix();
    CHECK(b.rows() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        auto [i, j] = mg.edges()[k];
        CHECK(b(k, i) == 1);
        CHECK(b(k, j) == 4);
    }
    CHECK(mat_vec(b, FpVector(4, 1)) == FpVector(4, 0));
    CHECK(mg.apply_incidence(FpVector{0, 1, 3, 2}) == mat_vec(b, FpVector{0, 1, 3, 2}));
    CHECK_THROWS_AS(MeasurementGraph(4, f, {{1, 0}}, FpVector{0}), PreconditionError);
    CHECK_THROWS_AS(MeasurementGraph(4, f, {{0, 1}}, FpVector{0, 0}), DimensionMismatch);
}

TEST_CASE("I - A = L B for the gain matrix") {
    auto a = testing::f5();
    auto mg = MeasurementGraph::from_support(a);
    auto l = build_L(a, mg);
    auto lhs = FpMatrix::identity(4, a.field()) - a;
    CHECK(l * mg.incidence_matrix() == lhs);
    // also on a Kronecker-composed network
    auto k = kronecker_compose({a, a});
    auto mk = MeasurementGraph::from_support(k);
    CHECK(build_L(k, mk) * mk.incidence_matrix() == FpMatrix::identity(16, a.field()) - k);
}

TEST_CASE("noiseless pose estimation recovers consistent headings") {
    auto a = testing::f5();
    auto mg = MeasurementGraph::from_support(a);
    FpVector truth{0, 1, 3, 2};
    mg.set_eta(mg.measurements_for(truth));
    auto r = run_pose_estimation(SimConfig(a, 6), mg, FpVector{4, 4, 0, 1});
    CHECK(mg.apply_incidence(r.theta) == mg.eta());
    CHECK(r.rounds_to_fixed <= 3u);
    CHECK(r.error_trace.back() == FpVector(mg.edge_count(), 0));
    CHECK(r.error_constant_from <= 3);
}

TEST_CASE("noisy pose estimation error matches the closed form") {
    auto a = testing::f5();
    auto mg = MeasurementGraph::from_support(a);
    FpVector truth{0, 1, 3, 2};
    auto eta = add_measurement_noise(mg.measurements_for(truth), a.field(), 1.0, 3);
    CHECK(eta != mg.measurements_for(truth));
    mg.set_eta(eta);
    auto r = run_pose_estimation(SimConfig(a, 8), mg, FpVector(4, 0));
    for (std::uint64_t t = 0; t < r.error_trace.size(); ++t)
        CHECK(r.error_trace[t] == predicted_steady_error(a, mg, eta, t));
    CHECK(r.error_constant_from <= 3);
    for (std::size_t t = 3; t < r.error_trace.size(); ++t) CHECK(r.error_trace[t] == r.error_trace[3]);
}

TEST_CASE("measurement decomposition") {
    auto a = testing::f5();
    auto mg = MeasurementGraph::from_support(a);
    mg.set_eta(add_measurement_noise(mg.measurements_for(FpVector{0, 1, 3, 2}), a.field(), 1.0, 4));
    auto split = decompose_measurement(mg);
    if (split) {
        const auto& f = a.field();
        for (std::size_t k = 0; k < mg.edge_count(); ++k)
            CHECK(f.add(split->parallel[k], split->orthogonal[k]) == mg.eta()[k]);
        // orthogonal part annihilated by B^T
        CHECK(vec_mat(split->orthogonal, mg.incidence_matrix()) == FpVector(4, 0));
        // parallel part lies in Im(B): the steady error of it vanishes
        CHECK(predicted_steady_error(a, mg, split->parallel, 3) == FpVector(mg.edge_count(), 0));
    }
    // over F_2 the 4-cycle vector is both a cut and a cycle
    PrimeField f2(2);
    MeasurementGraph ring(4, f2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, FpVector{1, 0, 0, 0});
    CHECK_FALSE(decompose_measurement(ring));
    MeasurementGraph tri(3, f2, {{0, 1}, {0, 2}, {1, 2}}, FpVector{1, 0, 0});
    CHECK(decompose_measurement(tri));
}

TEST_CASE("noise model is deterministic in the seed") {
    PrimeField f(7);
    FpVector eta(50, 3);
    CHECK(add_measurement_noise(eta, f, 0.3, 1) == add_measurement_noise(eta, f, 0.3, 1));
    CHECK(add_measurement_noise(eta, f, 0.0, 1) == eta);
    auto all = add_measurement_noise(eta, f, 1.0, 2);
    for (auto v : all) CHECK(v != 3);
}
