#include "ffc/cli.hpp"

#include <CLI11.hpp>

#include "ffc/io.hpp"

namespace ffc::cli {

namespace {

using io::Json;

struct AnalyzeArgs {
    std::string matrix_file;
    bool transition_graph = false;
    std::optional<std::int64_t> inverse_alpha;
    bool predict_cycles = false;
    std::string dot_file;
    std::uint64_t guard = default_state_guard;
};

struct DesignArgs {
    std::string graph_file;
    std::optional<std::uint64_t> p;
    bool average = false;
    std::string construct = "enumerate";
    std::vector<std::int64_t> weights;
    std::uint64_t limit = 100'000'000;
    std::optional<std::size_t> max_results;
    bool sample = false;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::vector<std::string> kronecker;
    std::string emit_prefix;
};

struct RunArgs {
    std::string scenario_file;
    std::optional<std::uint64_t> rounds;
    std::uint64_t seed = 1;
    double noise = 0.0;
    std::string csv_file;
    std::string states_csv_file;
};

void emit(const Json& report, const std::string& out_file, bool compact, std::ostream& out) {
    io::validate_report(report);
    std::string text = report.dump(compact ? -1 : 2) + "\n";
    if (out_file.empty()) {
        out << text;
    } else {
        io::write_file(out_file, text);
    }
}

Json analyze(const AnalyzeArgs& args) {
    const FpMatrix a = io::parse_matrix(io::read_file(args.matrix_file), args.matrix_file);
    const auto& f = a.field();
    Json payload;
    payload["n"] = a.rows();
    payload["p"] = f.modulus();
    payload["matrix"] = io::matrix_json(a);
    const auto report = certify_consensus(a);
    payload["certification"] = io::consensus_report_json(report);
    Json eig = Json::array();
    for (auto v : poly_roots(report.char_poly)) {
        eig.push_back(v);
    }
    payload["eigenvalues_in_field"] = std::move(eig);

    std::optional<TransitionGraph> tg;
    if (args.transition_graph || !args.dot_file.empty()) {
        tg = build_transition_graph(a, args.guard);
        Json t;
        t["states"] = tg->state_count();
        t["cycles"] = tg->cycle_count();
        t["inventory"] = io::inventory_json(tg->cycle_inventory);
        t["consensus_by_cycles"] = consensus_by_cycles(*tg);
        payload["transition_graph"] = std::move(t);
        if (!args.dot_file.empty()) {
            io::write_file(args.dot_file, io::transition_graph_dot(*tg));
        }
    }
    if (args.inverse_alpha) {
        const Residue alpha = f.reduce(*args.inverse_alpha);
        auto r = inverse_recursion(a, alpha, std::max<std::uint64_t>(a.rows(), 1), args.guard);
        Json j;
        j["alpha"] = alpha;
        j["converged"] = r.converged;
        j["stabilized"] = r.stabilized;
        j["steps"] = r.steps;
        j["limiting_set_size"] = r.limiting_set_size;
        j["consensus"] = r.converged && r.limiting_set_size == checked_power(f.modulus(), a.rows() - 1);
        Json members = Json::array();
        for (auto idx : r.members) {
            members.push_back(io::vector_string(decode_state(idx, a.rows(), f.modulus())));
        }
        j["members"] = std::move(members);
        payload["inverse_recursion"] = std::move(j);
    }
    if (args.predict_cycles) {
        auto inv = predict_cycle_structure(a);
        Json j;
        j["inventory"] = io::inventory_json(inv);
        if (tg) {
            j["matches_enumeration"] = inv == tg->cycle_inventory;
        }
        payload["predicted_cycles"] = std::move(j);
    }
    return io::make_report("analyze", payload);
}

Json design(const DesignArgs& args) {
    Json payload;
    std::vector<FpMatrix> emitted;
    if (!args.kronecker.empty()) {
        std::vector<FpMatrix> factors;
        for (const auto& file : args.kronecker) {
            factors.push_back(io::parse_matrix(io::read_file(file), file));
        }
        std::uint64_t slowest = 0;
        for (const auto& m : factors) {
            require_same_field(factors.front().field(), m.field(), "kronecker");
            if (!certify_consensus(m).achieves_consensus) {
                throw PreconditionError("kronecker: factor does not achieve consensus");
            }
            slowest = std::max(slowest, convergence_time(m));
        }
        FpMatrix k = kronecker_compose(factors);
        const auto report = certify_consensus(k);
        payload["n"] = k.rows();
        payload["p"] = k.field().modulus();
        payload["construction"] = "kronecker";
        payload["factors"] = args.kronecker;
        payload["slowest_factor_time"] = slowest;
        payload["result"] = Json{{"matrix", io::matrix_json(k)}, {"certification", io::consensus_report_json(report)}};
        emitted.push_back(std::move(k));
    } else {
        if (args.graph_file.empty()) {
            throw PreconditionError("design: a graph file or --kronecker is required");
        }
        auto gf = io::parse_graph(io::read_file(args.graph_file), args.graph_file);
        const PrimeField field = args.p ? PrimeField(*args.p) : gf.field;
        const std::size_t n = gf.graph.vertex_count();
        payload["n"] = n;
        payload["p"] = field.modulus();
        payload["construction"] = args.construct;
        if (args.construct == "enumerate") {
            DesignOptions opt;
            opt.exhaustive_limit = args.limit;
            opt.average_constraint = args.average;
            opt.max_results = args.max_results;
            opt.allow_sampling = args.sample;
            opt.samples = args.samples;
            opt.seed = args.seed;
            auto result = enumerate_consensus_matrices(gf.graph, field, opt);
            payload["result"] = io::design_result_json(result, field);
            emitted = std::move(result.matrices);
        } else {
            FpMatrix a(1, 1, field);
            if (args.construct == "tree") {
                a = spanning_tree_design(gf.graph, field);
            } else if (args.construct == "complete") {
                FpVector v(n, 0);
                if (!args.weights.empty()) {
                    if (args.weights.size() != n) {
                        throw PreconditionError("--weights needs " + std::to_string(n) + " values");
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        v[i] = field.reduce(args.weights[i]);
                    }
                } else if (n % field.modulus() != 0) {
                    v.assign(n, field.inv(field.reduce_u64(n)));
                } else {
                    v[0] = 1;
                }
                a = fully_connected_design(v, field);
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 1; j <= n; ++j) {
                        if (a(i - 1, j - 1) != 0 && !gf.graph.has_edge(i, j)) {
                            throw PreconditionError("complete design needs edge (" + std::to_string(i) + "," +
                                                    std::to_string(j) + ")");
                        }
                    }
                }
            } else {
                throw PreconditionError("unknown construction '" + args.construct + "'");
            }
            const auto report = certify_consensus(a);
            if (args.average && !report.achieves_average_consensus) {
                throw PreconditionError("constructed matrix is not average-consensus (" + report.average_reason + ")");
            }
            payload["result"] =
                Json{{"matrix", io::matrix_json(a)}, {"certification", io::consensus_report_json(report)}};
            emitted.push_back(std::move(a));
        }
    }
    if (!args.emit_prefix.empty()) {
        Json files = Json::array();
        for (std::size_t k = 0; k < emitted.size(); ++k) {
            std::string path = args.emit_prefix + "_" + std::to_string(k + 1) + ".txt";
            io::write_file(path, io::render_matrix(emitted[k]));
            files.push_back(path);
        }
        payload["matrix_files"] = std::move(files);
    }
    return io::make_report("design", payload);
}

Json simulate(const RunArgs& args) {
    auto sc = io::parse_scenario(io::read_file(args.scenario_file), args.scenario_file);
    SimConfig cfg(sc.a, args.rounds, args.seed);
    auto traj = run_consensus(cfg, sc.x0);
    if (!args.csv_file.empty()) {
        io::write_file(args.csv_file, io::trajectory_csv(traj));
    }
    std::optional<std::uint64_t> fixed;
    for (std::size_t t = 0; t + 1 < traj.states.size(); ++t) {
        if (traj.states[t] == traj.states[t + 1]) {
            fixed = t;
            break;
        }
    }
    Json payload;
    payload["n"] = sc.a.rows();
    payload["p"] = sc.a.field().modulus();
    payload["rounds"] = cfg.max_rounds;
    payload["initial_state"] = sc.x0;
    payload["final_state"] = traj.states.back();
    payload["rounds_to_fixed"] = fixed ? Json(*fixed) : Json(nullptr);
    Json states = Json::array();
    for (const auto& x : traj.states) {
        states.push_back(x);
    }
    payload["trajectory"] = std::move(states);
    return io::make_report("simulate", payload);
}

Json average(const RunArgs& args) {
    auto sc = io::parse_scenario(io::read_file(args.scenario_file), args.scenario_file);
    SimConfig cfg(sc.a, args.rounds, args.seed);
    auto r = run_average(cfg, sc.x0);
    if (!args.csv_file.empty()) {
        io::write_file(args.csv_file, io::trajectory_csv(r.trajectory));
    }
    Json payload;
    payload["n"] = sc.a.rows();
    payload["p"] = sc.a.field().modulus();
    payload["rounds"] = cfg.max_rounds;
    payload["initial_state"] = sc.x0;
    payload["x_field"] = r.x_field;
    payload["x_average"] = r.x_average.to_string();
    payload["rounds_to_consensus"] = r.rounds_to_consensus;
    Json est = Json::array();
    for (const auto& q : r.agent_estimates) {
        est.push_back(q.to_string());
    }
    payload["agent1_estimates"] = std::move(est);
    return io::make_report("average", payload);
}

Json pose(const RunArgs& args) {
    auto sc = io::parse_scenario(io::read_file(args.scenario_file), args.scenario_file);
    if (!sc.measurements) {
        throw PreconditionError("pose: scenario has no measurement block");
    }
    MeasurementGraph mg = *sc.measurements;
    if (args.noise > 0.0) {
        mg.set_eta(add_measurement_noise(mg.eta(), mg.field(), args.noise, args.seed));
    }
    SimConfig cfg(sc.a, args.rounds, args.seed);
    auto r = run_pose_estimation(cfg, mg, sc.x0);
    if (!args.csv_file.empty()) {
        io::write_file(args.csv_file, io::error_trace_csv(r.error_trace));
    }
    if (!args.states_csv_file.empty()) {
        io::write_file(args.states_csv_file, io::trajectory_csv(Trajectory{r.states}));
    }
    std::size_t nonzero = 0;
    for (auto v : r.error_trace.back()) {
        nonzero += v != 0;
    }
    Json payload;
    payload["n"] = sc.a.rows();
    payload["p"] = sc.a.field().modulus();
    payload["edges"] = mg.edge_count();
    payload["rounds"] = cfg.max_rounds;
    payload["seed"] = args.seed;
    payload["noise"] = args.noise;
    payload["eta"] = mg.eta();
    payload["theta"] = r.theta;
    payload["rounds_to_fixed"] = r.rounds_to_fixed ? Json(*r.rounds_to_fixed) : Json(nullptr);
    payload["error_constant_from"] = r.error_constant_from;
    payload["residual_nonzero"] = nonzero;
    payload["final_error"] = r.error_trace.back();
    return io::make_report("pose", payload);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-field consensus toolkit", "ffcons"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string out_file;
    bool compact = false;
    app.add_option("-o,--out", out_file, "Write the JSON report here instead of stdout");
    app.add_flag("--compact", compact, "Emit the report on a single line");

    AnalyzeArgs an;
    auto* analyze_cmd = app.add_subcommand("analyze", "Certify consensus of a network matrix");
    analyze_cmd->add_option("matrix", an.matrix_file, "Matrix file")->required();
    analyze_cmd->add_flag("--transition-graph", an.transition_graph, "Enumerate the transition graph");
    analyze_cmd->add_option("--inverse-recursion", an.inverse_alpha, "Run the inverse recursion from alpha 1");
    analyze_cmd->add_flag("--predict-cycles", an.predict_cycles, "Predict cycles from the factored char poly");
    analyze_cmd->add_option("--dot", an.dot_file, "Write the transition graph as DOT");
    analyze_cmd->add_option("--guard", an.guard, "Maximum state count for enumeration");

    DesignArgs de;
    auto* design_cmd = app.add_subcommand("design", "Synthesize consensus matrices for a graph");
    design_cmd->add_option("graph", de.graph_file, "Edge-list graph file");
    design_cmd->add_option("--p", de.p, "Field characteristic (overrides the graph header)");
    design_cmd->add_flag("--average", de.average, "Require column sums 1 (average consensus)");
    design_cmd->add_option("--construct", de.construct, "enumerate | tree | complete")
        ->check(CLI::IsMember({"enumerate", "tree", "complete"}));
    design_cmd->add_option("--weights", de.weights, "Row vector for the complete construction");
    design_cmd->add_option("--limit", de.limit, "Exhaustive candidate limit");
    design_cmd->add_option("--max-results", de.max_results, "Keep at most this many matrices");
    design_cmd->add_flag("--sample", de.sample, "Sample randomly when the space exceeds --limit");
    design_cmd->add_option("--samples", de.samples, "Number of random candidates in sampling mode");
    design_cmd->add_option("--seed", de.seed, "Seed for sampling");
    design_cmd->add_option("--kronecker", de.kronecker, "Compose these matrix files");
    design_cmd->add_option("--emit", de.emit_prefix, "Write matrices to PREFIX_k.txt");

    RunArgs sim_args, avg_args, pose_args;
    auto add_run = [&](const char* name, const char* desc, RunArgs& ra, const char* csv_desc) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->add_option("scenario", ra.scenario_file, "Scenario file")->required();
        cmd->add_option("--rounds", ra.rounds, "Number of synchronous rounds (default n)");
        cmd->add_option("--seed", ra.seed, "Seed for randomized noise");
        cmd->add_option("--csv", ra.csv_file, csv_desc);
        return cmd;
    };
    auto* simulate_cmd = add_run("simulate", "Run x(t+1) = A x(t)", sim_args, "Trajectory CSV");
    auto* average_cmd = add_run("average", "Distributed average computation", avg_args, "Trajectory CSV");
    auto* pose_cmd = add_run("pose", "Distributed pose estimation", pose_args, "Error-trace CSV");
    pose_cmd->add_option("--noise", pose_args.noise, "Fraction of edges given a random measurement offset")
        ->check(CLI::Range(0.0, 1.0));
    pose_cmd->add_option("--states-csv", pose_args.states_csv_file, "Estimate trajectory CSV");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return success;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        Json report;
        if (analyze_cmd->parsed()) {
            report = analyze(an);
        } else if (design_cmd->parsed()) {
            report = design(de);
        } else if (simulate_cmd->parsed()) {
            report = simulate(sim_args);
        } else if (average_cmd->parsed()) {
            report = average(avg_args);
        } else {
            report = pose(pose_args);
        }
        emit(report, out_file, compact, out);
        return success;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_failure;
    } catch (const GuardExceeded& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return guard_exhausted;
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return precondition_failure;
    } catch (const DimensionMismatch& e) {
        err << "precondition failed: " << e.what() << "\n";
        return precondition_failure;
    } catch (const FieldMismatch& e) {
        err << "precondition failed: " << e.what() << "\n";
        return precondition_failure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
}

} // namespace ffc::cli
