#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ffc/design.hpp"
#include "ffc/sim.hpp"

namespace ffc::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "ffconsensus/report/v1";

// Text formats. Blank lines and '#' comments are ignored everywhere.
//
//   matrix:   "n p", then n rows of n integers in [0, p-1]
//   graph:    "n p", then one "i j" edge per line (1-based; agent i senses agent j)
//   scenario: "n p", n matrix rows, one line with the n initial states, then
//             optionally "measurements m" followed by m lines "i j eta" with i < j

FpMatrix parse_matrix(std::string_view text, const std::string& source = "<matrix>");
std::string render_matrix(const FpMatrix& a);

struct GraphFile {
    GraphSpec graph;
    PrimeField field;
};
GraphFile parse_graph(std::string_view text, const std::string& source = "<graph>");
std::string render_graph(const GraphSpec& g, const PrimeField& field);

struct Scenario {
    FpMatrix a;
    FpVector x0;
    std::optional<MeasurementGraph> measurements;
};
Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

std::string vector_string(std::span<const Residue> x);

// Report payloads. Keys are emitted in a fixed order and carry no timestamps.
Json matrix_json(const FpMatrix& a);
Json consensus_report_json(const ConsensusReport& r);
Json inventory_json(const CycleInventory& inv);
Json design_result_json(const DesignResult& r, const PrimeField& field);

// Wraps a payload as {"schema", "kind", ...payload}.
Json make_report(const std::string& kind, const Json& payload);
// Throws ParseError if the document does not follow the report schema.
void validate_report(const Json& report);

std::string trajectory_csv(const Trajectory& t);
std::string error_trace_csv(const std::vector<FpVector>& trace);

// Vertex labels are state vectors; consensus vertices are drawn as double circles.
std::string transition_graph_dot(const TransitionGraph& tg);

} // namespace ffc::io
