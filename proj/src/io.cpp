#include "ffc/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace ffc::io {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r' || raw[i] == ',')) {
                ++i;
            }
            std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r' && raw[i] != ',') {
                ++i;
            }
            if (i > start) {
                line.tokens.push_back({raw.substr(start, i - start), start + 1});
            }
        }
        if (!line.tokens.empty()) {
            lines.push_back(std::move(line));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return lines;
}

class Reader {
  public:
    Reader(std::string_view text, std::string source) : lines_(tokenize(text)), source_(std::move(source)) {}

    bool done() const noexcept { return next_ >= lines_.size(); }

    const Line& take(const char* expecting) {
        if (done()) {
            std::size_t last = lines_.empty() ? 1 : lines_.back().number + 1;
            throw ParseError(source_, last, 1, std::string("unexpected end of input, expected ") + expecting);
        }
        return lines_[next_++];
    }

    const Line& peek() const { return lines_[next_]; }

    std::int64_t integer(const Line& line, const Token& tok) const {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
        if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
            throw ParseError(source_, line.number, tok.column, "expected an integer, got '" + std::string(tok.text) + "'");
        }
        return v;
    }

    void expect_count(const Line& line, std::size_t count, const char* what) const {
        if (line.tokens.size() != count) {
            std::size_t col = line.tokens.size() > count ? line.tokens[count].column : line.tokens.back().column;
            throw ParseError(source_, line.number, col,
                             std::string(what) + ": expected " + std::to_string(count) + " values, got " +
                                 std::to_string(line.tokens.size()));
        }
    }

    // Entry in [0, p-1].
    Residue residue(const Line& line, const Token& tok, Residue p) const {
        auto v = integer(line, tok);
        if (v < 0 || v >= static_cast<std::int64_t>(p)) {
            throw ParseError(source_, line.number, tok.column,
                             "entry " + std::to_string(v) + " outside [0, " + std::to_string(p - 1) + "]");
        }
        return static_cast<Residue>(v);
    }

    std::pair<std::size_t, PrimeField> header() {
        const auto& line = take("header 'n p'");
        expect_count(line, 2, "header 'n p'");
        auto n = integer(line, line.tokens[0]);
        if (n < 1) {
            throw ParseError(source_, line.number, line.tokens[0].column, "n must be positive");
        }
        auto p = integer(line, line.tokens[1]);
        if (p < 2 || static_cast<std::uint64_t>(p) > PrimeField::max_modulus || !is_prime(static_cast<std::uint64_t>(p))) {
            throw ParseError(source_, line.number, line.tokens[1].column,
                             "p = " + std::to_string(p) + " is not a prime in [2, 2^31 - 1]");
        }
        return {static_cast<std::size_t>(n), PrimeField(static_cast<std::uint64_t>(p))};
    }

    FpMatrix matrix_block(std::size_t n, const PrimeField& field) {
        FpMatrix a(n, n, field);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& line = take("matrix row");
            expect_count(line, n, "matrix row");
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = residue(line, line.tokens[j], field.modulus());
            }
        }
        return a;
    }

    void expect_end() const {
        if (!done()) {
            const auto& line = lines_[next_];
            throw ParseError(source_, line.number, line.tokens.front().column, "unexpected trailing content");
        }
    }

    const std::string& source() const noexcept { return source_; }

  private:
    std::vector<Line> lines_;
    std::string source_;
    std::size_t next_ = 0;
};

Json vector_json(std::span<const Residue> x) {
    Json arr = Json::array();
    for (auto v : x) {
        arr.push_back(v);
    }
    return arr;
}

} // namespace

FpMatrix parse_matrix(std::string_view text, const std::string& source) {
    Reader r(text, source);
    auto [n, field] = r.header();
    FpMatrix a = r.matrix_block(n, field);
    r.expect_end();
    return a;
}

std::string render_matrix(const FpMatrix& a) {
    std::ostringstream os;
    os << a.rows() << ' ' << a.field().modulus() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            os << (j ? " " : "") << a(i, j);
        }
        os << '\n';
    }
    return os.str();
}

GraphFile parse_graph(std::string_view text, const std::string& source) {
    Reader r(text, source);
    auto [n, field] = r.header();
    GraphSpec g(n);
    while (!r.done()) {
        const auto& line = r.take("edge");
        r.expect_count(line, 2, "edge 'i j'");
        auto i = r.integer(line, line.tokens[0]);
        auto j = r.integer(line, line.tokens[1]);
        for (auto [v, tok] : {std::pair{i, line.tokens[0]}, std::pair{j, line.tokens[1]}}) {
            if (v < 1 || v > static_cast<std::int64_t>(n)) {
                throw ParseError(source, line.number, tok.column,
                                 "vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
            }
        }
        if (g.has_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
            throw ParseError(source, line.number, line.tokens[0].column, "duplicate edge");
        }
        g.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
    return {std::move(g), field};
}

std::string render_graph(const GraphSpec& g, const PrimeField& field) {
    std::ostringstream os;
    os << g.vertex_count() << ' ' << field.modulus() << '\n';
    for (auto [i, j] : g.edges()) {
        os << i << ' ' << j << '\n';
    }
    return os.str();
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
    Reader r(text, source);
    auto [n, field] = r.header();
    FpMatrix a = r.matrix_block(n, field);
    const auto& init = r.take("initial state");
    r.expect_count(init, n, "initial state");
    FpVector x0(n);
    for (std::size_t i = 0; i < n; ++i) {
        x0[i] = r.residue(init, init.tokens[i], field.modulus());
    }
    Scenario sc{std::move(a), std::move(x0), std::nullopt};
    if (r.done()) {
        return sc;
    }
    const auto& head = r.take("measurement block");
    if (head.tokens.front().text != "measurements") {
        throw ParseError(source, head.number, head.tokens.front().column, "expected 'measurements m'");
    }
    r.expect_count(head, 2, "measurement header");
    auto m = r.integer(head, head.tokens[1]);
    if (m < 0) {
        throw ParseError(source, head.number, head.tokens[1].column, "edge count must be nonnegative");
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    FpVector eta;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::int64_t k = 0; k < m; ++k) {
        const auto& line = r.take("measurement 'i j eta'");
        r.expect_count(line, 3, "measurement 'i j eta'");
        auto i = r.integer(line, line.tokens[0]);
        auto j = r.integer(line, line.tokens[1]);
        if (i < 1 || j > static_cast<std::int64_t>(n) || i >= j) {
            throw ParseError(source, line.number, line.tokens[0].column,
                             "measurement edge must satisfy 1 <= i < j <= n");
        }
        if (!seen.emplace(i, j).second) {
            throw ParseError(source, line.number, line.tokens[0].column, "duplicate measurement edge");
        }
        edges.emplace_back(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
        eta.push_back(r.residue(line, line.tokens[2], field.modulus()));
    }
    r.expect_end();
    sc.measurements.emplace(n, field, std::move(edges), std::move(eta));
    return sc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << contents;
}

std::string vector_string(std::span<const Residue> x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += (i ? "," : "") + std::to_string(x[i]);
    }
    return s + ")";
}

Json matrix_json(const FpMatrix& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        rows.push_back(vector_json(a.row(i)));
    }
    return rows;
}

Json consensus_report_json(const ConsensusReport& r) {
    Json j;
    j["row_stochastic"] = r.is_row_stochastic;
    j["column_stochastic"] = r.is_column_stochastic;
    j["nilpotent"] = r.is_nilpotent;
    j["consensus"] = r.achieves_consensus;
    j["average_consensus"] = r.achieves_average_consensus;
    j["average_reason"] = r.average_reason;
    j["char_poly"] = r.char_poly.to_string();
    j["char_poly_coeffs"] = vector_json(r.char_poly.coeffs());
    j["convergence_time"] = r.convergence_time ? Json(*r.convergence_time) : Json(nullptr);
    j["pi"] = r.pi ? vector_json(*r.pi) : Json(nullptr);
    return j;
}

Json inventory_json(const CycleInventory& inv) {
    Json arr = Json::array();
    for (const auto& [len, count] : inv) {
        arr.push_back(Json{{"length", len}, {"count", count}});
    }
    return arr;
}

Json design_result_json(const DesignResult& r, const PrimeField& field) {
    Json j;
    j["p"] = field.modulus();
    j["search_exhaustive"] = r.search_exhaustive;
    j["total_count"] = r.total_count ? Json(*r.total_count) : Json(nullptr);
    j["candidates_examined"] = r.candidates_examined;
    if (r.existence_bound_exponent) {
        j["existence_bound"] = Json{{"base", field.modulus()}, {"exponent", *r.existence_bound_exponent}};
    } else {
        j["existence_bound"] = nullptr;
    }
    Json mats = Json::array();
    for (const auto& m : r.matrices) {
        mats.push_back(matrix_json(m));
    }
    j["matrices"] = std::move(mats);
    return j;
}

Json make_report(const std::string& kind, const Json& payload) {
    Json j;
    j["schema"] = report_schema;
    j["kind"] = kind;
    for (auto it = payload.begin(); it != payload.end(); ++it) {
        j[it.key()] = it.value();
    }
    return j;
}

void validate_report(const Json& report) {
    auto fail = [](const std::string& what) { throw ParseError("<report>", 1, 1, what); };
    if (!report.is_object()) {
        fail("report is not an object");
    }
    if (!report.contains("schema") || report["schema"] != report_schema) {
        fail("missing or unknown schema");
    }
    static const std::map<std::string, std::vector<std::string>> required = {
        {"analyze", {"n", "p", "matrix", "certification"}},
        {"design", {"n", "p", "construction", "result"}},
        {"simulate", {"n", "p", "rounds", "final_state", "rounds_to_fixed"}},
        {"average", {"n", "p", "rounds", "x_field", "x_average", "rounds_to_consensus"}},
        {"pose", {"n", "p", "edges", "rounds", "theta", "rounds_to_fixed", "error_constant_from", "residual_nonzero"}},
    };
    if (!report.contains("kind") || !report["kind"].is_string()) {
        fail("missing kind");
    }
    auto it = required.find(report["kind"].get<std::string>());
    if (it == required.end()) {
        fail("unknown report kind '" + report["kind"].get<std::string>() + "'");
    }
    for (const auto& key : it->second) {
        if (!report.contains(key)) {
            fail("report of kind '" + it->first + "' lacks '" + key + "'");
        }
    }
}

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "round";
    const std::size_t n = t.states.empty() ? 0 : t.states.front().size();
    for (std::size_t i = 1; i <= n; ++i) {
        os << ",x" << i;
    }
    os << '\n';
    for (std::size_t r = 0; r < t.states.size(); ++r) {
        os << r;
        for (auto v : t.states[r]) {
            os << ',' << v;
        }
        os << '\n';
    }
    return os.str();
}

std::string error_trace_csv(const std::vector<FpVector>& trace) {
    std::ostringstream os;
    os << "round,nonzero";
    const std::size_t m = trace.empty() ? 0 : trace.front().size();
    for (std::size_t k = 1; k <= m; ++k) {
        os << ",e" << k;
    }
    os << '\n';
    for (std::size_t r = 0; r < trace.size(); ++r) {
        std::size_t nonzero = 0;
        for (auto v : trace[r]) {
            nonzero += v != 0;
        }
        os << r << ',' << nonzero;
        for (auto v : trace[r]) {
            os << ',' << v;
        }
        os << '\n';
    }
    return os.str();
}

std::string transition_graph_dot(const TransitionGraph& tg) {
    const Residue p = tg.field.modulus();
    std::ostringstream os;
    os << "digraph transition {\n";
    os << "  node [shape=circle];\n";
    for (std::uint64_t s = 0; s < tg.state_count(); ++s) {
        auto x = decode_state(s, tg.n, p);
        bool consensus = std::all_of(x.begin(), x.end(), [&](Residue v) { return v == x.front(); });
        os << "  v" << s << " [label=\"" << vector_string(x) << "\"";
        if (consensus) {
            os << ", shape=doublecircle";
        }
        if (tg.on_cycle[s]) {
            os << ", style=bold";
        }
        os << "];\n";
    }
    for (std::uint64_t s = 0; s < tg.state_count(); ++s) {
        os << "  v" << s << " -> v" << tg.successor[s] << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace ffc::io
