#pragma once

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mstup/flows.hpp"
#include "mstup/graph.hpp"
#include "mstup/raise.hpp"
#include "mstup/rational.hpp"

namespace mstup {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Strips '#' comments and surrounding whitespace; empty result = skip line.
inline std::string strip_line(const std::string& raw) {
    std::string line = raw.substr(0, raw.find('#'));
    const char* ws = " \t\r\n";
    auto a = line.find_first_not_of(ws);
    if (a == std::string::npos) return "";
    auto b = line.find_last_not_of(ws);
    return line.substr(a, b - a + 1);
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline long long parse_int_token(const std::string& tok, int line_no, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " + what + ", got '" + tok + "'");
    }
}

}  // namespace detail

/// Instance grammar: '#' starts a comment, blank lines are skipped. The
/// first data line is the vertex count; every following line is one edge
/// "u v weight cost [cap]" (omitted cap means no upgrade bound).
inline WeightedGraph parse_instance(std::istream& in) {
    std::optional<int> vertex_count;
    std::vector<Edge> edges;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;
        std::vector<std::string> toks = detail::tokens_of(line);
        if (!vertex_count) {
            if (toks.size() != 1)
                throw ParseError("line " + std::to_string(line_no) + ": expected the vertex count alone");
            vertex_count = static_cast<int>(detail::parse_int_token(toks[0], line_no, "the vertex count"));
            continue;
        }
        if (toks.size() != 4 && toks.size() != 5)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v weight cost [cap]'");
        Edge e;
        e.u = static_cast<int>(detail::parse_int_token(toks[0], line_no, "an endpoint"));
        e.v = static_cast<int>(detail::parse_int_token(toks[1], line_no, "an endpoint"));
        e.weight = detail::parse_int_token(toks[2], line_no, "a weight");
        e.cost = detail::parse_int_token(toks[3], line_no, "a cost");
        if (toks.size() == 5) e.cap = detail::parse_int_token(toks[4], line_no, "a cap");
        edges.push_back(e);
    }
    if (!vertex_count) throw ParseError("empty instance: no vertex count line");
    try {
        return WeightedGraph(*vertex_count, std::move(edges));
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("invalid instance: ") + err.what());
    }
}

/// Directed variant for the flow solvers: first data line "n source sink",
/// then arcs "u v base cost [cap]".
inline FlowNetwork parse_flow_instance(std::istream& in) {
    FlowNetwork net;
    bool have_header = false;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;
        std::vector<std::string> toks = detail::tokens_of(line);
        if (!have_header) {
            if (toks.size() != 3)
                throw ParseError("line " + std::to_string(line_no) + ": expected 'node_count source sink'");
            net.node_count = static_cast<int>(detail::parse_int_token(toks[0], line_no, "the node count"));
            net.source = static_cast<int>(detail::parse_int_token(toks[1], line_no, "the source"));
            net.sink = static_cast<int>(detail::parse_int_token(toks[2], line_no, "the sink"));
            have_header = true;
            continue;
        }
        if (toks.size() != 4 && toks.size() != 5)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v base cost [cap]'");
        Arc a;
        a.from = static_cast<int>(detail::parse_int_token(toks[0], line_no, "an endpoint"));
        a.to = static_cast<int>(detail::parse_int_token(toks[1], line_no, "an endpoint"));
        a.base = detail::parse_int_token(toks[2], line_no, "a base value");
        a.cost = detail::parse_int_token(toks[3], line_no, "a cost");
        if (toks.size() == 5) a.cap = detail::parse_int_token(toks[4], line_no, "a cap");
        net.arcs.push_back(a);
    }
    if (!have_header) throw ParseError("empty instance: no header line");
    try {
        validate_network(net);
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("invalid network: ") + err.what());
    }
    return net;
}

inline std::string write_instance(const WeightedGraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << "\n";
    for (const Edge& e : g.edges()) {
        out << e.u << " " << e.v << " " << e.weight << " " << e.cost;
        if (e.cap) out << " " << *e.cap;
        out << "\n";
    }
    return out.str();
}

/// Per-edge weight overrides "edge_id weight" (rationals allowed); used to
/// feed final weights into the decomposition checker.
inline std::vector<Rat> parse_weight_vector(std::istream& in, const WeightedGraph& g) {
    std::vector<Rat> w;
    for (const Edge& e : g.edges()) w.push_back(Rat(e.weight));
    std::vector<char> seen(g.edge_count(), 0);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::strip_line(raw);
        if (line.empty()) continue;
        std::vector<std::string> toks = detail::tokens_of(line);
        if (toks.size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'edge_id weight'");
        long long id = detail::parse_int_token(toks[0], line_no, "an edge id");
        if (id < 0 || id >= g.edge_count())
            throw ParseError("line " + std::to_string(line_no) + ": edge id out of range");
        try {
            w[id] = parse_rat(toks[1]);
        } catch (const std::invalid_argument& err) {
            throw ParseError("line " + std::to_string(line_no) + ": " + err.what());
        }
        seen[id] = 1;
    }
    return w;
}

/// Solver outcome in serializable form. Rationals travel as strings
/// ("num/den", integers plain), never as floating point.
struct ResultRecord {
    std::string solver;
    std::map<std::string, std::string> parameters;
    Rat increase;
    Rat cost;
    std::vector<std::pair<int, Rat>> perturbation;  // nonzero amounts, by edge id
    std::optional<std::vector<CurvePoint>> curve;
    std::vector<std::string> trace_summary;
};

inline ResultRecord make_record(const std::string& solver, const WeightedGraph& g, const Perturbation& x) {
    ResultRecord rec;
    rec.solver = solver;
    rec.cost = x.total_cost(g);
    rec.increase = mst_weight(g, x) - mst_weight(g, Perturbation::zero(g));
    for (int id = 0; id < g.edge_count(); ++id)
        if (x.amounts[id] != Rat(0)) rec.perturbation.push_back({id, x.amounts[id]});
    return rec;
}

inline std::vector<std::string> summarize_trace(const Trace& tr) {
    std::vector<std::string> lines;
    for (const LiftStep& s : tr.steps) {
        std::ostringstream out;
        out << "lift {";
        for (std::size_t i = 0; i < s.certificate.set_s.size(); ++i)
            out << (i ? "," : "") << s.certificate.set_s[i];
        out << "} by " << format_rat(s.amount) << " (coverage " << s.certificate.cov << ", cost "
            << s.certificate.cut_cost << ", budget " << format_rat(s.budget_after) << ", mst "
            << format_rat(s.mst_after) << ")";
        lines.push_back(out.str());
    }
    return lines;
}

inline nlohmann::json to_json(const ResultRecord& rec) {
    nlohmann::json j;
    j["solver"] = rec.solver;
    j["parameters"] = rec.parameters;
    j["increase"] = format_rat(rec.increase);
    j["cost"] = format_rat(rec.cost);
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& [id, amount] : rec.perturbation) xs.push_back({id, format_rat(amount)});
    j["perturbation"] = xs;
    if (rec.curve) {
        nlohmann::json pts = nlohmann::json::array();
        for (const CurvePoint& p : *rec.curve)
            pts.push_back({format_rat(p.budget), format_rat(p.mst_weight), format_rat(p.slope_after)});
        j["curve"] = pts;
    }
    j["trace"] = rec.trace_summary;
    return j;
}

inline ResultRecord record_from_json(const nlohmann::json& j) {
    ResultRecord rec;
    rec.solver = j.at("solver").get<std::string>();
    for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
        rec.parameters[it.key()] = it.value().get<std::string>();
    rec.increase = parse_rat(j.at("increase").get<std::string>());
    rec.cost = parse_rat(j.at("cost").get<std::string>());
    for (const auto& entry : j.at("perturbation"))
        rec.perturbation.push_back({entry.at(0).get<int>(), parse_rat(entry.at(1).get<std::string>())});
    if (j.contains("curve")) {
        std::vector<CurvePoint> pts;
        for (const auto& p : j.at("curve"))
            pts.push_back({parse_rat(p.at(0).get<std::string>()), parse_rat(p.at(1).get<std::string>()),
                           parse_rat(p.at(2).get<std::string>())});
        rec.curve = std::move(pts);
    }
    for (const auto& line : j.at("trace")) rec.trace_summary.push_back(line.get<std::string>());
    return rec;
}

/// "budget,mst_weight,slope" rows for plotting.
inline std::string curve_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream out;
    out << "budget,mst_weight,slope\n";
    for (const CurvePoint& p : points)
        out << format_rat(p.budget) << "," << format_rat(p.mst_weight) << "," << format_rat(p.slope_after) << "\n";
    return out.str();
}

}  // namespace mstup
