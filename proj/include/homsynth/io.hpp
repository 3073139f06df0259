#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "homsynth/abp.hpp"
#include "homsynth/circuit.hpp"
#include "homsynth/decomposition.hpp"
#include "homsynth/graph.hpp"
#include "homsynth/widths.hpp"

namespace homsynth {

using Json = nlohmann::ordered_json;

namespace detail {

template <class T>
T json_get(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing JSON field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw FormatError(std::string("JSON field '") + key + "' has the wrong type");
    }
}

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Graphs

inline Json graph_to_json(const Graph& g) {
    Json edges = Json::array();
    for (auto& e : g.edges()) edges.push_back({e.first, e.second});
    return Json{{"vertex_count", g.vertex_count()}, {"edges", edges}};
}

// ---------------------------------------------------------------------------
// Decompositions

inline Json rep_to_json(const EdgeRepresentation& rep) {
    Json r = Json::object();
    for (auto& [e, node] : rep) r[edge_key(e)] = node;
    return r;
}

inline Json decomposition_to_json(const RootedTreeDecomposition& t, const EdgeRepresentation* rep = nullptr) {
    Json nodes = Json::array();
    for (int i = 0; i < t.size(); ++i) nodes.push_back(Json{{"id", i}, {"parent", t.parent(i)}, {"bag", t.bag(i)}});
    Json j{{"root", t.root()}, {"nodes", nodes}};
    if (rep) j["rep"] = rep_to_json(*rep);
    return j;
}

inline RootedTreeDecomposition decomposition_from_json(const Json& j) {
    int root = detail::json_get<int>(j, "root");
    auto nodes = detail::json_get<Json>(j, "nodes");
    if (!nodes.is_array() || nodes.empty()) throw FormatError("'nodes' must be a nonempty array");
    std::vector<TreeNode> out(nodes.size());
    std::vector<char> seen(nodes.size(), 0);
    for (auto& n : nodes) {
        int id = detail::json_get<int>(n, "id");
        if (id < 0 || id >= static_cast<int>(nodes.size()) || seen[id])
            throw FormatError("node ids must be 0.." + std::to_string(nodes.size() - 1) + " without repeats");
        seen[id] = 1;
        out[id] = TreeNode{detail::json_get<int>(n, "parent"), detail::json_get<Bag>(n, "bag")};
    }
    RootedTreeDecomposition t(std::move(out), root);
    if (!t.is_tree()) throw FormatError("parent links do not form a tree rooted at " + std::to_string(root));
    return t;
}

inline EdgeRepresentation rep_from_json(const Json& j) {
    EdgeRepresentation rep;
    if (!j.is_object()) throw FormatError("'rep' must be an object");
    for (auto& [key, node] : j.items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos) throw FormatError("bad edge key '" + key + "'");
        try {
            rep[make_edge(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)))] = node.get<int>();
        } catch (const std::exception&) {
            throw FormatError("bad edge key '" + key + "'");
        }
    }
    return rep;
}

inline Json certificate_to_json(const WidthCertificate& c) {
    Json j{{"parameter", to_string(c.parameter)}, {"delta", c.delta}, {"value", c.value}};
    RootedTreeDecomposition t = c.is_path() ? c.path().as_tree() : c.tree();
    if (c.is_path()) j["bags"] = c.path().bags;
    Json d = decomposition_to_json(t);
    j["root"] = d["root"];
    j["nodes"] = d["nodes"];
    return j;
}

inline WidthCertificate certificate_from_json(const Json& j) {
    WidthCertificate c;
    auto p = detail::json_get<std::string>(j, "parameter");
    if (p == "tw_delta") c.parameter = WidthParameter::tw_delta;
    else if (p == "pw_delta") c.parameter = WidthParameter::pw_delta;
    else if (p == "ptw_delta") c.parameter = WidthParameter::ptw_delta;
    else if (p == "ppw_delta") c.parameter = WidthParameter::ppw_delta;
    else throw FormatError("unknown parameter '" + p + "'");
    c.delta = detail::json_get<int>(j, "delta");
    c.value = detail::json_get<int>(j, "value");
    if (j.contains("bags"))
        c.certificate = PathDecomposition{detail::json_get<std::vector<Bag>>(j, "bags")};
    else
        c.certificate = decomposition_from_json(j);
    return c;
}

inline std::string decomposition_to_dot(const RootedTreeDecomposition& t, const EdgeRepresentation* rep = nullptr) {
    std::map<int, std::vector<std::string>> repped;
    if (rep)
        for (auto& [e, node] : *rep) repped[node].push_back(edge_key(e));
    std::ostringstream os;
    os << "digraph decomposition {\n  node [shape=box];\n";
    for (int i = 0; i < t.size(); ++i) {
        os << "  n" << i << " [label=\"" << i << ": {";
        for (std::size_t k = 0; k < t.bag(i).size(); ++k) os << (k ? "," : "") << t.bag(i)[k];
        os << "}";
        if (repped.count(i)) {
            os << "\\nrep:";
            for (auto& s : repped[i]) os << " " << s;
        }
        os << "\"];\n";
    }
    for (int i = 0; i < t.size(); ++i)
        if (i != t.root()) os << "  n" << t.parent(i) << " -> n" << i << ";\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Circuits

inline Json circuit_to_json(const Circuit& c) {
    Json gates = Json::array();
    for (int i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(i);
        Json j{{"id", i}, {"kind", to_string(g.kind)}, {"children", g.children}};
        if (g.kind == GateKind::input) j["var"] = to_string(g.var);
        if (g.kind == GateKind::constant) j["const"] = to_string(g.value);
        gates.push_back(std::move(j));
    }
    return Json{{"output", c.output()}, {"gates", gates}};
}

inline Circuit circuit_from_json(const Json& j) {
    int output = detail::json_get<int>(j, "output");
    auto gates = detail::json_get<Json>(j, "gates");
    if (!gates.is_array()) throw FormatError("'gates' must be an array");
    std::vector<Gate> out;
    out.reserve(gates.size());
    for (auto& g : gates) {
        int id = detail::json_get<int>(g, "id");
        if (id != static_cast<int>(out.size())) throw FormatError("gate ids must be consecutive from 0");
        Gate gate;
        gate.kind = parse_gate_kind(detail::json_get<std::string>(g, "kind"));
        if (g.contains("children")) gate.children = detail::json_get<std::vector<int>>(g, "children");
        if (gate.kind == GateKind::input) gate.var = parse_variable(detail::json_get<std::string>(g, "var"));
        if (gate.kind == GateKind::constant) gate.value = parse_rational(detail::json_get<std::string>(g, "const"));
        out.push_back(std::move(gate));
    }
    return Circuit(std::move(out), output);
}

inline std::string circuit_to_dot(const Circuit& c) {
    std::ostringstream os;
    os << "digraph circuit {\n  rankdir=BT;\n";
    for (int i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(i);
        os << "  g" << i << " [";
        switch (g.kind) {
            case GateKind::input: os << "shape=box,label=\"" << to_string(g.var) << "\""; break;
            case GateKind::constant: os << "shape=plaintext,label=\"" << to_string(g.value) << "\""; break;
            case GateKind::add: os << "shape=circle,label=\"+\""; break;
            case GateKind::mul: os << "shape=doublecircle,label=\"x\""; break;
        }
        if (i == c.output()) os << ",penwidth=2";
        os << "];\n";
    }
    for (int i = 0; i < c.size(); ++i)
        for (int ch : c.gate(i).children) os << "  g" << ch << " -> g" << i << ";\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// ABPs

inline Label parse_label(const std::string& s) {
    if (!s.empty() && (s[0] == 'x' || s[0] == 'y')) return Label::variable(parse_variable(s));
    return Label::constant(parse_rational(s));
}

inline Json abp_to_json(const ABP& a) {
    Json edges = Json::array();
    for (auto& e : a.edges) edges.push_back(Json{{"from", e.from}, {"to", e.to}, {"label", to_string(e.label)}});
    return Json{{"nodes", a.node_count}, {"source", a.source}, {"sink", a.sink}, {"edges", edges}};
}

inline ABP abp_from_json(const Json& j) {
    ABP a;
    a.node_count = detail::json_get<int>(j, "nodes");
    a.source = detail::json_get<int>(j, "source");
    a.sink = detail::json_get<int>(j, "sink");
    if (a.node_count < 2) throw FormatError("ABP needs at least two nodes");
    for (auto& e : detail::json_get<Json>(j, "edges")) {
        AbpEdge edge{detail::json_get<int>(e, "from"), detail::json_get<int>(e, "to"),
                     parse_label(detail::json_get<std::string>(e, "label"))};
        if (edge.from < 0 || edge.from >= a.node_count || edge.to < 0 || edge.to >= a.node_count)
            throw FormatError("ABP edge endpoint out of range");
        a.edges.push_back(edge);
    }
    return a;
}

inline std::string abp_to_dot(const ABP& a) {
    std::ostringstream os;
    os << "digraph abp {\n  rankdir=LR;\n";
    for (int v = 0; v < a.node_count; ++v) {
        os << "  v" << v << " [shape=circle,label=\"" << (v == a.source ? "s" : v == a.sink ? "t" : std::to_string(v)) << "\"];\n";
    }
    for (auto& e : a.edges) os << "  v" << e.from << " -> v" << e.to << " [label=\"" << to_string(e.label) << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace homsynth
