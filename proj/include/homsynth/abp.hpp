#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "homsynth/circuit.hpp"
#include "homsynth/errors.hpp"

namespace homsynth {

/// Edge label: a variable or a nonnegative constant.
struct Label {
    bool is_constant = false;
    VariableId var;
    Rational value = 0;

    static Label variable(const VariableId& x) { return {false, x, 0}; }
    static Label constant(const Rational& c) { return {true, {}, c}; }
    friend bool operator==(const Label&, const Label&) = default;
};

inline std::string to_string(const Label& l) { return l.is_constant ? to_string(l.value) : to_string(l.var); }

struct AbpEdge {
    int from = 0, to = 0;
    Label label;
    friend bool operator==(const AbpEdge&, const AbpEdge&) = default;
};

/// Algebraic branching program. Parallel edges are allowed; the computed
/// polynomial is the sum over source-to-sink paths of the product of labels.
struct ABP {
    int node_count = 2;
    int source = 0;
    int sink = 1;
    std::vector<AbpEdge> edges;

    int size() const { return node_count; }

    /// Nodes in topological order; throws FormatError on a cycle or bad endpoint.
    std::vector<int> topological_order() const {
        std::vector<int> indeg(static_cast<std::size_t>(node_count), 0);
        std::vector<std::vector<int>> out(static_cast<std::size_t>(node_count));
        for (auto& e : edges) {
            if (e.from < 0 || e.from >= node_count || e.to < 0 || e.to >= node_count)
                throw FormatError("ABP edge endpoint out of range");
            out[e.from].push_back(e.to);
            ++indeg[e.to];
        }
        std::vector<int> order, stack;
        for (int v = node_count - 1; v >= 0; --v)
            if (indeg[v] == 0) stack.push_back(v);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            order.push_back(v);
            for (int w : out[v])
                if (--indeg[w] == 0) stack.push_back(w);
        }
        if (static_cast<int>(order.size()) != node_count) throw FormatError("ABP has a cycle");
        return order;
    }

    /// Longest source-to-sink path in edges.
    int length() const {
        auto order = topological_order();
        std::vector<int> best(static_cast<std::size_t>(node_count), -1);
        best[source] = 0;
        std::vector<std::vector<int>> out(static_cast<std::size_t>(node_count));
        for (auto& e : edges) out[e.from].push_back(e.to);
        for (int v : order)
            if (best[v] >= 0)
                for (int w : out[v]) best[w] = std::max(best[w], best[v] + 1);
        return std::max(best[sink], 0);
    }

    bool monotone() const {
        return std::all_of(edges.begin(), edges.end(), [](const AbpEdge& e) { return !e.label.is_constant || e.label.value >= 0; });
    }

    /// Empty when acyclic and every node lies on a source-to-sink path.
    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        try {
            topological_order();
        } catch (const FormatError& e) {
            v.emplace_back(e.what());
            return v;
        }
        if (source < 0 || source >= node_count || sink < 0 || sink >= node_count || source == sink) {
            v.emplace_back("bad source/sink");
            return v;
        }
        std::vector<std::vector<int>> out(static_cast<std::size_t>(node_count)), in(static_cast<std::size_t>(node_count));
        for (auto& e : edges) {
            out[e.from].push_back(e.to);
            in[e.to].push_back(e.from);
        }
        auto reach = [&](int start, const std::vector<std::vector<int>>& adj) {
            std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
            std::vector<int> stack{start};
            seen[start] = 1;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : adj[x])
                    if (!seen[y]) seen[y] = 1, stack.push_back(y);
            }
            return seen;
        };
        auto fwd = reach(source, out), bwd = reach(sink, in);
        for (int x = 0; x < node_count; ++x)
            if (!fwd[x] || !bwd[x]) v.push_back("node " + std::to_string(x) + " is on no source-to-sink path");
        return v;
    }

    friend bool operator==(const ABP&, const ABP&) = default;
};

/// Skew circuit: each node becomes the sum over incoming edges of (predecessor gate times label).
inline Circuit abp_to_circuit(const ABP& a) {
    auto order = a.topological_order();
    std::vector<std::vector<const AbpEdge*>> in(static_cast<std::size_t>(a.node_count));
    for (auto& e : a.edges) in[e.to].push_back(&e);
    CircuitBuilder b;
    std::vector<int> gate(static_cast<std::size_t>(a.node_count), -1);
    auto label_gate = [&](const Label& l) { return l.is_constant ? b.constant(l.value) : b.input(l.var); };
    for (int v : order) {
        if (v == a.source) {
            gate[v] = b.constant(1);
            continue;
        }
        std::vector<int> terms;
        for (const AbpEdge* e : in[v]) {
            if (gate[e->from] < 0) continue;
            terms.push_back(b.mul({gate[e->from], label_gate(e->label)}));
        }
        gate[v] = terms.empty() ? -1 : b.add(terms);
    }
    return b.build(gate[a.sink] < 0 ? b.constant(0) : gate[a.sink]);
}

}  // namespace homsynth
