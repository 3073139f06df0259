#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "homsynth/circuit.hpp"
#include "homsynth/decomposition.hpp"
#include "homsynth/graph.hpp"
#include "homsynth/oracle.hpp"
#include "homsynth/parse_tree.hpp"
#include "homsynth/synth.hpp"
#include "homsynth/transform.hpp"
#include "homsynth/widths.hpp"

namespace homsynth {

// ---------------------------------------------------------------------------
// Monomial support

/// Color of each vertex of H read off a colorful monomial; 0 for vertices on no edge.
using MonomialSupport = std::vector<int>;

/// Throws SupportError unless `m` holds exactly one variable of every edge of H
/// with consistent colors at shared endpoints.
inline MonomialSupport monomial_support(const Graph& h, const Monomial& m) {
    MonomialSupport color(static_cast<std::size_t>(h.vertex_count()) + 1, 0);
    std::set<Edge> seen;
    for (const VariableId& x : m) {
        if (x.kind != VarKind::colsub) throw SupportError("monomial contains non-colorful variable " + to_string(x));
        Edge e = x.edge();
        if (!h.has_edge(e.first, e.second)) throw SupportError("variable " + to_string(x) + " names a non-edge");
        if (!seen.insert(e).second) throw SupportError("edge " + edge_key(e) + " occurs twice");
        for (auto [v, c] : {std::pair{e.first, x.i}, std::pair{e.second, x.j}}) {
            if (color[v] != 0 && color[v] != c)
                throw SupportError("vertex " + std::to_string(v) + " gets colors " + std::to_string(color[v]) + " and " +
                                   std::to_string(c));
            color[v] = c;
        }
    }
    if (seen.size() != h.edge_count())
        throw SupportError("monomial covers " + std::to_string(seen.size()) + " of " + std::to_string(h.edge_count()) + " edges");
    return color;
}

// ---------------------------------------------------------------------------
// Parse tree -> tree decomposition

struct ExtractedDecomposition {
    RootedTreeDecomposition tree;  ///< bags in H's labels, all inside V(prune(H))
    std::vector<int> gates;        ///< circuit mul gate of each tree node (-1 for the empty fallback bag)
    MonomialSupport support;
};

/// Marking procedure on a parse tree of a colorful circuit.
///
/// An input gate for edge uv contributes {u,v}, with degree-1 vertices of H marked.
/// A mul gate's bag is the union of its children's unmarked vertices; afterwards
/// every vertex all of whose edges lie below the gate is marked. Input bags are
/// dropped and constant leaves ignored. A tree without mul gates yields one empty bag.
inline ExtractedDecomposition extract_td_from_parse_tree(const Graph& h, const Circuit& c, const ParseTree& p) {
    ExtractedDecomposition out;
    out.support = monomial_support(h, value(c, p).monomial);
    const int m = static_cast<int>(p.nodes.size());
    std::vector<std::set<Edge>> edges(static_cast<std::size_t>(m));
    std::vector<Bag> unmarked(static_cast<std::size_t>(m)), bag(static_cast<std::size_t>(m));
    for (int i = m - 1; i >= 0; --i) {
        const auto& node = p.nodes[i];
        const Gate& g = c.gate(node.gate);
        if (g.kind == GateKind::input) {
            Edge e = g.var.edge();
            edges[i].insert(e);
            for (int v : {e.first, e.second})
                if (h.degree(v) >= 2) unmarked[i].push_back(v);
        } else if (g.kind == GateKind::mul) {
            std::set<int> b;
            for (int ch : node.children) {
                for (auto& e : edges[ch])
                    if (!edges[i].insert(e).second) throw SupportError("edge " + edge_key(e) + " multiplied twice");
                b.insert(unmarked[ch].begin(), unmarked[ch].end());
            }
            bag[i].assign(b.begin(), b.end());
            for (int v : bag[i]) {
                bool complete = true;
                for (int w : h.neighbors(v))
                    if (!edges[i].count(make_edge(v, w))) {
                        complete = false;
                        break;
                    }
                if (!complete) unmarked[i].push_back(v);
            }
        }
    }
    // Tree over mul nodes: parent = nearest mul ancestor; nodes are in pre-order already.
    std::vector<int> parent_node(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i)
        for (int ch : p.nodes[i].children) parent_node[ch] = i;
    std::vector<int> id(static_cast<std::size_t>(m), -1);
    std::vector<TreeNode> nodes;
    for (int i = 0; i < m; ++i) {
        if (c.gate(p.nodes[i].gate).kind != GateKind::mul) continue;
        int a = parent_node[i];
        while (a >= 0 && c.gate(p.nodes[a].gate).kind != GateKind::mul) a = parent_node[a];
        id[i] = static_cast<int>(nodes.size());
        nodes.push_back(TreeNode{a < 0 ? id[i] : id[a], bag[i]});
        out.gates.push_back(p.nodes[i].gate);
    }
    if (nodes.empty()) {
        out.tree = RootedTreeDecomposition::single({});
        out.gates.push_back(-1);
    } else {
        out.tree = RootedTreeDecomposition(std::move(nodes), 0);
    }
    return out;
}

/// Relabels a decomposition with bags inside V(prune(H)) to prune(H)'s labels.
inline RootedTreeDecomposition to_pruned_labels(const PrunedGraph& pg, const RootedTreeDecomposition& t) {
    return t.relabeled([&](int v) {
        if (v < 1 || v >= static_cast<int>(pg.pruned_label.size()) || pg.to_pruned(v) == 0)
            throw InputError("vertex " + std::to_string(v) + " is not in the pruned graph");
        return pg.to_pruned(v);
    });
}

/// C4 on 1..4 with pendant 5 at 4 and pendant 6 at 2.
inline Graph pendant_cycle_graph() { return Graph(6, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {4, 5}, {2, 6}}); }

/// ColSub circuit for pendant_cycle_graph() of product depth 2 whose parse trees
/// multiply (x12 x14)(x23 x26)(x34 x45), summing out 1, 6 and 5 below the top product.
inline Circuit pendant_cycle_circuit(int n) {
    CircuitBuilder b;
    auto x = [&](int u, int v, int cu, int cv) { return b.input(VariableId::colsub(u, v, cu, cv)); };
    std::vector<int> top;
    for (int c2 = 1; c2 <= n; ++c2)
        for (int c3 = 1; c3 <= n; ++c3)
            for (int c4 = 1; c4 <= n; ++c4) {
                std::vector<int> a, bb, cc;
                for (int c = 1; c <= n; ++c) {
                    a.push_back(b.mul({x(1, 2, c, c2), x(1, 4, c, c4)}));
                    bb.push_back(b.mul({x(2, 3, c2, c3), x(2, 6, c2, c)}));
                    cc.push_back(b.mul({x(3, 4, c3, c4), x(4, 5, c4, c)}));
                }
                top.push_back(b.mul({b.add(a), b.add(bb), b.add(cc)}));
            }
    return b.build(b.add(top));
}

// ---------------------------------------------------------------------------
// Gate-support census

struct CensusEntry {
    int gate = 0;
    GateKind kind = GateKind::add;
    std::uint64_t monomials = 0;  ///< distinct monomials whose parse trees contain the gate
    int max_bag = 0;              ///< largest extracted bag at the gate (t+1), 0 if none
    std::uint64_t bound = 0;      ///< n^(k - max_bag)
    bool ok = true;
};

struct CensusReport {
    std::uint64_t parse_trees = 0;
    std::uint64_t distinct_monomials = 0;
    std::vector<CensusEntry> entries;  ///< gates on at least one parse tree, by id
    int violations = 0;
};

inline constexpr std::uint64_t kCensusCap = 100'000;

/// For every gate, counts the monomials through it and checks the count against
/// n^(k-t-1) where t+1 is the largest bag extracted at the gate.
inline CensusReport gate_support_census(const Circuit& c, const Graph& h, int n, std::uint64_t cap = kCensusCap) {
    ParseTreeEnumerator en(c, cap);
    const int k = h.vertex_count();
    std::map<Monomial, int> mono_id;
    std::vector<std::vector<int>> through(static_cast<std::size_t>(c.size()));
    std::vector<int> max_bag(static_cast<std::size_t>(c.size()), 0);
    std::vector<char> touched(static_cast<std::size_t>(c.size()), 0);
    CensusReport r;
    r.parse_trees = en.count();
    for (std::uint64_t i = 0; i < en.count(); ++i) {
        ParseTree p = en.at(i);
        auto ex = extract_td_from_parse_tree(h, c, p);
        Monomial mono = value(c, p).monomial;
        int id = mono_id.emplace(mono, static_cast<int>(mono_id.size())).first->second;
        for (int g : p.gates()) {
            through[g].push_back(id);
            touched[g] = 1;
        }
        for (int t = 0; t < ex.tree.size(); ++t)
            if (ex.gates[t] >= 0)
                max_bag[ex.gates[t]] = std::max(max_bag[ex.gates[t]], static_cast<int>(ex.tree.bag(t).size()));
    }
    r.distinct_monomials = mono_id.size();
    for (int g = 0; g < c.size(); ++g) {
        if (!touched[g]) continue;
        auto& ids = through[g];
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        CensusEntry e;
        e.gate = g;
        e.kind = c.gate(g).kind;
        e.monomials = ids.size();
        e.max_bag = max_bag[g];
        e.bound = detail::saturating_pow(static_cast<std::uint64_t>(n), k - e.max_bag);
        e.ok = e.monomials <= e.bound;
        if (!e.ok) ++r.violations;
        r.entries.push_back(e);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Reductions between ColSub and Hom

enum class DiagonalMode { keep, zero };

inline std::string to_string(DiagonalMode d) { return d == DiagonalMode::keep ? "keep" : "zero"; }

inline DiagonalMode parse_diagonal_mode(const std::string& s) {
    if (s == "keep") return DiagonalMode::keep;
    if (s == "zero") return DiagonalMode::zero;
    throw FormatError("unknown diagonal mode '" + s + "' (expected keep or zero)");
}

/// x[e=u-v][i,j] -> x[i,j]; with DiagonalMode::zero the variables with i == j go to 0.
inline Circuit reduce_colsub_to_hom(const Circuit& c, const Graph& h, DiagonalMode diagonal = DiagonalMode::keep) {
    return substitute(c, [&](const VariableId& x) -> std::optional<Image> {
        if (x.kind != VarKind::colsub) return std::nullopt;
        if (!h.has_edge(x.u, x.v)) throw InputError("variable " + to_string(x) + " names a non-edge");
        if (diagonal == DiagonalMode::zero && x.i == x.j) return Image::constant(0);
        return Image::variable(VariableId::hom(x.i, x.j));
    });
}

struct HomToColsubResult {
    Circuit circuit;
    long long automorphisms = 1;
    std::vector<int> stage_sizes;  ///< after substitution, after each derivative, after y := 0, after scaling
    bool integrality_checked = false;
};

/// Blown-up index (u,p) of [k] x [n] as the Hom index (u-1)*n + p.
inline int blown_up_index(int u, int p, int n) { return (u - 1) * n + p; }

/// From a circuit for Hom_{H,kn} over the blown-up index set to one for ColSub_{H,n}:
/// substitute x[(u,p),(v,q)] -> x[e=u-v][p,q] * y[u-v] (0 off the edges of H),
/// differentiate by every y, set y := 0 and divide by |aut(H)|.
inline HomToColsubResult reduce_hom_to_colsub(const Circuit& c, const Graph& h, int n,
                                              std::size_t gate_cap = 1'000'000, std::uint64_t expand_cap = kExpandCap) {
    if (n < 1) throw DomainError("n must be positive");
    const int k = h.vertex_count();
    HomToColsubResult r;
    r.automorphisms = automorphism_count(h);
    Circuit cur = substitute(
        c,
        [&](const VariableId& x) -> std::optional<Image> {
            if (x.kind != VarKind::hom) throw InputError("expected a Hom circuit, found " + to_string(x));
            if (x.i < 1 || x.j > k * n) throw InputError("index of " + to_string(x) + " outside [k*n]");
            int u = (x.i - 1) / n + 1, p = (x.i - 1) % n + 1;
            int v = (x.j - 1) / n + 1, q = (x.j - 1) % n + 1;
            if (u == v || !h.has_edge(u, v)) return Image::constant(0);
            return Image::product(VariableId::colsub(u, v, p, q), VariableId::aux(u, v));
        },
        gate_cap);
    r.stage_sizes.push_back(cur.size());
    for (const Edge& e : h.edges()) {
        cur = differentiate(cur, VariableId::aux(e.first, e.second), gate_cap);
        r.stage_sizes.push_back(cur.size());
    }
    cur = substitute(
        cur, [](const VariableId& x) -> std::optional<Image> {
            if (x.kind == VarKind::aux) return Image::constant(0);
            return std::nullopt;
        },
        gate_cap);
    r.stage_sizes.push_back(cur.size());
    cur = scale(cur, Rational(1, r.automorphisms));
    r.stage_sizes.push_back(cur.size());
    if (parse_tree_count(cur) <= expand_cap) {
        auto poly = expand(cur, expand_cap);
        for (auto& [m, coeff] : poly.terms())
            if (denominator(coeff) != 1)
                throw ConsistencyError("coefficient " + to_string(coeff) + " of " + to_string(m) +
                                       " is not integral after dividing by |aut(H)| = " + std::to_string(r.automorphisms));
        r.integrality_checked = true;
    }
    r.circuit = std::move(cur);
    return r;
}

// ---------------------------------------------------------------------------
// Experiments

struct ScalingRow {
    int n = 0;
    int gate_count = 0;  ///< add and mul gates
    int size = 0;        ///< all gates
    std::uint64_t predicted_size_bound = 0;
    int product_depth = 0;
};

struct ScalingReport {
    int delta = 1;
    PolyKind kind = PolyKind::hom;
    int width = 0;  ///< w: largest bag of the pendant-augmented certificate
    std::vector<ScalingRow> rows;
    double slope = 0;
    double tolerance = 0.15;
    bool within_tolerance = false;
    WidthCertificate certificate;
};

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

inline ScalingReport scaling_experiment(const Graph& h, int delta, PolyKind kind, const std::vector<int>& n_list,
                                        std::size_t gate_cap = kDefaultGateCap) {
    if (n_list.size() < 3) throw DomainError("scaling needs at least three values of n");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1]) throw DomainError("n values must be strictly ascending");
    ScalingReport r;
    r.delta = delta;
    r.kind = kind;
    std::vector<double> xs, ys;
    for (int n : n_list) {
        auto res = synth_circuit(h, n, delta, kind, gate_cap);
        auto m = metrics(res.circuit);
        ScalingRow row{n, m.adds + m.muls, m.size, res.plan.predicted_size_bound, m.product_depth};
        r.rows.push_back(row);
        r.width = res.plan.max_bag;
        r.certificate = res.plan.certificate;
        xs.push_back(n);
        ys.push_back(std::max(row.gate_count, 1));
    }
    r.slope = loglog_slope(xs, ys);
    r.within_tolerance = std::abs(r.slope - r.width) <= r.tolerance;
    return r;
}

struct HierarchyRow {
    int n = 0;
    int size = 0;  ///< depth-(delta+1) circuit, all gates
    int product_depth = 0;
    std::uint64_t lower_bound = 0;  ///< n^(ptw_delta + 1)
};

struct HierarchyReport {
    int d = 2;
    int delta = 1;
    Graph graph;  ///< full d-ary tree of height delta + 2
    WidthCertificate upper;  ///< ptw_{delta+1}
    WidthCertificate lower;  ///< ptw_delta
    std::vector<HierarchyRow> rows;
};

inline HierarchyReport hierarchy_report(int d, int delta, const std::vector<int>& n_list, PolyKind kind = PolyKind::colsub,
                                        std::size_t gate_cap = kDefaultGateCap) {
    if (d < 2) throw DomainError("d must be at least 2");
    if (delta < 1) throw DomainError("delta must be at least 1");
    HierarchyReport r;
    r.d = d;
    r.delta = delta;
    r.graph = gen::dary(d, delta + 2);
    r.upper = tw_delta(r.graph, delta + 1, true);
    r.lower = tw_delta(r.graph, delta, true);
    for (int n : n_list) {
        auto res = synth_circuit(r.graph, n, delta + 1, kind, gate_cap);
        auto m = metrics(res.circuit);
        r.rows.push_back({n, m.size, m.product_depth, detail::saturating_pow(static_cast<std::uint64_t>(n), r.lower.value + 1)});
    }
    return r;
}

struct SubgraphLemmaVerdict {
    int d = 0;
    int delta = 1;
    std::vector<int> part_values;  ///< tw_{delta-1} of each part
    bool premise = true;           ///< every part has tw_{delta-1} >= d-1
    int whole_value = -1;          ///< tw_delta(H)
    bool conclusion = true;        ///< tw_delta(H) >= d-1
    bool holds() const { return !premise || conclusion; }
};

/// Checks: d disjoint connected parts with tw_{delta-1} >= d-1 force tw_delta(H) >= d-1.
inline SubgraphLemmaVerdict check_subgraph_lemma(const Graph& h, const std::vector<std::vector<int>>& parts, int delta) {
    SubgraphLemmaVerdict v;
    v.d = static_cast<int>(parts.size());
    v.delta = delta;
    if (delta < 1) throw DomainError("delta must be at least 1");
    std::set<int> used;
    for (auto& part : parts) {
        if (part.empty()) throw InputError("empty part");
        for (int x : part) {
            if (x < 1 || x > h.vertex_count()) throw InputError("vertex " + std::to_string(x) + " out of range");
            if (!used.insert(x).second) throw InputError("parts overlap at vertex " + std::to_string(x));
        }
        if (!h.induced(part).is_connected()) throw InputError("part does not induce a connected subgraph");
    }
    if (v.d >= 2 && delta < 2) throw DomainError("d >= 2 parts need delta >= 2");
    for (auto& part : parts) {
        int val = delta >= 2 ? tw_delta(h.induced(part), delta - 1).value : -1;
        v.part_values.push_back(val);
        if (v.d >= 2 && val < v.d - 1) v.premise = false;
    }
    v.whole_value = tw_delta(h, delta).value;
    v.conclusion = v.whole_value >= v.d - 1;
    return v;
}

}  // namespace homsynth
