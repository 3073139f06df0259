#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homsynth/errors.hpp"

namespace homsynth {

/// Unordered edge stored as (min, max), 1-based labels.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

inline std::string edge_key(const Edge& e) {
    return std::to_string(e.first) + "-" + std::to_string(e.second);
}

/// Vertex set of a small graph as a bitmask; bit (v-1) represents vertex v.
using VertexMask = std::uint32_t;

/// Undirected simple pattern graph on vertices 1..vertex_count.
///
/// Edges are kept sorted in canonical (min,max) orientation, so two graphs
/// with the same edge set compare equal regardless of input order.
class Graph {
public:
    Graph() = default;

    explicit Graph(int vertex_count, const std::vector<Edge>& edges = {}) : n_(vertex_count) {
        if (vertex_count < 0) throw DomainError("vertex count must be nonnegative");
        adj_.assign(static_cast<std::size_t>(n_) + 1, {});
        std::set<Edge> seen;
        for (auto [u, v] : edges) {
            if (u == v) throw FormatError("self-loop at vertex " + std::to_string(u));
            if (u < 1 || v < 1 || u > n_ || v > n_)
                throw FormatError("edge endpoint out of range: " + std::to_string(u) + " " +
                                  std::to_string(v));
            Edge e = make_edge(u, v);
            if (!seen.insert(e).second) throw FormatError("duplicate edge " + edge_key(e));
        }
        edges_.assign(seen.begin(), seen.end());
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    int vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    bool has_edge(int u, int v) const {
        if (u < 1 || v < 1 || u > n_ || v > n_) return false;
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    int min_degree() const {
        int m = n_ == 0 ? 0 : degree(1);
        for (int v = 2; v <= n_; ++v) m = std::min(m, degree(v));
        return m;
    }

    /// Adjacency masks; only meaningful for graphs with at most 32 vertices.
    std::vector<VertexMask> adjacency_masks() const {
        if (n_ > 32) throw CapacityError("bitmask view limited to 32 vertices");
        std::vector<VertexMask> m(static_cast<std::size_t>(n_), 0);
        for (auto [u, v] : edges_) {
            m[u - 1] |= VertexMask{1} << (v - 1);
            m[v - 1] |= VertexMask{1} << (u - 1);
        }
        return m;
    }

    VertexMask all_vertices_mask() const {
        if (n_ > 32) throw CapacityError("bitmask view limited to 32 vertices");
        return n_ == 32 ? ~VertexMask{0} : ((VertexMask{1} << n_) - 1);
    }

    bool is_connected() const {
        if (n_ <= 1) return true;
        std::vector<char> seen(static_cast<std::size_t>(n_) + 1, 0);
        std::vector<int> stack{1};
        seen[1] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj_[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
        }
        return count == n_;
    }

    /// Subgraph induced by `vertices` (1-based labels), relabeled 1..|vertices| in the given order.
    Graph induced(const std::vector<int>& vertices) const {
        std::vector<int> pos(static_cast<std::size_t>(n_) + 1, 0);
        for (std::size_t i = 0; i < vertices.size(); ++i) pos.at(vertices[i]) = static_cast<int>(i) + 1;
        std::vector<Edge> es;
        for (auto [u, v] : edges_)
            if (pos[u] && pos[v]) es.push_back(make_edge(pos[u], pos[v]));
        return Graph(static_cast<int>(vertices.size()), es);
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_{1};
};

// ---------------------------------------------------------------------------
// Generators

namespace gen {

inline Graph path(int k) {
    std::vector<Edge> es;
    for (int i = 1; i < k; ++i) es.emplace_back(i, i + 1);
    return Graph(k, es);
}

inline Graph cycle(int k) {
    if (k < 3) throw DomainError("cycle needs at least 3 vertices");
    std::vector<Edge> es;
    for (int i = 1; i < k; ++i) es.emplace_back(i, i + 1);
    es.emplace_back(1, k);
    return Graph(k, es);
}

inline Graph clique(int k) {
    std::vector<Edge> es;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) es.emplace_back(i, j);
    return Graph(k, es);
}

/// K_{1,k}: center 1, leaves 2..k+1.
inline Graph star(int k) {
    std::vector<Edge> es;
    for (int i = 2; i <= k + 1; ++i) es.emplace_back(1, i);
    return Graph(k + 1, es);
}

/// Full d-ary tree of height h (a single vertex has height 1), labeled in BFS order.
inline Graph dary(int d, int h) {
    if (d < 1 || h < 1) throw DomainError("dary needs d >= 1 and h >= 1");
    long long count = 0, level = 1;
    for (int i = 0; i < h; ++i) {
        count += level;
        level *= d;
        if (count > 100000) throw CapacityError("dary tree too large");
    }
    std::vector<Edge> es;
    for (long long c = 2; c <= count; ++c) {
        long long parent = (c - 2) / d + 1;
        es.emplace_back(static_cast<int>(parent), static_cast<int>(c));
    }
    return Graph(static_cast<int>(count), es);
}

inline Graph grid(int r, int c) {
    std::vector<Edge> es;
    auto id = [c](int i, int j) { return (i - 1) * c + j; };
    for (int i = 1; i <= r; ++i)
        for (int j = 1; j <= c; ++j) {
            if (j < c) es.emplace_back(id(i, j), id(i, j + 1));
            if (i < r) es.emplace_back(id(i, j), id(i + 1, j));
        }
    return Graph(r * c, es);
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Text format

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline int parse_int(const std::string& tok, const std::string& where) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw FormatError("");
        return v;
    } catch (const std::exception&) {
        throw FormatError(where + ": expected integer, got '" + tok + "'");
    }
}

inline Graph parse_generator(const std::string& expr) {
    auto parts = split(expr, ':');
    const std::string& name = parts[0];
    std::vector<int> args;
    for (std::size_t i = 1; i < parts.size(); ++i) args.push_back(parse_int(parts[i], "generator '" + expr + "'"));
    auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw FormatError("generator '" + name + "' expects " + std::to_string(k) + " argument(s)");
        for (int a : args)
            if (a < 0) throw FormatError("generator '" + expr + "' has a negative argument");
    };
    if (name == "path") return need(1), gen::path(args[0]);
    if (name == "cycle") return need(1), gen::cycle(args[0]);
    if (name == "clique") return need(1), gen::clique(args[0]);
    if (name == "star") return need(1), gen::star(args[0]);
    if (name == "dary") return need(2), gen::dary(args[0], args[1]);
    if (name == "grid") return need(2), gen::grid(args[0], args[1]);
    throw FormatError("unknown generator '" + name + "'");
}

}  // namespace detail

/// Parses "p <k>" / "e <u> <v>" text ('#' comments; '/' also separates lines)
/// or a generator expression such as "dary:2:3".
inline Graph parse_graph(std::string_view text) {
    std::string body = detail::trim(text);
    if (!body.empty() && body.find(':') != std::string::npos && body.find('\n') == std::string::npos &&
        body.find(' ') == std::string::npos)
        return detail::parse_generator(body);

    std::string normalized(text);
    std::replace(normalized.begin(), normalized.end(), '/', '\n');
    std::istringstream in(normalized);
    std::string raw;
    int line_no = 0;
    int declared = -1;
    int max_label = 0;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = detail::trim(raw);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        const std::string where = "line " + std::to_string(line_no);
        if (tag == "p") {
            if (toks.size() != 1) throw FormatError(where + ": expected 'p <k>'");
            if (declared >= 0) throw FormatError(where + ": duplicate 'p' line");
            if (!edges.empty()) throw FormatError(where + ": 'p' line must precede edges");
            declared = detail::parse_int(toks[0], where);
            if (declared < 0) throw FormatError(where + ": negative vertex count");
        } else if (tag == "e") {
            if (toks.size() != 2) throw FormatError(where + ": expected 'e <u> <v>'");
            int u = detail::parse_int(toks[0], where);
            int v = detail::parse_int(toks[1], where);
            if (u == v) throw FormatError(where + ": self-loop at vertex " + std::to_string(u));
            if (u < 1 || v < 1 || (declared >= 0 && (u > declared || v > declared)))
                throw FormatError(where + ": endpoint out of range");
            Edge e = make_edge(u, v);
            if (!seen.insert(e).second) throw FormatError(where + ": duplicate edge " + edge_key(e));
            edges.push_back(e);
            max_label = std::max(max_label, e.second);
        } else {
            throw FormatError(where + ": unknown line tag '" + tag + "'");
        }
    }
    return Graph(declared >= 0 ? declared : max_label, edges);
}

inline std::string to_text(const Graph& g) {
    std::ostringstream os;
    os << "p " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Pruning

/// H minus its degree-<=1 vertices, with the relabeling retained.
struct PrunedGraph {
    Graph graph;
    std::vector<int> original;     ///< pruned label i -> original[i-1]
    std::vector<int> pruned_label; ///< original label v -> pruned label, 0 if removed

    int to_original(int v) const { return original.at(static_cast<std::size_t>(v) - 1); }
    int to_pruned(int v) const { return pruned_label.at(static_cast<std::size_t>(v)); }
};

/// One-shot pruning: degrees are measured in H, not iterated.
inline PrunedGraph prune(const Graph& h) {
    PrunedGraph out;
    out.pruned_label.assign(static_cast<std::size_t>(h.vertex_count()) + 1, 0);
    for (int v = 1; v <= h.vertex_count(); ++v)
        if (h.degree(v) >= 2) {
            out.original.push_back(v);
            out.pruned_label[v] = static_cast<int>(out.original.size());
        }
    out.graph = h.induced(out.original);
    return out;
}

/// Iterated pruning until no vertex of degree <= 1 remains (diagnostic only).
inline Graph prune_iterated(const Graph& h) {
    Graph cur = h;
    for (;;) {
        auto p = prune(cur);
        if (p.graph.vertex_count() == cur.vertex_count()) return cur;
        cur = p.graph;
    }
}

// ---------------------------------------------------------------------------
// Small exact invariants

namespace detail {

/// Connected components of the subgraph induced by `mask`.
inline std::vector<VertexMask> components(const std::vector<VertexMask>& adj, VertexMask mask) {
    std::vector<VertexMask> out;
    while (mask) {
        VertexMask comp = mask & (~mask + 1);
        VertexMask frontier = comp;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            VertexMask nb = adj[v] & mask & ~comp;
            comp |= nb;
            frontier |= nb;
        }
        out.push_back(comp);
        mask &= ~comp;
    }
    return out;
}

}  // namespace detail

/// min over S of |S| + largest component of H - S. Brute force, at most 16 vertices.
inline int vertex_integrity(const Graph& h) {
    if (h.vertex_count() > 16) throw CapacityError("vertex_integrity limited to 16 vertices");
    if (h.vertex_count() == 0) return 0;
    auto adj = h.adjacency_masks();
    VertexMask all = h.all_vertices_mask();
    int best = h.vertex_count();
    for (VertexMask s = 0; s <= all; ++s) {
        int size = std::popcount(s);
        if (size >= best) continue;
        int largest = 0;
        for (VertexMask c : detail::components(adj, all & ~s)) largest = std::max(largest, std::popcount(c));
        best = std::min(best, size + largest);
        if (s == all) break;
    }
    return best;
}

namespace detail {

inline int vc_branch(const Graph& h, std::vector<char>& in_cover, int size, int best) {
    if (size >= best) return best;
    for (auto [u, v] : h.edges()) {
        if (in_cover[u] || in_cover[v]) continue;
        in_cover[u] = 1;
        best = vc_branch(h, in_cover, size + 1, best);
        in_cover[u] = 0;
        in_cover[v] = 1;
        best = vc_branch(h, in_cover, size + 1, best);
        in_cover[v] = 0;
        return best;
    }
    return size;
}

}  // namespace detail

/// Exact minimum vertex cover by branching on an uncovered edge; at most 20 vertices.
inline int vertex_cover_number(const Graph& h) {
    if (h.vertex_count() > 20) throw CapacityError("vertex_cover_number limited to 20 vertices");
    std::vector<char> in_cover(static_cast<std::size_t>(h.vertex_count()) + 1, 0);
    return detail::vc_branch(h, in_cover, 0, h.vertex_count());
}

/// |aut(H)| by enumerating all permutations; at most 9 vertices.
inline long long automorphism_count(const Graph& h) {
    if (h.vertex_count() > 9) throw CapacityError("automorphism_count limited to 9 vertices");
    std::vector<int> perm(static_cast<std::size_t>(h.vertex_count()));
    std::iota(perm.begin(), perm.end(), 1);
    long long count = 0;
    do {
        bool ok = true;
        for (auto [u, v] : h.edges())
            if (!h.has_edge(perm[u - 1], perm[v - 1])) {
                ok = false;
                break;
            }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

struct GraphInvariants {
    int vertex_cover_number = 0;
    int vertex_integrity = 0;
    long long automorphism_count = 0;
};

inline GraphInvariants invariants(const Graph& h) {
    return {vertex_cover_number(h), vertex_integrity(h), automorphism_count(h)};
}

}  // namespace homsynth
