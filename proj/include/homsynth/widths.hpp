#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "homsynth/decomposition.hpp"
#include "homsynth/errors.hpp"
#include "homsynth/graph.hpp"

namespace homsynth {

enum class WidthParameter { tw_delta, pw_delta, ptw_delta, ppw_delta };

inline std::string to_string(WidthParameter p) {
    switch (p) {
        case WidthParameter::tw_delta: return "tw_delta";
        case WidthParameter::pw_delta: return "pw_delta";
        case WidthParameter::ptw_delta: return "ptw_delta";
        case WidthParameter::ppw_delta: return "ppw_delta";
    }
    return "?";
}

/// Optimal width together with a decomposition attaining it.
///
/// The certificate decomposes H (or prune(H) for the pruned parameters) and
/// uses H's vertex labels in both cases.
struct WidthCertificate {
    WidthParameter parameter = WidthParameter::tw_delta;
    int delta = 1;
    int value = -1;
    std::variant<RootedTreeDecomposition, PathDecomposition> certificate;

    bool is_path() const { return std::holds_alternative<PathDecomposition>(certificate); }
    const RootedTreeDecomposition& tree() const { return std::get<RootedTreeDecomposition>(certificate); }
    const PathDecomposition& path() const { return std::get<PathDecomposition>(certificate); }
};

inline constexpr int kTreeSolverMaxVertices = 15;
inline constexpr int kBruteForceMaxVertices = 6;

namespace detail {

inline std::vector<int> mask_bits(VertexMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

inline Bag mask_to_bag(VertexMask m, const std::vector<int>& labels) {
    Bag b;
    for (int i : mask_bits(m)) b.push_back(labels[i]);
    std::sort(b.begin(), b.end());
    return b;
}

/// Degeneracy of the subgraph induced by `s` (max over the peeling order of the min degree).
inline int degeneracy(const std::vector<VertexMask>& adj, VertexMask s) {
    int best = 0;
    while (s) {
        int pick = -1, pick_deg = std::numeric_limits<int>::max();
        for (int v : mask_bits(s)) {
            int d = std::popcount(adj[v] & s);
            if (d < pick_deg) pick_deg = d, pick = v;
        }
        best = std::max(best, pick_deg);
        s &= ~(VertexMask{1} << pick);
    }
    return best;
}

/// Visits every k-subset of the bit positions in `pos` (lexicographic in index order).
template <class F>
bool for_each_combination(const std::vector<int>& pos, int k, F&& visit) {
    const int m = static_cast<int>(pos.size());
    if (k > m) return true;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        VertexMask x = 0;
        for (int i : idx) x |= VertexMask{1} << pos[i];
        if (!visit(x)) return false;
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) return true;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Exact height-bounded tree decomposition search.
///
/// solve(S, A, d) is the least possible maximum bag size of a decomposition of
/// G[S] of height <= d whose root bag contains the anchor set A. The root bag B
/// ranges over A <= B <= S by increasing size; each component C of G[S]-B is
/// solved independently as (C + N(C)&B, N(C)&B, d-1).
class BoundedHeightSolver {
public:
    explicit BoundedHeightSolver(const Graph& g) : adj_(g.adjacency_masks()) {}

    int solve(VertexMask s, VertexMask a, int delta) {
        if (s == 0) return 0;
        const std::uint64_t key = pack(s, a, delta);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second.value;

        int best = std::popcount(s);
        VertexMask best_bag = s;
        if (delta > 1) {
            const int lb = std::max(std::popcount(a), degeneracy(adj_, s) + 1);
            const auto free = mask_bits(s & ~a);
            for (int k = 0; k <= static_cast<int>(free.size()) && best > lb; ++k) {
                if (std::popcount(a) + k >= best) break;
                for_each_combination(free, k, [&](VertexMask x) {
                    const VertexMask b = a | x;
                    int val = std::popcount(b);
                    for (VertexMask c : components(adj_, s & ~b)) {
                        const VertexMask anchors = neighborhood(c) & b;
                        if ((c | anchors) == s && anchors == a) {
                            val = std::numeric_limits<int>::max();
                            break;
                        }
                        val = std::max(val, solve(c | anchors, anchors, delta - 1));
                        if (val >= best) break;
                    }
                    if (val < best) {
                        best = val;
                        best_bag = b;
                    }
                    return best > lb;
                });
            }
        }
        memo_[key] = Entry{best, best_bag};
        return best;
    }

    /// Reconstructs the decomposition recorded by solve(); bags use `labels[bit]`.
    RootedTreeDecomposition build(VertexMask s, int delta, const std::vector<int>& labels) {
        RootedTreeDecomposition t;
        if (s == 0) return RootedTreeDecomposition::single({});
        solve(s, 0, delta);
        build_into(t, -1, s, 0, delta, labels);
        return t;
    }

private:
    struct Entry {
        int value;
        VertexMask bag;
    };

    static std::uint64_t pack(VertexMask s, VertexMask a, int delta) {
        return static_cast<std::uint64_t>(s) | (static_cast<std::uint64_t>(a) << 20) |
               (static_cast<std::uint64_t>(std::min(delta, 4095)) << 40);
    }

    VertexMask neighborhood(VertexMask c) const {
        VertexMask n = 0;
        for (int v : mask_bits(c)) n |= adj_[v];
        return n & ~c;
    }

    void build_into(RootedTreeDecomposition& t, int parent, VertexMask s, VertexMask a, int delta,
                    const std::vector<int>& labels) {
        solve(s, a, delta);
        const VertexMask b = memo_.at(pack(s, a, delta)).bag;
        const int id = t.add_node(parent < 0 ? 0 : parent, mask_to_bag(b, labels));
        for (VertexMask c : components(adj_, s & ~b)) {
            const VertexMask anchors = neighborhood(c) & b;
            build_into(t, id, c | anchors, anchors, delta - 1, labels);
        }
    }

    std::vector<VertexMask> adj_;
    std::unordered_map<std::uint64_t, Entry> memo_;
};

inline void check_delta(int delta) {
    if (delta < 1) throw DomainError("delta must be at least 1, got " + std::to_string(delta));
}

/// Graph actually decomposed and the map from its labels back to H's labels.
struct WorkGraph {
    Graph graph;
    std::vector<int> labels;  ///< bit i / label i+1 -> H label
};

inline WorkGraph work_graph(const Graph& h, bool pruned) {
    if (!pruned) {
        std::vector<int> labels(static_cast<std::size_t>(h.vertex_count()));
        for (int i = 0; i < h.vertex_count(); ++i) labels[i] = i + 1;
        return {h, labels};
    }
    auto p = prune(h);
    return {p.graph, p.original};
}

}  // namespace detail

/// Exact Delta-treewidth (or pruned Delta-treewidth) with a certificate.
inline WidthCertificate tw_delta(const Graph& h, int delta, bool pruned = false) {
    detail::check_delta(delta);
    auto w = detail::work_graph(h, pruned);
    if (w.graph.vertex_count() > kTreeSolverMaxVertices)
        throw CapacityError("tw_delta is limited to " + std::to_string(kTreeSolverMaxVertices) +
                            " vertices, got " + std::to_string(w.graph.vertex_count()));
    WidthCertificate cert;
    cert.parameter = pruned ? WidthParameter::ptw_delta : WidthParameter::tw_delta;
    cert.delta = delta;
    if (w.graph.vertex_count() == 0) {
        cert.value = -1;
        cert.certificate = RootedTreeDecomposition::single({});
        return cert;
    }
    detail::BoundedHeightSolver solver(w.graph);
    const VertexMask all = w.graph.all_vertices_mask();
    cert.value = solver.solve(all, 0, delta) - 1;
    cert.certificate = solver.build(all, delta, w.labels);
    return cert;
}

namespace detail {

/// Interval-assignment search for path decompositions with at most `length` bags.
class IntervalSolver {
public:
    IntervalSolver(const Graph& g, int length) : g_(g), length_(length) {
        const int n = g.vertex_count();
        // BFS order from a max-degree vertex per component keeps neighbors close.
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        for (;;) {
            int start = -1;
            for (int v = 1; v <= n; ++v)
                if (!seen[v] && (start < 0 || g.degree(v) > g.degree(start))) start = v;
            if (start < 0) break;
            std::vector<int> queue{start};
            seen[start] = 1;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                order_.push_back(queue[i]);
                for (int w : g.neighbors(queue[i]))
                    if (!seen[w]) seen[w] = 1, queue.push_back(w);
            }
        }
        pos_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (std::size_t i = 0; i < order_.size(); ++i) pos_[order_[i]] = static_cast<int>(i);
        remaining_nb_.assign(static_cast<std::size_t>(n) + 1, 0);
        for (int v = 1; v <= n; ++v)
            for (int w : g.neighbors(v))
                if (pos_[w] > pos_[v]) ++remaining_nb_[v];
    }

    /// Feasibility of max bag size `cap`; fills intervals() on success.
    bool feasible(int cap) {
        cap_ = cap;
        load_.assign(static_cast<std::size_t>(length_) + 2, 0);
        iv_.assign(static_cast<std::size_t>(g_.vertex_count()) + 1, {0, 0});
        return dfs(0);
    }

    const std::vector<std::pair<int, int>>& intervals() const { return iv_; }

private:
    bool place(int idx, int v, int l, int r) {
        for (int j = l; j <= r; ++j)
            if (load_[j] + 1 > cap_) return false;
        for (int j = l; j <= r; ++j) ++load_[j];
        iv_[v] = {l, r};
        if (dfs(idx + 1)) return true;
        for (int j = l; j <= r; ++j) --load_[j];
        iv_[v] = {0, 0};
        return false;
    }

    bool dfs(int idx) {
        if (idx == static_cast<int>(order_.size())) return true;
        const int v = order_[idx];
        int min_r = length_, max_l = 1;
        for (int w : g_.neighbors(v))
            if (pos_[w] < idx) {
                min_r = std::min(min_r, iv_[w].second);
                max_l = std::max(max_l, iv_[w].first);
            }
        if (remaining_nb_[v] == 0) {
            // Every neighbor is placed: a minimal interval dominates all supersets.
            if (max_l <= min_r) {
                for (int j = max_l; j <= min_r; ++j)
                    if (place(idx, v, j, j)) return true;
                return false;
            }
            return place(idx, v, min_r, max_l);
        }
        for (int l = 1; l <= min_r; ++l)
            for (int r = std::max(l, max_l); r <= length_; ++r) {
                if (idx == 0 && (l - 1) > (length_ - r)) continue;  // mirror symmetry
                if (place(idx, v, l, r)) return true;
            }
        return false;
    }

    const Graph& g_;
    int length_;
    int cap_ = 0;
    std::vector<int> order_, pos_, remaining_nb_, load_;
    std::vector<std::pair<int, int>> iv_;
};

/// Drops empty bags and bags contained in a neighboring bag.
inline PathDecomposition canonical_path(PathDecomposition p) {
    std::vector<Bag> bags;
    for (auto& b : p.bags)
        if (!b.empty()) bags.push_back(b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < bags.size(); ++i) {
            auto subset = [&](const Bag& a, const Bag& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); };
            if ((i > 0 && subset(bags[i], bags[i - 1])) || (i + 1 < bags.size() && subset(bags[i], bags[i + 1]))) {
                bags.erase(bags.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
        }
    }
    if (bags.empty()) bags.push_back({});
    return PathDecomposition{bags};
}

}  // namespace detail

/// Exact Delta-pathwidth: path decompositions with at most `delta` bags.
inline WidthCertificate pw_delta(const Graph& h, int delta, bool pruned = false) {
    detail::check_delta(delta);
    auto w = detail::work_graph(h, pruned);
    const int n = w.graph.vertex_count();
    if (n > 10 && delta > 4)
        throw CapacityError("pw_delta needs at most 10 vertices or delta <= 4");
    if (n > 32) throw CapacityError("pw_delta is limited to 32 vertices");
    WidthCertificate cert;
    cert.parameter = pruned ? WidthParameter::ppw_delta : WidthParameter::pw_delta;
    cert.delta = delta;
    if (n == 0) {
        cert.value = -1;
        cert.certificate = PathDecomposition{{Bag{}}};
        return cert;
    }
    const int length = std::min(delta, n);
    auto adj = w.graph.adjacency_masks();
    int lower = std::max((n + length - 1) / length, detail::degeneracy(adj, w.graph.all_vertices_mask()) + 1);
    detail::IntervalSolver solver(w.graph, length);
    for (int cap = lower; cap <= n; ++cap) {
        if (!solver.feasible(cap)) continue;
        auto p = PathDecomposition::from_intervals(solver.intervals(), length);
        for (auto& b : p.bags)
            for (auto& v : b) v = w.labels[v - 1];
        for (auto& b : p.bags) std::sort(b.begin(), b.end());
        auto canon = detail::canonical_path(p);
        cert.value = canon.width();
        cert.certificate = canon;
        return cert;
    }
    throw ConsistencyError("pw_delta found no feasible width");
}

namespace detail {

/// Exhaustive enumeration of decompositions, used only to cross-check the solvers.
///
/// Restricts to the normal form in which every bag is nonempty, no bag is a
/// subset of an adjacent bag and sibling bags are strictly increasing as masks;
/// every decomposition can be contracted to this form without increasing its
/// width or height.
class BruteForce {
public:
    BruteForce(const Graph& g, int delta, bool path) : g_(g), delta_(delta), path_(path) {
        n_ = g.vertex_count();
        all_ = g.all_vertices_mask();
        for (auto [u, v] : g.edges()) edge_masks_.push_back((VertexMask{1} << (u - 1)) | (VertexMask{1} << (v - 1)));
        for (VertexMask m = 1; m <= all_; ++m) subsets_.push_back(m);
    }

    int run() {
        if (n_ == 0) return -1;
        for (int w = 0; w <= n_ - 1; ++w)
            if (feasible(w)) return w;
        return n_ - 1;
    }

private:
    bool feasible(int w) {
        cap_ = w + 1;
        const int max_nodes = path_ ? std::min(delta_, n_) : n_;
        for (int m = 1; m <= max_nodes; ++m) {
            parent_.assign(static_cast<std::size_t>(m), 0);
            depth_.assign(static_cast<std::size_t>(m), 1);
            if (path_) {
                for (int i = 1; i < m; ++i) parent_[i] = i - 1, depth_[i] = i + 1;
                if (m <= delta_ && assign_bags(0)) return true;
            } else if (shapes(1, m)) {
                return true;
            }
        }
        return false;
    }

    /// Parent arrays in BFS order: parent[i] < i and nondecreasing.
    bool shapes(int i, int m) {
        if (i == m) return assign_bags(0);
        const int lo = i == 1 ? 0 : parent_[i - 1];
        for (int p = lo; p < i; ++p) {
            if (depth_[p] + 1 > delta_) continue;
            parent_[i] = p;
            depth_[i] = depth_[p] + 1;
            if (shapes(i + 1, m)) return true;
        }
        return false;
    }

    bool assign_bags(int i) {
        const int m = static_cast<int>(parent_.size());
        if (i == 0) bags_.assign(static_cast<std::size_t>(m), 0);
        if (i == m) return complete();
        VertexMask used = 0;
        for (int j = 0; j < i; ++j) used |= bags_[j];
        for (VertexMask b : subsets_) {
            if (std::popcount(b) > cap_) continue;
            if (i > 0) {
                const VertexMask pb = bags_[parent_[i]];
                if ((b & pb) == b || (b & pb) == pb) continue;
                if ((b & ~pb) & used) continue;  // a vertex may not reappear after leaving
                if (!path_ && i > 1 && parent_[i - 1] == parent_[i] && b <= bags_[i - 1]) continue;
            }
            bags_[i] = b;
            if (assign_bags(i + 1)) return true;
        }
        return false;
    }

    bool complete() const {
        VertexMask covered = 0;
        for (VertexMask b : bags_) covered |= b;
        if (covered != all_) return false;
        for (VertexMask e : edge_masks_) {
            bool ok = false;
            for (VertexMask b : bags_)
                if ((b & e) == e) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }

    const Graph& g_;
    int delta_;
    bool path_;
    int n_ = 0;
    int cap_ = 0;
    VertexMask all_ = 0;
    std::vector<VertexMask> edge_masks_, subsets_, bags_;
    std::vector<int> parent_, depth_;
};

}  // namespace detail

enum class DecompositionMode { tree, path };

/// Minimum width over all height-(or length-)bounded decompositions, by exhaustive enumeration.
inline int brute_force_width(const Graph& h, int delta, DecompositionMode mode) {
    detail::check_delta(delta);
    if (h.vertex_count() > kBruteForceMaxVertices)
        throw CapacityError("brute_force_width is limited to " + std::to_string(kBruteForceMaxVertices) + " vertices");
    return detail::BruteForce(h, delta, mode == DecompositionMode::path).run();
}

}  // namespace homsynth
