#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homsynth/errors.hpp"
#include "homsynth/graph.hpp"

namespace homsynth {

using Bag = std::vector<int>;  ///< sorted vertex labels

struct TreeNode {
    int parent = 0;  ///< the root is its own parent
    Bag bag;
};

/// Rooted tree of bags. Node ids are the indices 0..size()-1.
///
/// Height counts nodes on the longest root-to-leaf path, so a single node has
/// height 1. Bags may be empty; an empty decomposition has width -1.
class RootedTreeDecomposition {
public:
    RootedTreeDecomposition() = default;
    RootedTreeDecomposition(std::vector<TreeNode> nodes, int root) : nodes_(std::move(nodes)), root_(root) {
        for (auto& n : nodes_) normalize(n.bag);
    }

    /// Single node holding `bag`.
    static RootedTreeDecomposition single(Bag bag) { return RootedTreeDecomposition({TreeNode{0, std::move(bag)}}, 0); }

    int size() const { return static_cast<int>(nodes_.size()); }
    int root() const { return root_; }
    const TreeNode& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    const Bag& bag(int id) const { return node(id).bag; }
    int parent(int id) const { return node(id).parent; }

    int add_node(int parent, Bag bag) {
        normalize(bag);
        nodes_.push_back(TreeNode{parent, std::move(bag)});
        return size() - 1;
    }

    /// Children lists in increasing id order.
    std::vector<std::vector<int>> children() const {
        std::vector<std::vector<int>> ch(nodes_.size());
        for (int i = 0; i < size(); ++i)
            if (i != root_) ch.at(static_cast<std::size_t>(nodes_[i].parent)).push_back(i);
        return ch;
    }

    /// True iff the parent links form one tree rooted at root().
    bool is_tree() const {
        if (nodes_.empty() || root_ < 0 || root_ >= size() || nodes_[root_].parent != root_) return false;
        for (int i = 0; i < size(); ++i) {
            int cur = i;
            for (int steps = 0; cur != root_; ++steps) {
                if (steps > size()) return false;
                int p = nodes_[cur].parent;
                if (p < 0 || p >= size() || p == cur) return false;
                cur = p;
            }
        }
        return true;
    }

    /// Depth of every node, root has depth 1. Requires is_tree().
    std::vector<int> depths() const {
        std::vector<int> d(nodes_.size(), 0);
        for (int i = 0; i < size(); ++i) {
            int len = 1;
            for (int cur = i; cur != root_; cur = nodes_[cur].parent) ++len;
            d[i] = len;
        }
        return d;
    }

    int height() const {
        if (nodes_.empty()) return 0;
        auto d = depths();
        return *std::max_element(d.begin(), d.end());
    }

    int width() const {
        int w = -1;
        for (auto& n : nodes_) w = std::max(w, static_cast<int>(n.bag.size()) - 1);
        return w;
    }

    /// Maximum bag size.
    int max_bag_size() const { return width() + 1; }

    /// Post-order (children before parents, children visited by id).
    std::vector<int> post_order() const {
        auto ch = children();
        std::vector<int> order;
        std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < ch[v].size()) {
                int c = ch[v][i++];
                stack.emplace_back(c, 0);
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
        return order;
    }

    /// Same bags re-rooted at `new_root`.
    RootedTreeDecomposition rerooted(int new_root) const {
        std::vector<std::vector<int>> nb(nodes_.size());
        for (int i = 0; i < size(); ++i)
            if (i != root_) {
                nb[i].push_back(nodes_[i].parent);
                nb[nodes_[i].parent].push_back(i);
            }
        std::vector<TreeNode> out = nodes_;
        std::vector<char> seen(nodes_.size(), 0);
        std::vector<int> stack{new_root};
        seen.at(static_cast<std::size_t>(new_root)) = 1;
        out[new_root].parent = new_root;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : nb[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    out[w].parent = v;
                    stack.push_back(w);
                }
        }
        return RootedTreeDecomposition(std::move(out), new_root);
    }

    /// Applies `relabel` to every bag vertex.
    template <class F>
    RootedTreeDecomposition relabeled(F&& relabel) const {
        std::vector<TreeNode> out = nodes_;
        for (auto& n : out)
            for (auto& v : n.bag) v = relabel(v);
        return RootedTreeDecomposition(std::move(out), root_);
    }

    friend bool operator==(const RootedTreeDecomposition& a, const RootedTreeDecomposition& b) {
        if (a.root_ != b.root_ || a.nodes_.size() != b.nodes_.size()) return false;
        for (std::size_t i = 0; i < a.nodes_.size(); ++i)
            if (a.nodes_[i].parent != b.nodes_[i].parent || a.nodes_[i].bag != b.nodes_[i].bag) return false;
        return true;
    }

private:
    static void normalize(Bag& b) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }

    std::vector<TreeNode> nodes_;
    int root_ = 0;
};

/// Sequence of bags B_1..B_m; length is the number of bags.
struct PathDecomposition {
    std::vector<Bag> bags;

    int length() const { return static_cast<int>(bags.size()); }
    int width() const {
        int w = -1;
        for (auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
        return w;
    }

    /// Interval [l, r] (1-based bag indices) of every vertex 1..vertex_count; {0,0} if absent.
    /// Returns nullopt when some vertex occupies a non-contiguous index set.
    std::optional<std::vector<std::pair<int, int>>> intervals(int vertex_count) const {
        std::vector<std::pair<int, int>> iv(static_cast<std::size_t>(vertex_count) + 1, {0, 0});
        for (int i = 0; i < length(); ++i)
            for (int v : bags[i]) {
                if (v < 1 || v > vertex_count) return std::nullopt;
                auto& [l, r] = iv[v];
                if (l == 0) {
                    l = r = i + 1;
                } else {
                    if (r != i) return std::nullopt;
                    r = i + 1;
                }
            }
        return iv;
    }

    /// Inverse of intervals(): bag j holds every vertex whose interval covers j.
    static PathDecomposition from_intervals(const std::vector<std::pair<int, int>>& iv, int length) {
        PathDecomposition p;
        p.bags.assign(static_cast<std::size_t>(length), {});
        for (std::size_t v = 1; v < iv.size(); ++v) {
            auto [l, r] = iv[v];
            if (l == 0) continue;
            for (int j = l; j <= r; ++j) p.bags[j - 1].push_back(static_cast<int>(v));
        }
        return p;
    }

    /// The path as a rooted tree: B_1 is the root, B_m the deepest leaf.
    RootedTreeDecomposition as_tree() const {
        std::vector<TreeNode> nodes;
        for (int i = 0; i < length(); ++i) nodes.push_back(TreeNode{i == 0 ? 0 : i - 1, bags[i]});
        if (nodes.empty()) nodes.push_back(TreeNode{0, {}});
        return RootedTreeDecomposition(std::move(nodes), 0);
    }
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
    bool valid = false;
    int height = 0;
    int width = -1;
    std::vector<std::string> violations;
};

/// Checks vertex coverage, edge coverage and connectivity of every vertex's bags.
inline ValidationReport validate(const Graph& h, const RootedTreeDecomposition& t) {
    ValidationReport rep;
    if (!t.is_tree()) {
        rep.violations.push_back("parent links do not form a single rooted tree");
        return rep;
    }
    rep.height = t.height();
    rep.width = t.width();
    const int k = h.vertex_count();
    std::vector<std::vector<int>> holders(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i < t.size(); ++i)
        for (int v : t.bag(i)) {
            if (v < 1 || v > k) {
                rep.violations.push_back("node " + std::to_string(i) + " holds unknown vertex " + std::to_string(v));
                continue;
            }
            holders[v].push_back(i);
        }
    for (int v = 1; v <= k; ++v) {
        if (holders[v].empty()) {
            rep.violations.push_back("vertex " + std::to_string(v) + " is in no bag");
            continue;
        }
        // Bags holding v form a subtree iff exactly one of them has a parent outside the set.
        int tops = 0;
        for (int i : holders[v]) {
            if (i == t.root()) {
                ++tops;
                continue;
            }
            const Bag& pb = t.bag(t.parent(i));
            if (!std::binary_search(pb.begin(), pb.end(), v)) ++tops;
        }
        if (tops != 1) rep.violations.push_back("bags containing vertex " + std::to_string(v) + " are not connected");
    }
    for (const Edge& e : h.edges()) {
        bool covered = false;
        for (int i = 0; i < t.size() && !covered; ++i) {
            const Bag& b = t.bag(i);
            covered = std::binary_search(b.begin(), b.end(), e.first) && std::binary_search(b.begin(), b.end(), e.second);
        }
        if (!covered) rep.violations.push_back("edge " + edge_key(e) + " is in no bag");
    }
    rep.valid = rep.violations.empty();
    return rep;
}

inline ValidationReport validate(const Graph& h, const PathDecomposition& p) { return validate(h, p.as_tree()); }

// ---------------------------------------------------------------------------
// Edge representations

using EdgeRepresentation = std::map<Edge, int>;

inline bool bag_contains(const Bag& b, int v) { return std::binary_search(b.begin(), b.end(), v); }

namespace detail {

inline std::vector<std::vector<int>> rep_candidates(const Graph& h, const RootedTreeDecomposition& t) {
    std::vector<std::vector<int>> cand;
    for (const Edge& e : h.edges()) {
        std::vector<int> c;
        for (int i = 0; i < t.size(); ++i)
            if (bag_contains(t.bag(i), e.first) && bag_contains(t.bag(i), e.second)) c.push_back(i);
        if (c.empty()) throw InvalidDecomposition("edge " + edge_key(e) + " is contained in no bag");
        cand.push_back(std::move(c));
    }
    return cand;
}

}  // namespace detail

/// Counts active nodes on the worst root-to-leaf path.
///
/// A node is active when it represents two or more edges, represents one edge
/// and has a child, or has at least two children.
inline int rep_height(const RootedTreeDecomposition& t, const EdgeRepresentation& rep) {
    std::vector<int> repped(static_cast<std::size_t>(t.size()), 0);
    for (auto& [e, node] : rep) ++repped.at(static_cast<std::size_t>(node));
    auto ch = t.children();
    std::vector<int> best(static_cast<std::size_t>(t.size()), 0);
    for (int v : t.post_order()) {
        int nc = static_cast<int>(ch[v].size());
        bool active = repped[v] >= 2 || (repped[v] >= 1 && nc >= 1) || nc >= 2;
        int below = 0;
        for (int c : ch[v]) below = std::max(below, best[c]);
        best[v] = below + (active ? 1 : 0);
    }
    return t.size() == 0 ? 0 : best[t.root()];
}

/// Deepest bag containing both endpoints, ties by smallest node id.
///
/// With `exhaustive`, every assignment is tried (only when |E|*|nodes| <= 24)
/// and the first one of minimum rep-height is returned.
inline EdgeRepresentation choose_edge_representation(const Graph& h, const RootedTreeDecomposition& t,
                                                     bool exhaustive = false) {
    auto cand = detail::rep_candidates(h, t);
    auto depth = t.depths();
    EdgeRepresentation rep;
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        int pick = cand[i][0];
        for (int c : cand[i])
            if (depth[c] > depth[pick]) pick = c;
        rep[h.edges()[i]] = pick;
    }
    if (!exhaustive) return rep;
    if (static_cast<long long>(h.edge_count()) * t.size() > 24)
        throw CapacityError("exhaustive edge representation needs |E|*|nodes| <= 24");
    EdgeRepresentation best_rep = rep;
    int best = rep_height(t, rep);
    std::vector<std::size_t> idx(cand.size(), 0);
    for (;;) {
        EdgeRepresentation cur;
        for (std::size_t i = 0; i < cand.size(); ++i) cur[h.edges()[i]] = cand[i][idx[i]];
        int rh = rep_height(t, cur);
        if (rh < best) {
            best = rh;
            best_rep = cur;
        }
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == cand[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return best_rep;
}

// ---------------------------------------------------------------------------
// Pendant attachment

struct AttachedDecomposition {
    RootedTreeDecomposition tree;
    EdgeRepresentation rep;
};

/// Extends a decomposition of prune(H) (bags in H's labels) to one of H.
///
/// A degree-1 vertex v with neighbor u gets a leaf bag {v,u} under the deepest
/// node of the input tree containing u. An isolated vertex v gets a leaf bag {v}
/// under the root. A K2 component (both endpoints of degree 1) gets one leaf
/// bag holding both endpoints under the root.
inline AttachedDecomposition attach_pendants(const Graph& h, const RootedTreeDecomposition& pruned_tree) {
    RootedTreeDecomposition t = pruned_tree;
    const int base = t.size();
    auto depth = t.depths();
    for (int v = 1; v <= h.vertex_count(); ++v) {
        if (h.degree(v) == 0) {
            t.add_node(t.root(), {v});
        } else if (h.degree(v) == 1) {
            int u = h.neighbors(v)[0];
            if (h.degree(u) == 1) {
                if (v < u) t.add_node(t.root(), {v, u});
                continue;
            }
            int pick = -1;
            for (int i = 0; i < base; ++i)
                if (bag_contains(t.bag(i), u) && (pick < 0 || depth[i] > depth[pick])) pick = i;
            if (pick < 0) throw InvalidDecomposition("neighbor " + std::to_string(u) + " of pendant vertex " +
                                                     std::to_string(v) + " is in no bag");
            t.add_node(pick, {u, v});
        }
    }
    EdgeRepresentation rep = choose_edge_representation(h, t);
    return {std::move(t), std::move(rep)};
}

}  // namespace homsynth
