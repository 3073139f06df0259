#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "homsynth/abp.hpp"
#include "homsynth/circuit.hpp"
#include "homsynth/decomposition.hpp"
#include "homsynth/widths.hpp"

namespace homsynth {

/// Variable of edge {u,v} when u has color cu and v has color cv.
inline VariableId edge_variable(PolyKind kind, int u, int v, int cu, int cv) {
    return kind == PolyKind::hom ? VariableId::hom(cu, cv) : VariableId::colsub(u, v, cu, cv);
}

inline constexpr std::size_t kDefaultGateCap = 10'000'000;

/// HOMSYNTH_GATE_CAP if set to a positive integer, else `fallback`.
inline std::size_t gate_cap_from_env(std::size_t fallback = kDefaultGateCap) {
    const char* s = std::getenv("HOMSYNTH_GATE_CAP");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0' || v == 0) throw FormatError(std::string("HOMSYNTH_GATE_CAP must be a positive integer, got '") + s + "'");
    return static_cast<std::size_t>(v);
}

namespace detail {

/// Lexicographic odometer over [n]^k; digits are 1-based colors.
struct Odometer {
    int n;
    std::vector<int> digits;
    Odometer(int n_, int k) : n(n_), digits(static_cast<std::size_t>(k), 1) {}
    bool next() {
        for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
            if (digits[i] < n) {
                ++digits[i];
                return true;
            }
            digits[i] = 1;
        }
        return false;
    }
};

/// Mixed-radix index of the colors at `positions`.
inline std::size_t project_index(const std::vector<int>& digits, const std::vector<int>& positions, int n) {
    std::size_t idx = 0;
    for (int p : positions) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(digits[p] - 1);
    return idx;
}

inline int bag_position(const Bag& b, int v) {
    return static_cast<int>(std::lower_bound(b.begin(), b.end(), v) - b.begin());
}

}  // namespace detail

struct SynthPlan {
    WidthCertificate certificate;  ///< of prune(H), in H's labels
    RootedTreeDecomposition tree;  ///< the pendant-augmented decomposition of H
    EdgeRepresentation rep;
    PolyKind kind = PolyKind::hom;
    int n = 1;
    int delta = 1;
    int rep_height = 0;
    int max_bag = 0;  ///< w: largest bag size of `tree`
    std::uint64_t predicted_size_bound = 0;  ///< |V(tree)| * n^w
    bool disconnected = false;
    std::vector<std::string> warnings;
};

struct SynthResult {
    Circuit circuit;
    SynthPlan plan;
};

/// Compiles the Restr recursion over a given decomposition and edge representation.
///
/// Restr(p,h) multiplies the variables of the edges represented at p (colored by h)
/// with, for each child t, the sum of Restr(t,h') over the h' agreeing with h on the
/// shared vertices. The output sums Restr(root,h) over all h.
inline Circuit compile_restr(const Graph& h, const RootedTreeDecomposition& t, const EdgeRepresentation& rep, int n,
                             PolyKind kind, std::size_t gate_cap = kDefaultGateCap) {
    if (n < 1) throw DomainError("n must be positive");
    auto report = validate(h, t);
    if (!report.valid) throw InvalidDecomposition("decomposition is not valid for the pattern graph");
    for (auto& [e, node] : rep)
        if (!bag_contains(t.bag(node), e.first) || !bag_contains(t.bag(node), e.second))
            throw InvalidDecomposition("edge " + edge_key(e) + " represented at a node not containing it");
    if (rep.size() != h.edge_count()) throw InvalidDecomposition("edge representation is not total");

    CircuitBuilder b(gate_cap);
    auto children = t.children();
    std::vector<std::vector<std::pair<Edge, std::pair<int, int>>>> local(static_cast<std::size_t>(t.size()));
    for (auto& [e, node] : rep)
        local[node].push_back({e, {detail::bag_position(t.bag(node), e.first), detail::bag_position(t.bag(node), e.second)}});

    std::vector<std::vector<int>> restr(static_cast<std::size_t>(t.size()));
    for (int p : t.post_order()) {
        const Bag& xp = t.bag(p);
        const int k = static_cast<int>(xp.size());
        std::uint64_t count = detail::saturating_pow(static_cast<std::uint64_t>(n), k);
        if (count > gate_cap)
            throw CapacityError("bag of size " + std::to_string(k) + " needs " + std::to_string(count) +
                                " assignments, gate cap is " + std::to_string(gate_cap));

        struct ChildSums {
            std::vector<int> parent_positions;
            std::vector<int> sums;
        };
        std::vector<ChildSums> sums;
        for (int c : children[p]) {
            const Bag& xc = t.bag(c);
            std::vector<int> pos_c, pos_p;
            for (std::size_t i = 0; i < xc.size(); ++i)
                if (bag_contains(xp, xc[i])) {
                    pos_c.push_back(static_cast<int>(i));
                    pos_p.push_back(detail::bag_position(xp, xc[i]));
                }
            std::size_t buckets = 1;
            for (std::size_t i = 0; i < pos_c.size(); ++i) buckets *= static_cast<std::size_t>(n);
            std::vector<std::vector<int>> bucket(buckets);
            detail::Odometer od(n, static_cast<int>(xc.size()));
            std::size_t idx = 0;
            do {
                bucket[detail::project_index(od.digits, pos_c, n)].push_back(restr[c][idx++]);
            } while (od.next());
            ChildSums cs{pos_p, {}};
            cs.sums.reserve(buckets);
            for (auto& bk : bucket) cs.sums.push_back(b.add(bk));
            sums.push_back(std::move(cs));
            restr[c].clear();
            restr[c].shrink_to_fit();
        }

        restr[p].reserve(static_cast<std::size_t>(count));
        detail::Odometer od(n, k);
        std::vector<int> factors;
        do {
            factors.clear();
            for (auto& [e, pos] : local[p])
                factors.push_back(b.input(edge_variable(kind, e.first, e.second, od.digits[pos.first], od.digits[pos.second])));
            for (auto& cs : sums) factors.push_back(cs.sums[detail::project_index(od.digits, cs.parent_positions, n)]);
            restr[p].push_back(b.mul(factors));
        } while (od.next());
    }
    return b.build(b.add(restr[t.root()]));
}

/// Certificate of prune(H) from the tree solver, extended by attach_pendants.
inline SynthPlan plan_synthesis(const Graph& h, int n, int delta, PolyKind kind) {
    if (n < 1) throw DomainError("n must be positive");
    SynthPlan plan;
    plan.certificate = tw_delta(h, delta, true);
    auto attached = attach_pendants(h, plan.certificate.tree());
    plan.tree = std::move(attached.tree);
    plan.rep = std::move(attached.rep);
    plan.kind = kind;
    plan.n = n;
    plan.delta = delta;
    plan.rep_height = rep_height(plan.tree, plan.rep);
    plan.max_bag = plan.tree.max_bag_size();
    plan.predicted_size_bound = detail::saturating_mul(static_cast<std::uint64_t>(plan.tree.size()),
                                                       detail::saturating_pow(static_cast<std::uint64_t>(n), plan.max_bag));
    plan.disconnected = !h.is_connected();
    if (plan.disconnected) plan.warnings.push_back("pattern graph is disconnected");
    if (plan.rep_height > delta)
        throw ConsistencyError("rep-height " + std::to_string(plan.rep_height) + " exceeds delta " + std::to_string(delta));
    return plan;
}

/// Monotone circuit of product depth at most delta for Hom_{H,n} or ColSub_{H,n}.
inline SynthResult synth_circuit(const Graph& h, int n, int delta, PolyKind kind, std::size_t gate_cap = kDefaultGateCap) {
    SynthPlan plan = plan_synthesis(h, n, delta, kind);
    if (plan.predicted_size_bound > gate_cap)
        plan.warnings.push_back("predicted size " + std::to_string(plan.predicted_size_bound) + " exceeds gate cap " +
                                std::to_string(gate_cap));
    Circuit c = compile_restr(h, plan.tree, plan.rep, n, kind, gate_cap);
    return {std::move(c), std::move(plan)};
}

// ---------------------------------------------------------------------------
// Branching programs

struct AbpResult {
    ABP abp;
    WidthCertificate certificate;  ///< of prune(H), in H's labels
    PathDecomposition layers;      ///< bags of the certificate that carry at least one factor
    int length = 0;
};

namespace detail {

/// One multiplicative factor of the layered product; its alternatives become parallel edges.
struct AbpFactor {
    enum class Kind { edge, pendant, component } kind;
    int u = 0, v = 0;  ///< edge: both endpoints in the bag; pendant: u in the bag, v the leaf
};

inline std::vector<Label> factor_labels(const AbpFactor& f, PolyKind kind, int n, const Bag& bag,
                                        const std::vector<int>& digits) {
    std::vector<Label> out;
    switch (f.kind) {
        case AbpFactor::Kind::edge:
            out.push_back(Label::variable(edge_variable(kind, f.u, f.v, digits[bag_position(bag, f.u)], digits[bag_position(bag, f.v)])));
            break;
        case AbpFactor::Kind::pendant:
            for (int c = 1; c <= n; ++c)
                out.push_back(Label::variable(edge_variable(kind, f.u, f.v, digits[bag_position(bag, f.u)], c)));
            break;
        case AbpFactor::Kind::component:
            for (int a = 1; a <= n; ++a)
                for (int c = 1; c <= n; ++c) out.push_back(Label::variable(edge_variable(kind, f.u, f.v, a, c)));
            break;
    }
    return out;
}

}  // namespace detail

/// Monotone ABP whose every source-to-sink path reads one variable per edge of H.
///
/// Layers follow a minimum-width path decomposition of prune(H) with at most delta
/// bags. Each (bag, coloring) owns a chain reading the factors placed at that bag:
/// edges of prune(H) at the first bag holding both endpoints, pendant edges at the
/// last bag holding the attachment vertex. Isolated vertices multiply the first
/// factor's edges by n each; K2 components are read before the first layer.
inline AbpResult synth_abp(const Graph& h, int n, int delta, PolyKind kind, std::size_t node_cap = kDefaultGateCap) {
    if (n < 1) throw DomainError("n must be positive");
    if (delta < 1) throw DomainError("delta must be at least 1");
    if (delta < static_cast<int>(h.edge_count()))
        throw DegreeError("length " + std::to_string(delta) + " < degree " + std::to_string(h.edge_count()));
    AbpResult res;
    res.certificate = pw_delta(h, delta, true);
    std::vector<Bag> bags = res.certificate.path().bags;
    std::vector<std::vector<detail::AbpFactor>> at(bags.size());
    std::vector<detail::AbpFactor> global;
    int isolated = 0;
    for (const Edge& e : h.edges()) {
        int du = h.degree(e.first), dv = h.degree(e.second);
        if (du >= 2 && dv >= 2) {
            std::size_t i = 0;
            while (i < bags.size() && !(bag_contains(bags[i], e.first) && bag_contains(bags[i], e.second))) ++i;
            if (i == bags.size()) throw ConsistencyError("certificate misses edge " + edge_key(e));
            at[i].push_back({detail::AbpFactor::Kind::edge, e.first, e.second});
        } else if (du == 1 && dv == 1) {
            global.push_back({detail::AbpFactor::Kind::component, e.first, e.second});
        } else {
            int u = du >= 2 ? e.first : e.second, v = du >= 2 ? e.second : e.first;
            int i = static_cast<int>(bags.size()) - 1;
            while (i >= 0 && !bag_contains(bags[i], u)) --i;
            if (i < 0) throw ConsistencyError("certificate misses vertex " + std::to_string(u));
            at[i].push_back({detail::AbpFactor::Kind::pendant, u, v});
        }
    }
    for (int v = 1; v <= h.vertex_count(); ++v)
        if (h.degree(v) == 0) ++isolated;
    for (std::size_t i = 0; i < bags.size(); ++i)
        if (!at[i].empty()) {
            res.layers.bags.push_back(bags[i]);
        }
    {
        std::vector<std::vector<detail::AbpFactor>> kept;
        for (auto& f : at)
            if (!f.empty()) kept.push_back(std::move(f));
        at = std::move(kept);
    }
    bags = res.layers.bags;
    const std::uint64_t multiplicity = detail::saturating_pow(static_cast<std::uint64_t>(n), isolated);

    ABP& a = res.abp;
    a.node_count = 2;
    a.source = 0;
    a.sink = 1;
    auto new_node = [&]() {
        if (static_cast<std::size_t>(a.node_count) >= node_cap)
            throw CapacityError("ABP node cap of " + std::to_string(node_cap) + " exceeded");
        return a.node_count++;
    };
    bool first_factor = true;
    auto connect = [&](int from, int to, std::vector<Label> labels) {
        std::size_t reps = first_factor ? static_cast<std::size_t>(multiplicity) : 1;
        first_factor = false;
        if (reps * labels.size() > node_cap) throw CapacityError("ABP edge count exceeds cap");
        for (std::size_t r = 0; r < reps; ++r)
            for (auto& l : labels) a.edges.push_back({from, to, l});
    };

    if (global.empty() && bags.empty()) {
        connect(a.source, a.sink, {Label::constant(1)});
        res.length = a.length();
        return res;
    }

    int cur = a.source;
    for (std::size_t j = 0; j < global.size(); ++j) {
        int next = (j + 1 == global.size() && bags.empty()) ? a.sink : new_node();
        connect(cur, next, detail::factor_labels(global[j], kind, n, {}, {}));
        cur = next;
    }

    // ends[i]: end node of each coloring of the previous bag, bucketed by the coloring
    // of the vertices shared with the current bag.
    std::vector<int> prev_end{cur};
    Bag prev_bag;
    for (std::size_t i = 0; i < bags.size(); ++i) {
        const Bag& bag = bags[i];
        const bool last = i + 1 == bags.size();
        std::vector<int> shared_prev, shared_cur;
        for (std::size_t p = 0; p < prev_bag.size(); ++p)
            if (bag_contains(bag, prev_bag[p])) {
                shared_prev.push_back(static_cast<int>(p));
                shared_cur.push_back(detail::bag_position(bag, prev_bag[p]));
            }
        std::size_t buckets = 1;
        for (std::size_t s = 0; s < shared_prev.size(); ++s) buckets *= static_cast<std::size_t>(n);
        std::vector<std::vector<int>> pred(buckets);
        {
            detail::Odometer od(n, static_cast<int>(prev_bag.size()));
            std::size_t idx = 0;
            do {
                pred[detail::project_index(od.digits, shared_prev, n)].push_back(prev_end[idx++]);
            } while (od.next());
        }
        std::uint64_t states = detail::saturating_pow(static_cast<std::uint64_t>(n), static_cast<int>(bag.size()));
        if (states * at[i].size() > node_cap) throw CapacityError("ABP node cap of " + std::to_string(node_cap) + " exceeded");
        std::vector<int> ends;
        ends.reserve(static_cast<std::size_t>(states));
        detail::Odometer od(n, static_cast<int>(bag.size()));
        const bool was_first = first_factor;
        do {
            first_factor = was_first;
            const auto& factors = at[i];
            int node = -1;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                auto labels = detail::factor_labels(factors[f], kind, n, bag, od.digits);
                int next = (last && f + 1 == factors.size()) ? a.sink : new_node();
                if (f == 0) {
                    bool fresh = first_factor;
                    for (int p : pred[detail::project_index(od.digits, shared_cur, n)]) {
                        first_factor = fresh;
                        connect(p, next, labels);
                    }
                } else {
                    connect(node, next, labels);
                }
                node = next;
            }
            ends.push_back(node);
        } while (od.next());
        prev_end = std::move(ends);
        prev_bag = bag;
    }
    res.length = a.length();
    if (res.length > delta)
        throw ConsistencyError("ABP length " + std::to_string(res.length) + " exceeds delta " + std::to_string(delta));
    return res;
}

}  // namespace homsynth
