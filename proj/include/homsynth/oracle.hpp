#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "homsynth/circuit.hpp"
#include "homsynth/graph.hpp"
#include "homsynth/polynomial.hpp"

namespace homsynth {

struct PolySpec {
    Graph graph;
    int n = 1;
    PolyKind kind = PolyKind::hom;
};

inline constexpr std::uint64_t kBrutePolynomialCap = 1'000'000;
inline constexpr std::uint64_t kBruteEvaluateCap = 100'000'000;

namespace detail {

inline VariableId oracle_variable(PolyKind kind, int u, int v, int cu, int cv) {
    if (kind == PolyKind::hom) return VariableId::hom(cu, cv);
    return u < v ? VariableId::colsub(u, v, cu, cv) : VariableId::colsub(v, u, cv, cu);
}

inline std::uint64_t map_count(const PolySpec& s, std::uint64_t cap, const char* what) {
    if (s.n < 1) throw DomainError("n must be positive");
    std::uint64_t total = saturating_pow(static_cast<std::uint64_t>(s.n), s.graph.vertex_count());
    if (total > cap)
        throw CapacityError(std::string(what) + " needs n^k = " + std::to_string(total) + " maps, cap is " + std::to_string(cap));
    return total;
}

/// Vertex order in which every vertex after the first of its component has an earlier neighbor.
inline std::vector<int> bfs_order(const Graph& g) {
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
    for (int s = 1; s <= g.vertex_count(); ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        std::size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int v = order[head++];
            for (int w : g.neighbors(v))
                if (!seen[w]) seen[w] = 1, order.push_back(w);
        }
    }
    return order;
}

}  // namespace detail

/// Every variable the polynomial of `s` may contain, sorted.
inline std::vector<VariableId> variable_universe(const PolySpec& s) {
    std::vector<VariableId> vars;
    if (s.kind == PolyKind::hom) {
        for (int i = 1; i <= s.n; ++i)
            for (int j = i; j <= s.n; ++j) vars.push_back(VariableId::hom(i, j));
    } else {
        for (const Edge& e : s.graph.edges())
            for (int i = 1; i <= s.n; ++i)
                for (int j = 1; j <= s.n; ++j) vars.push_back(VariableId::colsub(e.first, e.second, i, j));
    }
    std::sort(vars.begin(), vars.end());
    return vars;
}

/// Expansion by enumerating all maps V(H) -> [n].
inline SparsePolynomial brute_polynomial(const PolySpec& s) {
    detail::map_count(s, kBrutePolynomialCap, "brute_polynomial");
    const int k = s.graph.vertex_count();
    std::vector<int> f(static_cast<std::size_t>(k) + 1, 1);
    SparsePolynomial p;
    Monomial m;
    for (;;) {
        m.clear();
        for (const Edge& e : s.graph.edges()) m.push_back(detail::oracle_variable(s.kind, e.first, e.second, f[e.first], f[e.second]));
        std::sort(m.begin(), m.end());
        p.add_term(m, 1);
        int v = k;
        while (v >= 1 && f[v] == s.n) f[v--] = 1;
        if (v < 1) break;
        ++f[v];
    }
    return p;
}

/// Point value of the polynomial of `s` without expanding it.
template <class Field, class Lookup>
typename Field::value_type brute_evaluate_with(const PolySpec& s, Lookup&& lookup) {
    using V = typename Field::value_type;
    detail::map_count(s, kBruteEvaluateCap, "brute_evaluate");
    const int n = s.n;
    const auto order = detail::bfs_order(s.graph);
    const int k = static_cast<int>(order.size());
    std::vector<int> pos(static_cast<std::size_t>(s.graph.vertex_count()) + 1, 0);
    for (int i = 0; i < k; ++i) pos[order[i]] = i;
    // back[i]: edges from order[i] to earlier vertices, with the n x n value table of each.
    struct Back {
        int earlier;
        std::vector<V> table;  // [color of earlier - 1][color of this - 1]
    };
    std::vector<std::vector<Back>> back(static_cast<std::size_t>(k));
    for (const Edge& e : s.graph.edges()) {
        int a = e.first, b = e.second;
        if (pos[a] > pos[b]) std::swap(a, b);
        Back bk{pos[a], std::vector<V>(static_cast<std::size_t>(n * n))};
        for (int ca = 1; ca <= n; ++ca)
            for (int cb = 1; cb <= n; ++cb) bk.table[(ca - 1) * n + (cb - 1)] = lookup(detail::oracle_variable(s.kind, a, b, ca, cb));
        back[pos[b]].push_back(std::move(bk));
    }
    std::vector<int> color(static_cast<std::size_t>(k), 0);
    std::vector<V> partial(static_cast<std::size_t>(k) + 1, Field::one());
    V total = Field::zero();
    if (k == 0) return Field::one();
    int i = 0;
    color[0] = 0;
    // Iterative DFS: color[i] is the last color tried at depth i.
    for (;;) {
        if (color[i] == n) {
            color[i] = 0;
            if (--i < 0) break;
            continue;
        }
        ++color[i];
        V val = partial[i];
        for (auto& bk : back[i]) val = Field::mul(val, bk.table[(color[bk.earlier] - 1) * n + (color[i] - 1)]);
        if (i + 1 == k) {
            total = Field::add(total, val);
        } else {
            partial[i + 1] = val;
            ++i;
        }
    }
    return total;
}

inline Rational brute_evaluate(const PolySpec& s, const Assignment<Rational>& a) {
    return brute_evaluate_with<RationalField>(s, [&](const VariableId& x) { return lookup_or_throw(a, x); });
}

inline std::uint64_t brute_evaluate_mod(const PolySpec& s, const Assignment<std::uint64_t>& a) {
    return brute_evaluate_with<PrimeField>(s, [&](const VariableId& x) { return lookup_or_throw(a, x) % PrimeField::modulus; });
}

struct PitVerdict {
    bool equal = true;
    int trials = 0;  ///< trials run
    std::uint64_t seed = 0;
    int mismatch_trial = -1;
    std::vector<std::pair<VariableId, std::uint64_t>> point;  ///< witnessing point on mismatch
    std::uint64_t circuit_value = 0, oracle_value = 0;
};

/// Deterministic random point for `trial`: mt19937_64 seeded by a splitmix derivation of (seed, trial).
inline Assignment<std::uint64_t> pit_point(const std::vector<VariableId>& vars, std::uint64_t seed, int trial) {
    std::mt19937_64 rng(mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(trial))));
    Assignment<std::uint64_t> a;
    for (auto& x : vars) a.emplace(x, PrimeField::sample(rng));
    return a;
}

/// Schwartz-Zippel comparison of a circuit with the oracle modulo 2^61 - 1.
inline PitVerdict pit_equal(const Circuit& c, const PolySpec& s, int trials, std::uint64_t seed) {
    if (trials < 1) throw DomainError("trials must be positive");
    std::set<VariableId> universe;
    for (auto& x : variable_universe(s)) universe.insert(x);
    for (auto& x : c.variables()) universe.insert(x);
    std::vector<VariableId> vars(universe.begin(), universe.end());
    PitVerdict v;
    v.seed = seed;
    for (int t = 0; t < trials; ++t) {
        auto point = pit_point(vars, seed, t);
        std::uint64_t cv = evaluate_mod(c, point);
        std::uint64_t ov = brute_evaluate_mod(s, point);
        ++v.trials;
        if (cv != ov) {
            v.equal = false;
            v.mismatch_trial = t;
            v.point.assign(point.begin(), point.end());
            v.circuit_value = cv;
            v.oracle_value = ov;
            return v;
        }
    }
    return v;
}

}  // namespace homsynth
