#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "homsynth/errors.hpp"
#include "homsynth/field.hpp"
#include "homsynth/polynomial.hpp"
#include "homsynth/variable.hpp"

namespace homsynth {

enum class GateKind : std::uint8_t { input, constant, add, mul };

inline std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::input: return "input";
        case GateKind::constant: return "const";
        case GateKind::add: return "add";
        case GateKind::mul: return "mul";
    }
    return "?";
}

inline GateKind parse_gate_kind(const std::string& s) {
    if (s == "input") return GateKind::input;
    if (s == "const") return GateKind::constant;
    if (s == "add") return GateKind::add;
    if (s == "mul") return GateKind::mul;
    throw FormatError("unknown gate kind '" + s + "'");
}

struct Gate {
    GateKind kind = GateKind::constant;
    std::vector<int> children;
    VariableId var;      ///< input gates
    Rational value = 0;  ///< constant gates

    bool is_leaf() const { return kind == GateKind::input || kind == GateKind::constant; }
    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gate DAG with children stored before parents. Gate ids are indices.
class Circuit {
public:
    Circuit() : gates_{Gate{}}, output_(0) {}

    Circuit(std::vector<Gate> gates, int output) : gates_(std::move(gates)), output_(output) {
        if (gates_.empty()) throw FormatError("circuit has no gates");
        if (output_ < 0 || output_ >= size()) throw FormatError("output gate " + std::to_string(output_) + " out of range");
        for (int g = 0; g < size(); ++g) {
            const Gate& gate = gates_[g];
            if (gate.is_leaf() && !gate.children.empty())
                throw FormatError("gate " + std::to_string(g) + ": leaf with children");
            if (!gate.is_leaf() && gate.children.empty())
                throw FormatError("gate " + std::to_string(g) + ": " + to_string(gate.kind) + " gate without children");
            for (int c : gate.children)
                if (c < 0 || c >= g) throw FormatError("gate " + std::to_string(g) + ": child " + std::to_string(c) + " not before parent");
        }
    }

    int size() const { return static_cast<int>(gates_.size()); }
    int output() const { return output_; }
    const Gate& gate(int id) const { return gates_.at(static_cast<std::size_t>(id)); }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Distinct variables read by input gates, sorted.
    std::vector<VariableId> variables() const {
        std::set<VariableId> vars;
        for (auto& g : gates_)
            if (g.kind == GateKind::input) vars.insert(g.var);
        return {vars.begin(), vars.end()};
    }

    /// Gates reachable from the output.
    std::vector<char> reachable() const {
        std::vector<char> r(gates_.size(), 0);
        r[output_] = 1;
        for (int g = output_; g >= 0; --g)
            if (r[g])
                for (int c : gates_[g].children) r[c] = 1;
        return r;
    }

    friend bool operator==(const Circuit&, const Circuit&) = default;

private:
    std::vector<Gate> gates_;
    int output_;
};

/// Incremental construction with input/constant interning and add/mul flattening.
///
/// add: add children are spliced in, zero constants dropped, all-constant sums folded.
/// mul: a zero constant annihilates, mul children are spliced in, constants are
/// multiplied together and a unit constant dropped.
/// Single-child gates collapse to the child, so builder output always alternates.
class CircuitBuilder {
public:
    explicit CircuitBuilder(std::size_t gate_cap = std::numeric_limits<std::size_t>::max()) : cap_(gate_cap) {}

    int input(const VariableId& x) {
        auto it = inputs_.find(x);
        if (it != inputs_.end()) return it->second;
        Gate g;
        g.kind = GateKind::input;
        g.var = x;
        int id = push(std::move(g));
        inputs_.emplace(x, id);
        return id;
    }

    int constant(const Rational& c) {
        auto it = constants_.find(c);
        if (it != constants_.end()) return it->second;
        Gate g;
        g.kind = GateKind::constant;
        g.value = c;
        int id = push(std::move(g));
        constants_.emplace(c, id);
        return id;
    }

    int add(const std::vector<int>& children) {
        std::vector<int> ch;
        ch.reserve(children.size());
        bool all_const = true;
        for (int c : children) {
            const Gate& g = gates_.at(static_cast<std::size_t>(c));
            if (g.kind == GateKind::add) {
                for (int cc : g.children) ch.push_back(cc);
                all_const = false;
            } else if (g.kind == GateKind::constant) {
                if (g.value != 0) ch.push_back(c);
            } else {
                ch.push_back(c);
                all_const = false;
            }
        }
        if (ch.empty()) return constant(0);
        if (all_const) {
            Rational s = 0;
            for (int c : ch) s += gates_[c].value;
            return constant(s);
        }
        if (ch.size() == 1) return ch[0];
        Gate g;
        g.kind = GateKind::add;
        g.children = std::move(ch);
        return push(std::move(g));
    }

    int mul(const std::vector<int>& children) {
        std::vector<int> ch;
        ch.reserve(children.size());
        Rational coeff = 1;
        auto take = [&](int c) {
            const Gate& g = gates_[c];
            if (g.kind == GateKind::constant)
                coeff *= g.value;
            else
                ch.push_back(c);
        };
        for (int c : children) {
            const Gate& g = gates_.at(static_cast<std::size_t>(c));
            if (g.kind == GateKind::mul)
                for (int cc : g.children) take(cc);
            else
                take(c);
        }
        if (coeff == 0) return constant(0);
        if (ch.empty()) return constant(coeff);
        if (coeff != 1) ch.insert(ch.begin(), constant(coeff));
        if (ch.size() == 1) return ch[0];
        Gate g;
        g.kind = GateKind::mul;
        g.children = std::move(ch);
        return push(std::move(g));
    }

    int size() const { return static_cast<int>(gates_.size()); }
    const Gate& gate(int id) const { return gates_.at(static_cast<std::size_t>(id)); }

    /// Circuit of the gates reachable from `output`, renumbered in creation order.
    Circuit build(int output) const {
        std::vector<char> keep(gates_.size(), 0);
        keep.at(static_cast<std::size_t>(output)) = 1;
        for (int g = output; g >= 0; --g)
            if (keep[g])
                for (int c : gates_[g].children) keep[c] = 1;
        std::vector<int> remap(gates_.size(), -1);
        std::vector<Gate> out;
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            if (!keep[g]) continue;
            remap[g] = static_cast<int>(out.size());
            Gate copy = gates_[g];
            for (int& c : copy.children) c = remap[c];
            out.push_back(std::move(copy));
        }
        return Circuit(std::move(out), remap[output]);
    }

private:
    int push(Gate g) {
        if (gates_.size() >= cap_)
            throw CapacityError("gate cap of " + std::to_string(cap_) + " exceeded");
        gates_.push_back(std::move(g));
        return static_cast<int>(gates_.size()) - 1;
    }

    std::vector<Gate> gates_;
    std::map<VariableId, int> inputs_;
    std::map<Rational, int> constants_;
    std::size_t cap_;
};

/// Structural measurements over the gates reachable from the output.
struct CircuitMetrics {
    int size = 0;  ///< all gates, inputs and constants included
    int depth = 0;  ///< edges on the longest output-to-leaf path
    int product_depth = 0;
    bool monotone = true;
    bool skew = true;
    bool alternating = true;
    long long formal_degree = 0;
    int inputs = 0, constants = 0, adds = 0, muls = 0;
};

inline CircuitMetrics metrics(const Circuit& c) {
    CircuitMetrics m;
    auto live = c.reachable();
    std::vector<int> depth(c.size(), 0), pdepth(c.size(), 0);
    std::vector<long long> degree(c.size(), 0);
    for (int g = 0; g < c.size(); ++g) {
        if (!live[g]) continue;
        const Gate& gate = c.gate(g);
        ++m.size;
        switch (gate.kind) {
            case GateKind::input:
                ++m.inputs;
                degree[g] = 1;
                break;
            case GateKind::constant:
                ++m.constants;
                if (gate.value < 0) m.monotone = false;
                break;
            case GateKind::add:
            case GateKind::mul: {
                bool is_mul = gate.kind == GateKind::mul;
                ++(is_mul ? m.muls : m.adds);
                int non_leaf = 0;
                long long deg = 0;
                for (int ch : gate.children) {
                    const Gate& child = c.gate(ch);
                    depth[g] = std::max(depth[g], depth[ch] + 1);
                    pdepth[g] = std::max(pdepth[g], pdepth[ch]);
                    if (!child.is_leaf()) ++non_leaf;
                    if (child.kind == gate.kind) m.alternating = false;
                    deg = is_mul ? deg + degree[ch] : std::max(deg, degree[ch]);
                }
                degree[g] = deg;
                if (is_mul) {
                    ++pdepth[g];
                    if (non_leaf > 1) m.skew = false;
                }
                break;
            }
        }
    }
    m.depth = depth[c.output()];
    m.product_depth = pdepth[c.output()];
    m.formal_degree = degree[c.output()];
    return m;
}

/// Number of internal (add and mul) gates reachable from the output.
inline int internal_gate_count(const Circuit& c) {
    auto m = metrics(c);
    return m.adds + m.muls;
}

/// Evaluates over `Field`; `lookup(VariableId)` supplies input values.
template <class Field, class Lookup>
typename Field::value_type evaluate_with(const Circuit& c, Lookup&& lookup) {
    using V = typename Field::value_type;
    auto live = c.reachable();
    std::vector<V> val(static_cast<std::size_t>(c.size()), Field::zero());
    for (int g = 0; g < c.size(); ++g) {
        if (!live[g]) continue;
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
            case GateKind::input: val[g] = lookup(gate.var); break;
            case GateKind::constant: val[g] = Field::from_rational(gate.value); break;
            case GateKind::add: {
                V acc = Field::zero();
                for (int ch : gate.children) acc = Field::add(acc, val[ch]);
                val[g] = acc;
                break;
            }
            case GateKind::mul: {
                V acc = Field::one();
                for (int ch : gate.children) acc = Field::mul(acc, val[ch]);
                val[g] = acc;
                break;
            }
        }
    }
    return val[c.output()];
}

template <class V>
using Assignment = std::map<VariableId, V>;

template <class V>
V lookup_or_throw(const Assignment<V>& a, const VariableId& x) {
    auto it = a.find(x);
    if (it == a.end()) throw EvaluationError("unassigned variable " + to_string(x));
    return it->second;
}

/// Exact evaluation.
inline Rational evaluate(const Circuit& c, const Assignment<Rational>& a) {
    return evaluate_with<RationalField>(c, [&](const VariableId& x) { return lookup_or_throw(a, x); });
}

/// Evaluation modulo 2^61 - 1; assigned values must already be reduced.
inline std::uint64_t evaluate_mod(const Circuit& c, const Assignment<std::uint64_t>& a) {
    return evaluate_with<PrimeField>(c, [&](const VariableId& x) { return lookup_or_throw(a, x) % PrimeField::modulus; });
}

/// Saturating parse-tree counts per gate (add: sum, mul: product, leaf: 1).
inline std::vector<std::uint64_t> parse_tree_counts(const Circuit& c) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> cnt(static_cast<std::size_t>(c.size()), 1);
    for (int g = 0; g < c.size(); ++g) {
        const Gate& gate = c.gate(g);
        if (gate.kind == GateKind::add) {
            unsigned __int128 s = 0;
            for (int ch : gate.children) s += cnt[ch];
            cnt[g] = s > kMax ? kMax : static_cast<std::uint64_t>(s);
        } else if (gate.kind == GateKind::mul) {
            unsigned __int128 p = 1;
            for (int ch : gate.children) {
                p *= cnt[ch];
                if (p > kMax) p = kMax;
            }
            cnt[g] = static_cast<std::uint64_t>(p);
        }
    }
    return cnt;
}

inline std::uint64_t parse_tree_count(const Circuit& c) { return parse_tree_counts(c)[c.output()]; }

constexpr std::uint64_t kExpandCap = 1'000'000;

/// Exact expansion; refuses when the parse-tree count exceeds `cap`.
inline SparsePolynomial expand(const Circuit& c, std::uint64_t cap = kExpandCap) {
    std::uint64_t count = parse_tree_count(c);
    if (count > cap)
        throw CapacityError("expansion needs " + std::to_string(count) + " parse trees, cap is " + std::to_string(cap));
    auto live = c.reachable();
    std::vector<int> uses(static_cast<std::size_t>(c.size()), 0);
    for (int g = 0; g < c.size(); ++g)
        if (live[g])
            for (int ch : c.gate(g).children) ++uses[ch];
    std::vector<SparsePolynomial> poly(static_cast<std::size_t>(c.size()));
    auto release = [&](int ch) {
        if (--uses[ch] == 0 && ch != c.output()) poly[ch] = SparsePolynomial();
    };
    for (int g = 0; g < c.size(); ++g) {
        if (!live[g]) continue;
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
            case GateKind::input: poly[g] = SparsePolynomial::variable(gate.var); break;
            case GateKind::constant: poly[g] = SparsePolynomial::constant(gate.value); break;
            case GateKind::add:
                for (int ch : gate.children) poly[g] += poly[ch];
                for (int ch : gate.children) release(ch);
                break;
            case GateKind::mul: {
                SparsePolynomial acc = SparsePolynomial::constant(1);
                for (int ch : gate.children) acc = acc * poly[ch];
                poly[g] = std::move(acc);
                for (int ch : gate.children) release(ch);
                break;
            }
        }
    }
    return poly[c.output()];
}

}  // namespace homsynth
