#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "homsynth/circuit.hpp"

namespace homsynth {

/// Image of a variable under substitution: a variable, a constant, or a product of two variables.
struct Image {
    enum class Kind { variable, constant, product } kind = Kind::variable;
    VariableId a, b;
    Rational value = 0;

    static Image variable(const VariableId& x) { return {Kind::variable, x, {}, 0}; }
    static Image constant(const Rational& c) { return {Kind::constant, {}, {}, c}; }
    static Image product(const VariableId& x, const VariableId& y) { return {Kind::product, x, y, 0}; }

    bool monotone() const { return kind != Kind::constant || value >= 0; }
};

/// Returns the image of a variable, or nullopt to leave it unchanged.
using SubstitutionRule = std::function<std::optional<Image>(const VariableId&)>;

namespace detail {

/// Copies the live gates of `c` into `b`, mapping input gates through `leaf`.
template <class Leaf>
std::vector<int> rebuild(const Circuit& c, CircuitBuilder& b, Leaf&& leaf) {
    auto live = c.reachable();
    std::vector<int> map(static_cast<std::size_t>(c.size()), -1);
    std::vector<int> ch;
    for (int g = 0; g < c.size(); ++g) {
        if (!live[g]) continue;
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
            case GateKind::input: map[g] = leaf(gate.var); break;
            case GateKind::constant: map[g] = b.constant(gate.value); break;
            case GateKind::add:
            case GateKind::mul:
                ch.clear();
                for (int x : gate.children) ch.push_back(map[x]);
                map[g] = gate.kind == GateKind::add ? b.add(ch) : b.mul(ch);
                break;
        }
    }
    return map;
}

inline int image_gate(CircuitBuilder& b, const Image& im) {
    switch (im.kind) {
        case Image::Kind::variable: return b.input(im.a);
        case Image::Kind::constant: return b.constant(im.value);
        case Image::Kind::product: return b.mul({b.input(im.a), b.input(im.b)});
    }
    return b.constant(0);
}

}  // namespace detail

/// Replaces every input labeled x by rule(x). A product image under a mul gate is
/// spliced into it; under an add gate it adds one mul gate.
inline Circuit substitute(const Circuit& c, const SubstitutionRule& rule,
                          std::size_t gate_cap = std::numeric_limits<std::size_t>::max()) {
    CircuitBuilder b(gate_cap);
    auto map = detail::rebuild(c, b, [&](const VariableId& x) {
        auto im = rule(x);
        return im ? detail::image_gate(b, *im) : b.input(x);
    });
    return b.build(map[c.output()]);
}

inline Circuit substitute(const Circuit& c, const std::map<VariableId, Image>& rule) {
    return substitute(c, [&](const VariableId& x) -> std::optional<Image> {
        auto it = rule.find(x);
        if (it == rule.end()) return std::nullopt;
        return it->second;
    });
}

/// Circuit for the partial derivative with respect to `v`.
///
/// Every gate g is paired with a gate for its derivative; a mul gate over
/// g_1..g_m differentiates to the sum over i of (dg_i times the other g_j), and
/// the builder splices those products so the product depth does not grow.
inline Circuit differentiate(const Circuit& c, const VariableId& v,
                             std::size_t gate_cap = std::numeric_limits<std::size_t>::max()) {
    CircuitBuilder b(gate_cap);
    auto live = c.reachable();
    const int none = -1;
    std::vector<int> val(static_cast<std::size_t>(c.size()), none), der(static_cast<std::size_t>(c.size()), none);
    auto nonzero = [&](int g) { return g == none || !(b.gate(g).kind == GateKind::constant && b.gate(g).value == 0) ? g : none; };
    std::vector<int> ch, terms;
    for (int g = 0; g < c.size(); ++g) {
        if (!live[g]) continue;
        const Gate& gate = c.gate(g);
        switch (gate.kind) {
            case GateKind::input:
                val[g] = b.input(gate.var);
                if (gate.var == v) der[g] = b.constant(1);
                break;
            case GateKind::constant: val[g] = b.constant(gate.value); break;
            case GateKind::add:
                ch.clear();
                terms.clear();
                for (int x : gate.children) {
                    ch.push_back(val[x]);
                    if (der[x] != none) terms.push_back(der[x]);
                }
                val[g] = b.add(ch);
                if (!terms.empty()) der[g] = nonzero(b.add(terms));
                break;
            case GateKind::mul: {
                ch.clear();
                terms.clear();
                for (int x : gate.children) ch.push_back(val[x]);
                val[g] = b.mul(ch);
                for (std::size_t i = 0; i < gate.children.size(); ++i) {
                    int d = der[gate.children[i]];
                    if (d == none) continue;
                    std::vector<int> factors = ch;
                    factors[i] = d;
                    terms.push_back(b.mul(factors));
                }
                if (!terms.empty()) der[g] = nonzero(b.add(terms));
                break;
            }
        }
    }
    int out = der[c.output()];
    return b.build(out == none ? b.constant(0) : out);
}

/// Multiplies the computed polynomial by `factor`. The constant is pushed through
/// add gates into the mul gates below them. Repeated children of an add gate are
/// merged first, so a child occurring m times is scaled by m * factor and kept
/// as is when that product is 1. Only inputs still needing a non-unit factor get
/// a new mul gate.
inline Circuit scale(const Circuit& c, const Rational& factor) {
    CircuitBuilder b;
    auto map = detail::rebuild(c, b, [&](const VariableId& x) { return b.input(x); });
    std::map<std::pair<int, Rational>, int> memo;
    std::function<int(int, const Rational&)> scaled = [&](int g, const Rational& f) -> int {
        if (f == 1) return g;
        auto key = std::make_pair(g, f);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Gate gate = b.gate(g);
        int r;
        switch (gate.kind) {
            case GateKind::constant: r = b.constant(gate.value * f); break;
            case GateKind::add: {
                std::map<int, int> mult;
                std::vector<int> order;
                for (int x : gate.children)
                    if (mult[x]++ == 0) order.push_back(x);
                std::vector<int> ch;
                for (int x : order) ch.push_back(scaled(x, f * mult[x]));
                r = b.add(ch);
                break;
            }
            default: r = b.mul({b.constant(f), g}); break;
        }
        memo.emplace(key, r);
        return r;
    };
    return b.build(scaled(map[c.output()], factor));
}

}  // namespace homsynth
