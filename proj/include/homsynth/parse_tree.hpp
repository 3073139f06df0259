#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "homsynth/circuit.hpp"

namespace homsynth {

/// Reduced parse tree: add gates are elided, every mul gate keeps all children.
struct ParseTree {
    struct Node {
        int gate = 0;
        std::vector<int> children;  ///< node indices
        std::vector<int> via;       ///< add gates elided directly above this node, top first
    };
    std::vector<Node> nodes;  ///< nodes[0] is the root

    /// Every circuit gate the tree passes through, elided add gates included.
    std::vector<int> gates() const {
        std::vector<int> g;
        for (auto& n : nodes) {
            g.push_back(n.gate);
            g.insert(g.end(), n.via.begin(), n.via.end());
        }
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        return g;
    }
};

struct Term {
    Rational coefficient = 1;
    Monomial monomial;
};

/// val(P): product of the leaf labels.
inline Term value(const Circuit& c, const ParseTree& p) {
    Term t;
    for (auto& n : p.nodes) {
        const Gate& g = c.gate(n.gate);
        if (g.kind == GateKind::input)
            t.monomial.push_back(g.var);
        else if (g.kind == GateKind::constant)
            t.coefficient *= g.value;
    }
    std::sort(t.monomial.begin(), t.monomial.end());
    return t;
}

/// Random access to the parse trees of a circuit in a fixed order.
class ParseTreeEnumerator {
public:
    explicit ParseTreeEnumerator(const Circuit& c, std::uint64_t cap = kExpandCap) : c_(c), counts_(parse_tree_counts(c)) {
        if (counts_[c.output()] > cap)
            throw CapacityError("circuit has " + std::to_string(counts_[c.output()]) + " parse trees, cap is " +
                                std::to_string(cap));
        prefix_.resize(static_cast<std::size_t>(c.size()));
        for (int g = 0; g < c.size(); ++g) {
            const Gate& gate = c.gate(g);
            if (gate.kind != GateKind::add) continue;
            std::uint64_t s = 0;
            for (int ch : gate.children) {
                s += counts_[ch];
                prefix_[g].push_back(s);
            }
        }
    }

    std::uint64_t count() const { return counts_[c_.output()]; }
    std::uint64_t count(int gate) const { return counts_.at(static_cast<std::size_t>(gate)); }

    ParseTree at(std::uint64_t index) const {
        if (index >= count()) throw DomainError("parse tree index out of range");
        ParseTree p;
        build(p, c_.output(), index);
        return p;
    }

private:
    int build(ParseTree& p, int g, std::uint64_t i) const {
        std::vector<int> via;
        while (c_.gate(g).kind == GateKind::add) {
            via.push_back(g);
            auto& pre = prefix_[g];
            auto k = static_cast<std::size_t>(std::upper_bound(pre.begin(), pre.end(), i) - pre.begin());
            if (k > 0) i -= pre[k - 1];
            g = c_.gate(g).children[k];
        }
        int id = static_cast<int>(p.nodes.size());
        p.nodes.push_back(ParseTree::Node{g, {}, std::move(via)});
        if (c_.gate(g).kind == GateKind::mul) {
            for (int ch : c_.gate(g).children) {
                std::uint64_t k = counts_[ch];
                int child = build(p, ch, i % k);
                i /= k;
                p.nodes[id].children.push_back(child);
            }
        }
        return id;
    }

    const Circuit& c_;
    std::vector<std::uint64_t> counts_;
    std::vector<std::vector<std::uint64_t>> prefix_;
};

/// Calls `visit(index, tree)` for every parse tree; stops early if visit returns false.
template <class Visit>
void for_each_parse_tree(const Circuit& c, Visit&& visit, std::uint64_t cap = kExpandCap) {
    ParseTreeEnumerator e(c, cap);
    for (std::uint64_t i = 0; i < e.count(); ++i)
        if (!visit(i, e.at(i))) return;
}

}  // namespace homsynth
