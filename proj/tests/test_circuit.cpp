#include <gtest/gtest.h>

#include "homsynth/abp.hpp"
#include "homsynth/circuit.hpp"
#include "homsynth/oracle.hpp"
#include "homsynth/parse_tree.hpp"
#include "homsynth/synth.hpp"
#include "homsynth/transform.hpp"

using namespace homsynth;

namespace {

VariableId x(int i, int j) { return VariableId::hom(i, j); }
VariableId y(int u, int v) { return VariableId::aux(u, v); }

/// Hom_{K2,2} = x11 + 2 x12 + x22 built by hand.
Circuit hom_k2() {
    CircuitBuilder b;
    int two = b.constant(2);
    return b.build(b.add({b.input(x(1, 1)), b.mul({two, b.input(x(1, 2))}), b.input(x(2, 2))}));
}

}  // namespace

TEST(Builder, FlattensAndFolds) {
    CircuitBuilder b;
    int a = b.input(x(1, 1)), c = b.input(x(1, 2));
    EXPECT_EQ(b.input(x(1, 1)), a);
    int s = b.add({b.add({a, c}), b.constant(0)});
    EXPECT_EQ(b.gate(s).children.size(), 2u);
    EXPECT_EQ(b.mul({a}), a);
    EXPECT_EQ(b.gate(b.mul({a, b.constant(0)})).kind, GateKind::constant);
    EXPECT_EQ(b.gate(b.add({b.constant(2), b.constant(3)})).value, 5);
}

TEST(Builder, CapEnforced) {
    CircuitBuilder b(2);
    b.input(x(1, 1));
    b.input(x(1, 2));
    EXPECT_THROW(b.input(x(2, 2)), CapacityError);
}

TEST(Circuit, RejectsBadOrder) {
    Gate in;
    in.kind = GateKind::input;
    Gate add;
    add.kind = GateKind::add;
    add.children = {1};
    EXPECT_THROW(Circuit({add, in}, 0), FormatError);
}

TEST(Metrics, SingleInput) {
    CircuitBuilder b;
    auto m = metrics(b.build(b.input(x(1, 1))));
    EXPECT_EQ(m.size, 1);
    EXPECT_EQ(m.product_depth, 0);
    EXPECT_EQ(m.formal_degree, 1);
}

TEST(Metrics, TriangleSynthesis) {
    auto c = synth_circuit(gen::clique(3), 2, 1, PolyKind::hom).circuit;
    auto m = metrics(c);
    EXPECT_EQ(m.product_depth, 1);
    EXPECT_TRUE(m.monotone);
    EXPECT_EQ(m.formal_degree, 3);
    EXPECT_TRUE(m.alternating);
}

TEST(Evaluate, HomK2) {
    Assignment<Rational> a{{x(1, 1), 1}, {x(1, 2), 2}, {x(2, 2), 3}};
    EXPECT_EQ(evaluate(hom_k2(), a), 8);
    Assignment<std::uint64_t> am{{x(1, 1), 1}, {x(1, 2), 2}, {x(2, 2), 3}};
    EXPECT_EQ(evaluate_mod(hom_k2(), am), 8u);
    EXPECT_THROW(evaluate(hom_k2(), {{x(1, 1), 1}}), EvaluationError);
}

TEST(Evaluate, AllOnesCountsMaps) {
    auto c = synth_circuit(gen::cycle(4), 3, 2, PolyKind::hom).circuit;
    Assignment<Rational> ones;
    for (auto& v : c.variables()) ones[v] = 1;
    EXPECT_EQ(evaluate(c, ones), 81);
}

TEST(Evaluate, ModularMatchesExact) {
    auto c = synth_circuit(gen::clique(3), 3, 1, PolyKind::hom).circuit;
    Assignment<Rational> a;
    Assignment<std::uint64_t> am;
    std::uint64_t v = 1'000'000'007;
    for (auto& var : c.variables()) {
        a[var] = Rational(v);
        am[var] = v;
        v = v * 31 + 7;
    }
    Rational exact = evaluate(c, a);
    BigInt reduced = numerator(exact) % BigInt(PrimeField::modulus);
    EXPECT_EQ(static_cast<std::uint64_t>(reduced), evaluate_mod(c, am));
}

TEST(Expand, HomK2) {
    SparsePolynomial want;
    want.add_term({x(1, 1)}, 1);
    want.add_term({x(1, 2)}, 2);
    want.add_term({x(2, 2)}, 1);
    EXPECT_EQ(expand(hom_k2()), want);
    EXPECT_EQ(expand(synth_circuit(gen::clique(2), 2, 1, PolyKind::hom).circuit), want);
}

TEST(Expand, ColsubK2) {
    auto p = expand(synth_circuit(gen::clique(2), 2, 1, PolyKind::colsub).circuit);
    EXPECT_EQ(p.size(), 4u);
    for (auto& [m, c] : p.terms()) EXPECT_EQ(c, 1);
}

TEST(Expand, Constant) {
    CircuitBuilder b;
    EXPECT_EQ(expand(b.build(b.constant(5))), SparsePolynomial::constant(5));
}

TEST(Expand, AgreesWithEvaluation) {
    auto c = synth_circuit(gen::cycle(4), 2, 2, PolyKind::colsub).circuit;
    auto p = expand(c);
    auto vars = c.variables();
    for (int t = 0; t < 20; ++t) {
        auto point = pit_point(vars, 5, t);
        std::uint64_t sum = 0;
        for (auto& [m, coeff] : p.terms()) {
            std::uint64_t term = PrimeField::from_rational(coeff);
            for (auto& v : m) term = PrimeField::mul(term, point.at(v));
            sum = PrimeField::add(sum, term);
        }
        EXPECT_EQ(sum, evaluate_mod(c, point));
    }
}

TEST(ParseTrees, Counts) {
    CircuitBuilder b;
    int m = b.mul({b.input(x(1, 1)), b.input(x(1, 2)), b.input(x(2, 2))});
    EXPECT_EQ(parse_tree_count(b.build(m)), 1u);
    CircuitBuilder b2;
    int s = b2.add({b2.input(x(1, 1)), b2.input(x(1, 2)), b2.input(x(2, 2)), b2.input(x(1, 3))});
    EXPECT_EQ(parse_tree_count(b2.build(s)), 4u);
    EXPECT_EQ(parse_tree_count(synth_circuit(gen::clique(3), 2, 1, PolyKind::colsub).circuit), 8u);
}

TEST(ParseTrees, ValuesSumToPolynomial) {
    auto c = synth_circuit(gen::path(4), 2, 2, PolyKind::hom).circuit;
    SparsePolynomial sum;
    std::uint64_t seen = 0;
    for_each_parse_tree(c, [&](std::uint64_t, const ParseTree& p) {
        auto t = value(c, p);
        sum.add_term(t.monomial, t.coefficient);
        ++seen;
        return true;
    });
    EXPECT_EQ(seen, parse_tree_count(c));
    EXPECT_EQ(sum, expand(c));
}

TEST(ParseTrees, CapEnforced) {
    auto c = synth_circuit(gen::cycle(6), 3, 2, PolyKind::colsub).circuit;
    EXPECT_THROW(ParseTreeEnumerator(c, 10), CapacityError);
}

TEST(Substitute, ZeroKillsMonomials) {
    auto c = substitute(hom_k2(), std::map<VariableId, Image>{{x(1, 2), Image::constant(0)}});
    SparsePolynomial want;
    want.add_term({x(1, 1)}, 1);
    want.add_term({x(2, 2)}, 1);
    EXPECT_EQ(expand(c), want);
    EXPECT_TRUE(metrics(c).monotone);
}

TEST(Substitute, ProductImage) {
    auto c = substitute(hom_k2(), std::map<VariableId, Image>{{x(1, 1), Image::product(x(3, 3), y(1, 2))}});
    auto p = expand(c);
    EXPECT_EQ(p.coefficient({x(3, 3), y(1, 2)}), 1);
    EXPECT_EQ(p.coefficient({x(1, 2)}), 2);
}

TEST(Differentiate, ProductRule) {
    CircuitBuilder b;
    int yy = b.input(y(1, 2)), xx = b.input(x(1, 1));
    auto d1 = differentiate(b.build(b.mul({yy, xx})), y(1, 2));
    EXPECT_EQ(expand(d1), SparsePolynomial::variable(x(1, 1)));
    CircuitBuilder b2;
    int y2 = b2.input(y(1, 2));
    auto d2 = differentiate(b2.build(b2.mul({y2, y2})), y(1, 2));
    SparsePolynomial want;
    want.add_term({y(1, 2)}, 2);
    EXPECT_EQ(expand(d2), want);
}

TEST(Differentiate, KeepsProductDepthAndMatchesDifference) {
    auto c = substitute(synth_circuit(gen::cycle(4), 2, 2, PolyKind::hom).circuit,
                        [](const VariableId& v) -> std::optional<Image> {
                            if (v == x(1, 2)) return Image::product(v, y(1, 2));
                            return std::nullopt;
                        });
    auto d = differentiate(c, y(1, 2));
    EXPECT_EQ(metrics(d).product_depth, metrics(c).product_depth);
    auto p = expand(c), dp = expand(d);
    // Each monomial of c has y-degree at most 4; compare coefficients of the derivative directly.
    SparsePolynomial manual;
    for (auto& [m, coeff] : p.terms()) {
        int k = static_cast<int>(std::count(m.begin(), m.end(), y(1, 2)));
        if (k == 0) continue;
        Monomial rest = m;
        rest.erase(std::find(rest.begin(), rest.end(), y(1, 2)));
        manual.add_term(rest, coeff * k);
    }
    EXPECT_EQ(dp, manual);
}

TEST(Scale, DividesCoefficients) {
    auto c = scale(hom_k2(), Rational(1, 2));
    SparsePolynomial want;
    want.add_term({x(1, 1)}, Rational(1, 2));
    want.add_term({x(1, 2)}, 1);
    want.add_term({x(2, 2)}, Rational(1, 2));
    EXPECT_EQ(expand(c), want);
}

TEST(Abp, SingleEdgeAndPath) {
    ABP a{2, 0, 1, {{0, 1, Label::variable(x(1, 1))}}};
    auto c = abp_to_circuit(a);
    EXPECT_EQ(expand(c), SparsePolynomial::variable(x(1, 1)));
    EXPECT_EQ(internal_gate_count(c), 0);
    ABP p{3, 0, 1, {{0, 2, Label::variable(x(1, 1))}, {2, 1, Label::variable(x(1, 2))}}};
    auto pc = abp_to_circuit(p);
    EXPECT_TRUE(metrics(pc).skew);
    EXPECT_EQ(p.length(), 2);
    EXPECT_EQ(expand(pc).coefficient({x(1, 1), x(1, 2)}), 1);
}

TEST(Abp, CycleMatchesOracle) {
    auto r = synth_abp(gen::cycle(4), 2, 4, PolyKind::colsub);
    auto c = abp_to_circuit(r.abp);
    EXPECT_TRUE(metrics(c).skew);
    auto p = expand(c);
    EXPECT_EQ(p.size(), 16u);
    EXPECT_EQ(p, brute_polynomial({gen::cycle(4), 2, PolyKind::colsub}));
}

TEST(Variables, SpellingRoundTrip) {
    for (auto v : {x(1, 2), VariableId::colsub(3, 1, 2, 1), y(2, 5)}) EXPECT_EQ(parse_variable(to_string(v)), v);
    EXPECT_EQ(x(2, 1), x(1, 2));
    EXPECT_EQ(VariableId::colsub(2, 1, 3, 4), VariableId::colsub(1, 2, 4, 3));
    EXPECT_THROW(parse_variable("z[1,2]"), FormatError);
}
