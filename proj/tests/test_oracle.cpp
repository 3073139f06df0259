#include <gtest/gtest.h>

#include "homsynth/oracle.hpp"
#include "homsynth/synth.hpp"

using namespace homsynth;

namespace {

VariableId x(int i, int j) { return VariableId::hom(i, j); }

}  // namespace

TEST(BrutePolynomial, HomK2) {
    SparsePolynomial want;
    want.add_term({x(1, 1)}, 1);
    want.add_term({x(1, 2)}, 2);
    want.add_term({x(2, 2)}, 1);
    EXPECT_EQ(brute_polynomial({gen::clique(2), 2, PolyKind::hom}), want);
}

TEST(BrutePolynomial, ColsubK2) {
    auto p = brute_polynomial({gen::clique(2), 2, PolyKind::colsub});
    EXPECT_EQ(p.size(), 4u);
    for (auto& [m, c] : p.terms()) EXPECT_EQ(c, 1);
}

TEST(BrutePolynomial, Edgeless) {
    EXPECT_EQ(brute_polynomial({Graph(2), 3, PolyKind::hom}), SparsePolynomial::constant(9));
}

TEST(BrutePolynomial, MonomialCounts) {
    for (auto& h : {gen::path(3), gen::clique(3), gen::cycle(4), gen::star(3)})
        for (int n = 1; n <= 3; ++n) {
            std::uint64_t maps = 1;
            for (int i = 0; i < h.vertex_count(); ++i) maps *= n;
            EXPECT_LE(brute_polynomial({h, n, PolyKind::hom}).size(), maps);
            EXPECT_EQ(brute_polynomial({h, n, PolyKind::colsub}).size(), maps);
        }
}

TEST(BrutePolynomial, Caps) {
    EXPECT_THROW(brute_polynomial({gen::path(21), 2, PolyKind::hom}), CapacityError);
    EXPECT_THROW(brute_polynomial({gen::path(2), 0, PolyKind::hom}), DomainError);
}

TEST(BruteEvaluate, TriangleHomomorphisms) {
    Assignment<Rational> a;
    for (int i = 1; i <= 3; ++i)
        for (int j = i; j <= 3; ++j) a[x(i, j)] = i == j ? 0 : 1;
    EXPECT_EQ(brute_evaluate({gen::clique(3), 3, PolyKind::hom}, a), 6);
}

TEST(BruteEvaluate, AllOnesAndK2) {
    PolySpec s{gen::cycle(5), 3, PolyKind::hom};
    Assignment<Rational> ones;
    for (auto& v : variable_universe(s)) ones[v] = 1;
    EXPECT_EQ(brute_evaluate(s, ones), 243);
    EXPECT_EQ(brute_evaluate({gen::clique(2), 2, PolyKind::hom}, {{x(1, 1), 1}, {x(1, 2), 2}, {x(2, 2), 3}}), 8);
}

TEST(BruteEvaluate, MatchesExpansion) {
    for (PolyKind kind : {PolyKind::hom, PolyKind::colsub}) {
        PolySpec s{gen::cycle(4), 3, kind};
        auto p = brute_polynomial(s);
        auto vars = variable_universe(s);
        for (int t = 0; t < 5; ++t) {
            auto point = pit_point(vars, 11, t);
            std::uint64_t sum = 0;
            for (auto& [m, coeff] : p.terms()) {
                std::uint64_t term = PrimeField::from_rational(coeff);
                for (auto& v : m) term = PrimeField::mul(term, point.at(v));
                sum = PrimeField::add(sum, term);
            }
            EXPECT_EQ(sum, brute_evaluate_mod(s, point));
        }
    }
}

TEST(Pit, SynthesisEqual) {
    auto c = synth_circuit(gen::clique(3), 2, 1, PolyKind::hom).circuit;
    auto v = pit_equal(c, {gen::clique(3), 2, PolyKind::hom}, 20, 0);
    EXPECT_TRUE(v.equal);
    EXPECT_EQ(v.trials, 20);
}

TEST(Pit, RelabeledInputMismatch) {
    auto c = synth_circuit(gen::clique(3), 2, 1, PolyKind::hom).circuit;
    auto gates = c.gates();
    for (auto& g : gates)
        if (g.kind == GateKind::input && g.var == x(1, 1)) g.var = x(1, 2);
    Circuit bad(gates, c.output());
    auto v = pit_equal(bad, {gen::clique(3), 2, PolyKind::hom}, 20, 0);
    EXPECT_FALSE(v.equal);
    EXPECT_FALSE(v.point.empty());
    EXPECT_NE(v.circuit_value, v.oracle_value);
}

TEST(Pit, ZeroCircuitMismatch) {
    CircuitBuilder b;
    auto v = pit_equal(b.build(b.constant(0)), {gen::clique(2), 2, PolyKind::hom}, 20, 0);
    EXPECT_FALSE(v.equal);
    EXPECT_EQ(v.mismatch_trial, 0);
}

TEST(Pit, PointsAreReproducible) {
    auto vars = variable_universe({gen::cycle(4), 3, PolyKind::colsub});
    EXPECT_EQ(pit_point(vars, 7, 3), pit_point(vars, 7, 3));
    EXPECT_NE(pit_point(vars, 7, 3), pit_point(vars, 8, 3));
    for (auto& [v, val] : pit_point(vars, 7, 0)) EXPECT_LT(val, PrimeField::modulus);
}

TEST(Field, PrimeArithmetic) {
    using F = PrimeField;
    EXPECT_EQ(F::mul(F::modulus - 1, F::modulus - 1), 1u);
    EXPECT_EQ(F::add(F::modulus - 1, 2), 1u);
    EXPECT_EQ(F::mul(F::inverse(12345), 12345), 1u);
    EXPECT_EQ(F::from_rational(Rational(1, 2)), F::inverse(2));
    EXPECT_THROW(F::inverse(0), EvaluationError);
}
