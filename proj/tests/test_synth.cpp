#include <gtest/gtest.h>

#include "homsynth/analysis.hpp"
#include "homsynth/oracle.hpp"
#include "homsynth/synth.hpp"

using namespace homsynth;

namespace {

std::vector<Graph> corpus() {
    return {gen::clique(2), gen::path(3),     gen::path(4),     gen::star(3), gen::clique(3), gen::cycle(4),
            gen::cycle(6),  gen::clique(4),   gen::dary(2, 3),  gen::dary(3, 2), pendant_cycle_graph()};
}

}  // namespace

TEST(Synth, TriangleHomExact) {
    auto r = synth_circuit(gen::clique(3), 2, 1, PolyKind::hom);
    EXPECT_EQ(expand(r.circuit), brute_polynomial({gen::clique(3), 2, PolyKind::hom}));
}

TEST(Synth, PendantCycleDepthTwo) {
    auto r = synth_circuit(pendant_cycle_graph(), 2, 2, PolyKind::colsub);
    EXPECT_EQ(metrics(r.circuit).product_depth, 2);
    EXPECT_EQ(r.plan.certificate.value, 2);
}

TEST(Synth, PathHomHasDiagonal) {
    auto p = expand(synth_circuit(gen::path(3), 3, 1, PolyKind::hom).circuit);
    EXPECT_EQ(p, brute_polynomial({gen::path(3), 3, PolyKind::hom}));
    EXPECT_EQ(p.coefficient({VariableId::hom(1, 1), VariableId::hom(1, 1)}), 1);
    EXPECT_EQ(p.coefficient({VariableId::hom(1, 2), VariableId::hom(1, 2)}), 2);
}

TEST(Synth, EdgeColsubQuadratic) {
    auto r = synth_circuit(gen::clique(2), 5, 1, PolyKind::colsub);
    EXPECT_EQ(expand(r.circuit).size(), 25u);
    EXPECT_LE(r.circuit.size(), 2 * 25 + 5);
}

TEST(Synth, CorpusProperties) {
    for (auto& h : corpus())
        for (int delta = 1; delta <= 3; ++delta)
            for (int n = 2; n <= 3; ++n)
                for (PolyKind kind : {PolyKind::hom, PolyKind::colsub}) {
                    auto r = synth_circuit(h, n, delta, kind);
                    auto m = metrics(r.circuit);
                    EXPECT_LE(m.product_depth, delta);
                    EXPECT_EQ(m.product_depth, r.plan.rep_height);
                    EXPECT_TRUE(m.monotone);
                    for (auto& g : r.circuit.gates())
                        if (g.kind == GateKind::constant) EXPECT_GE(g.value, 0);
                    EXPECT_LE(static_cast<std::uint64_t>(m.adds + m.muls), 4 * r.plan.predicted_size_bound);
                    EXPECT_TRUE(validate(h, r.plan.tree).valid);
                    EXPECT_TRUE(pit_equal(r.circuit, {h, n, kind}, 5, 3).equal) << to_text(h);
                }
}

TEST(Synth, ColsubParseTreesAreMaps) {
    for (auto& h : corpus())
        EXPECT_EQ(parse_tree_count(synth_circuit(h, 2, 2, PolyKind::colsub).circuit), std::uint64_t{1} << h.vertex_count());
}

TEST(Synth, DisconnectedAndIsolated) {
    Graph h(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}});
    for (PolyKind kind : {PolyKind::hom, PolyKind::colsub}) {
        auto r = synth_circuit(h, 2, 2, kind);
        EXPECT_TRUE(r.plan.disconnected);
        EXPECT_FALSE(r.plan.warnings.empty());
        EXPECT_EQ(expand(r.circuit), brute_polynomial({h, 2, kind}));
    }
    auto e = synth_circuit(Graph(2), 3, 1, PolyKind::hom);
    EXPECT_EQ(expand(e.circuit), SparsePolynomial::constant(9));
}

TEST(Synth, Deterministic) {
    auto a = synth_circuit(gen::cycle(6), 2, 2, PolyKind::colsub);
    auto b = synth_circuit(gen::cycle(6), 2, 2, PolyKind::colsub);
    EXPECT_TRUE(a.circuit == b.circuit);
}

TEST(Synth, Errors) {
    EXPECT_THROW(synth_circuit(gen::clique(3), 0, 1, PolyKind::hom), DomainError);
    EXPECT_THROW(synth_circuit(gen::clique(3), 2, 0, PolyKind::hom), DomainError);
    EXPECT_THROW(synth_circuit(gen::clique(4), 8, 1, PolyKind::hom, 100), CapacityError);
}

TEST(SynthAbp, PathHom) {
    auto r = synth_abp(gen::path(4), 2, 3, PolyKind::hom);
    EXPECT_EQ(r.length, 3);
    EXPECT_EQ(r.abp.length(), 3);
    auto c = abp_to_circuit(r.abp);
    EXPECT_TRUE(metrics(c).skew);
    EXPECT_TRUE(pit_equal(c, {gen::path(4), 2, PolyKind::hom}, 20, 0).equal);
}

TEST(SynthAbp, CorpusEquality) {
    for (auto& h : {gen::path(4), gen::cycle(4), gen::star(3), gen::clique(3), pendant_cycle_graph(), Graph(4, {{1, 2}})})
        for (PolyKind kind : {PolyKind::hom, PolyKind::colsub}) {
            int delta = std::max<int>(1, static_cast<int>(h.edge_count()));
            auto r = synth_abp(h, 2, delta, kind);
            auto c = abp_to_circuit(r.abp);
            EXPECT_TRUE(r.abp.monotone());
            EXPECT_TRUE(r.abp.violations().empty());
            EXPECT_LE(r.abp.length(), delta);
            EXPECT_EQ(expand(c), brute_polynomial({h, 2, kind})) << to_text(h);
        }
}

TEST(SynthAbp, DegreeError) {
    try {
        synth_abp(gen::clique(3), 2, 2, PolyKind::colsub);
        FAIL();
    } catch (const DegreeError& e) {
        EXPECT_NE(std::string(e.what()).find("length 2 < degree 3"), std::string::npos);
    }
}
