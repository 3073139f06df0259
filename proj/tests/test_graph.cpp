#include <gtest/gtest.h>

#include "homsynth/graph.hpp"

using namespace homsynth;

TEST(ParseGraph, SlashSeparatedTriangle) {
    Graph g = parse_graph("p 3 / e 1 2 / e 2 3 / e 1 3");
    EXPECT_EQ(g.vertex_count(), 3);
    EXPECT_EQ(g.edge_count(), 3u);
    EXPECT_TRUE(g.has_edge(3, 1));
}

TEST(ParseGraph, MultiLineWithComments) {
    Graph g = parse_graph("# a path\np 4\ne 1 2\ne 3 2\n\ne 3 4\n");
    EXPECT_EQ(g.vertex_count(), 4);
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{1, 2}, {2, 3}, {3, 4}}));
}

TEST(ParseGraph, DaryGenerator) {
    Graph g = parse_graph("dary:2:3");
    EXPECT_EQ(g.vertex_count(), 7);
    EXPECT_EQ(g.edge_count(), 6u);
    EXPECT_TRUE(g.is_connected());
}

TEST(ParseGraph, GeneratorSizes) {
    EXPECT_EQ(parse_graph("path:5").edge_count(), 4u);
    EXPECT_EQ(parse_graph("cycle:6").edge_count(), 6u);
    EXPECT_EQ(parse_graph("clique:4").edge_count(), 6u);
    EXPECT_EQ(parse_graph("star:3").vertex_count(), 4);
    EXPECT_EQ(parse_graph("grid:2:3").edge_count(), 7u);
    for (int d = 2; d <= 3; ++d)
        for (int h = 1; h <= 4; ++h) {
            Graph t = gen::dary(d, h);
            int expected = 1;
            for (int i = 1, p = 1; i < h; ++i) expected += (p *= d);
            EXPECT_EQ(t.vertex_count(), expected);
            EXPECT_EQ(static_cast<int>(t.edge_count()), expected - 1);
        }
}

TEST(ParseGraph, Errors) {
    EXPECT_THROW(parse_graph("e 1 1"), FormatError);
    EXPECT_THROW(parse_graph("p 2 / e 1 2 / e 2 1"), FormatError);
    EXPECT_THROW(parse_graph("p 2 / e 1 3"), FormatError);
    EXPECT_THROW(parse_graph("p 2 / x 1 2"), FormatError);
    EXPECT_THROW(parse_graph("dary:2"), FormatError);
    try {
        parse_graph("p 3\ne 1 2\ne 2 2\n");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
}

TEST(ParseGraph, TextRoundTrip) {
    Graph g = gen::dary(3, 3);
    EXPECT_EQ(parse_graph(to_text(g)).edges(), g.edges());
}

TEST(Prune, PathKeepsMiddle) {
    PrunedGraph p = prune(gen::path(3));
    EXPECT_EQ(p.graph.vertex_count(), 1);
    EXPECT_EQ(p.graph.edge_count(), 0u);
    EXPECT_EQ(p.to_original(1), 2);
    EXPECT_EQ(p.to_pruned(1), 0);
}

TEST(Prune, CycleUnchanged) {
    PrunedGraph p = prune(gen::cycle(4));
    EXPECT_EQ(p.graph.edges(), gen::cycle(4).edges());
}

TEST(Prune, BinaryTreeLosesLeaves) {
    PrunedGraph p = prune(gen::dary(2, 3));
    EXPECT_EQ(p.graph.vertex_count(), 3);
    EXPECT_EQ(p.graph.edges(), gen::dary(2, 2).edges());
}

TEST(Prune, OneShotNotIterated) {
    Graph p4 = gen::path(4);
    EXPECT_EQ(prune(p4).graph.vertex_count(), 2);
    EXPECT_EQ(prune(p4).graph.edge_count(), 1u);
    EXPECT_EQ(prune_iterated(p4).vertex_count(), 0);
}

TEST(Prune, IdempotentAtMinDegreeTwo) {
    for (const Graph& g : {gen::cycle(5), gen::clique(4), gen::grid(3, 3)}) {
        Graph once = prune(g).graph;
        if (once.vertex_count() > 0 && once.min_degree() >= 2) {
            EXPECT_EQ(prune(once).graph.edges(), once.edges());
        }
    }
}

TEST(Invariants, VertexIntegrity) {
    EXPECT_EQ(vertex_integrity(gen::cycle(4)), 3);
    EXPECT_EQ(vertex_integrity(gen::clique(3)), 3);
    EXPECT_EQ(vertex_integrity(gen::dary(3, 3)), 4);
}

TEST(Invariants, VertexCover) {
    EXPECT_EQ(vertex_cover_number(gen::clique(3)), 2);
    EXPECT_EQ(vertex_cover_number(gen::cycle(4)), 2);
    EXPECT_EQ(vertex_cover_number(Graph(5)), 0);
}

TEST(Invariants, Automorphisms) {
    EXPECT_EQ(automorphism_count(gen::clique(3)), 6);
    EXPECT_EQ(automorphism_count(gen::path(3)), 2);
    EXPECT_EQ(automorphism_count(gen::cycle(4)), 8);
    auto inv = invariants(gen::cycle(4));
    EXPECT_EQ(inv.vertex_cover_number, 2);
    EXPECT_EQ(inv.vertex_integrity, 3);
    EXPECT_EQ(inv.automorphism_count, 8);
}

TEST(Invariants, IntegrityAtMostCoverPlusOne) {
    std::vector<Graph> graphs{gen::path(5), gen::cycle(7), gen::star(4), gen::clique(5), gen::grid(2, 3), gen::dary(2, 3)};
    for (auto& g : graphs) {
        EXPECT_LE(vertex_integrity(g) - 1, vertex_cover_number(g)) << to_text(g);
        EXPECT_LE(vertex_integrity(g), g.vertex_count());
    }
}
