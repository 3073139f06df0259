#include <gtest/gtest.h>

#include "homsynth/widths.hpp"

using namespace homsynth;

namespace {

std::vector<Graph> small_graphs() {
    return {gen::clique(2), gen::path(3),  gen::path(4),  gen::star(3),    gen::clique(3), gen::cycle(4),
            gen::cycle(5),  gen::cycle(6), gen::clique(4), gen::grid(2, 3), gen::dary(2, 3), Graph(4, {{1, 2}, {3, 4}})};
}

void expect_certificate(const Graph& h, const WidthCertificate& c) {
    if (c.is_path()) {
        EXPECT_LE(c.path().length(), c.delta);
        EXPECT_EQ(c.path().width(), c.value);
    } else {
        EXPECT_LE(c.tree().height(), c.delta);
        EXPECT_EQ(c.tree().width(), c.value);
    }
    if (c.parameter == WidthParameter::tw_delta || c.parameter == WidthParameter::pw_delta) {
        auto t = c.is_path() ? c.path().as_tree() : c.tree();
        EXPECT_TRUE(validate(h, t).valid) << to_text(h);
    }
}

}  // namespace

TEST(TreeWidth, SpecValues) {
    EXPECT_EQ(tw_delta(gen::clique(3), 1).value, 2);
    EXPECT_EQ(tw_delta(gen::star(3), 2).value, 1);
    EXPECT_EQ(tw_delta(gen::star(3), 1).value, 3);
    EXPECT_EQ(tw_delta(gen::cycle(4), 2).value, 2);
    auto p = tw_delta(gen::path(3), 2, true);
    EXPECT_EQ(p.value, 0);
    EXPECT_EQ(p.parameter, WidthParameter::ptw_delta);
}

TEST(TreeWidth, CertificatesAreValid) {
    for (auto& h : small_graphs())
        for (int d = 1; d <= 4; ++d) expect_certificate(h, tw_delta(h, d));
}

TEST(TreeWidth, OneIsVertexCountMinusOne) {
    for (auto& h : small_graphs()) EXPECT_EQ(tw_delta(h, 1).value, h.vertex_count() - 1);
}

TEST(TreeWidth, NonincreasingInDelta) {
    for (auto& h : small_graphs())
        for (int d = 1; d < 6; ++d) EXPECT_LE(tw_delta(h, d + 1).value, tw_delta(h, d).value) << to_text(h);
}

TEST(TreeWidth, TwoAtMostVertexCover) {
    for (auto& h : small_graphs()) EXPECT_LE(tw_delta(h, 2).value, vertex_cover_number(h)) << to_text(h);
}

TEST(TreeWidth, TwoAtMostIntegrityMinusOne) {
    for (auto& h : small_graphs())
        if (h.is_connected()) EXPECT_LE(tw_delta(h, 2).value, vertex_integrity(h) - 1) << to_text(h);
}

TEST(TreeWidth, TwoBelowIntegrityMinusOneOnP4AndC6) {
    // Child bags need only the separator vertices adjacent to their component.
    EXPECT_EQ(tw_delta(gen::path(4), 2).value, 1);
    EXPECT_EQ(vertex_integrity(gen::path(4)) - 1, 2);
    EXPECT_EQ(brute_force_width(gen::path(4), 2, DecompositionMode::tree), 1);
    EXPECT_EQ(tw_delta(gen::cycle(6), 2).value, 2);
    EXPECT_EQ(vertex_integrity(gen::cycle(6)) - 1, 3);
    EXPECT_EQ(brute_force_width(gen::cycle(6), 2, DecompositionMode::tree), 2);
}

TEST(TreeWidth, MatchesBruteForce) {
    for (auto& h : small_graphs()) {
        if (h.vertex_count() > kBruteForceMaxVertices) continue;
        for (int d = 1; d <= 4; ++d) EXPECT_EQ(tw_delta(h, d).value, brute_force_width(h, d, DecompositionMode::tree)) << to_text(h) << " d=" << d;
    }
}

TEST(TreeWidth, LargeDeltaIsClassicTreewidth) {
    EXPECT_EQ(tw_delta(gen::cycle(6), 6).value, 2);
    EXPECT_EQ(tw_delta(gen::path(6), 6).value, 1);
    EXPECT_EQ(tw_delta(gen::clique(5), 5).value, 4);
    EXPECT_EQ(tw_delta(gen::grid(2, 3), 6).value, 2);
}

TEST(TreeWidth, FullDaryTrees) {
    for (auto [d, delta] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
        Graph t = gen::dary(d, delta);
        EXPECT_EQ(tw_delta(t, delta).value, 1);
        EXPECT_GE(tw_delta(t, delta - 1).value, d - 1);
    }
}

TEST(TreeWidth, DisconnectedAndEmpty) {
    Graph two_triangles(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
    auto c = tw_delta(two_triangles, 2);
    EXPECT_EQ(c.value, 2);
    expect_certificate(two_triangles, c);
    EXPECT_EQ(tw_delta(Graph(0), 1).value, -1);
}

TEST(TreeWidth, RejectsBadInput) {
    EXPECT_THROW(tw_delta(gen::clique(3), 0), DomainError);
    EXPECT_THROW(tw_delta(gen::path(17), 3), CapacityError);
}

TEST(PathWidth, SpecValues) {
    EXPECT_EQ(pw_delta(gen::clique(3), 1).value, 2);
    EXPECT_EQ(pw_delta(gen::path(4), 2).value, 2);
    EXPECT_EQ(pw_delta(gen::cycle(4), 4).value, 2);
    EXPECT_EQ(brute_force_width(gen::path(4), 2, DecompositionMode::path), 2);
}

TEST(PathWidth, MatchesBruteForce) {
    for (auto& h : small_graphs()) {
        if (h.vertex_count() > kBruteForceMaxVertices) continue;
        for (int d = 1; d <= 4; ++d) {
            auto c = pw_delta(h, d);
            expect_certificate(h, c);
            EXPECT_EQ(c.value, brute_force_width(h, d, DecompositionMode::path)) << to_text(h) << " d=" << d;
        }
    }
}

TEST(PathWidth, NonincreasingAndAboveTreeWidth) {
    for (auto& h : small_graphs())
        for (int d = 1; d < 5; ++d) {
            EXPECT_LE(pw_delta(h, d + 1).value, pw_delta(h, d).value);
            EXPECT_GE(pw_delta(h, d).value, tw_delta(h, d).value);
        }
}

TEST(PathWidth, Pruned) {
    auto c = pw_delta(gen::path(4), 1, true);
    EXPECT_EQ(c.parameter, WidthParameter::ppw_delta);
    EXPECT_EQ(c.value, 1);
}
