#include <gtest/gtest.h>

#include "homsynth/analysis.hpp"
#include "homsynth/decomposition.hpp"

using namespace homsynth;

namespace {

RootedTreeDecomposition star_of_bags(Bag root, std::vector<Bag> children) {
    auto t = RootedTreeDecomposition::single(std::move(root));
    for (auto& b : children) t.add_node(0, b);
    return t;
}

RootedTreeDecomposition chain(std::vector<Bag> bags) {
    auto t = RootedTreeDecomposition::single(bags[0]);
    for (std::size_t i = 1; i < bags.size(); ++i) t.add_node(static_cast<int>(i) - 1, bags[i]);
    return t;
}

}  // namespace

TEST(Validate, SingleBagTriangle) {
    auto r = validate(gen::clique(3), RootedTreeDecomposition::single({1, 2, 3}));
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.height, 1);
    EXPECT_EQ(r.width, 2);
}

TEST(Validate, UncoveredEdges) {
    auto r = validate(gen::cycle(4), chain({{1, 2}, {3, 4}}));
    EXPECT_FALSE(r.valid);
    EXPECT_GE(r.violations.size(), 2u);
}

TEST(Validate, PendantCycleCore) {
    auto t = star_of_bags({2, 3, 4}, {{1, 2, 4}, {2, 3}, {3, 4}});
    auto r = validate(gen::cycle(4), t);
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.height, 2);
    EXPECT_EQ(r.width, 2);
}

TEST(Validate, DisconnectedOccurrence) {
    auto t = chain({{1, 2}, {2, 3}, {1, 3}});
    EXPECT_FALSE(validate(gen::clique(3), t).valid);
}

TEST(Validate, MissingVertex) {
    EXPECT_FALSE(validate(Graph(3, {{1, 2}}), RootedTreeDecomposition::single({1, 2})).valid);
}

TEST(EdgeRepresentation, SingleBag) {
    auto t = RootedTreeDecomposition::single({1, 2, 3});
    auto rep = choose_edge_representation(gen::clique(3), t);
    for (auto& [e, node] : rep) EXPECT_EQ(node, 0);
    EXPECT_EQ(rep.size(), 3u);
    EXPECT_EQ(rep_height(t, rep), 1);
}

TEST(EdgeRepresentation, DeepestBag) {
    auto t = chain({{1, 2, 3}, {1, 3, 4}});
    auto rep = choose_edge_representation(gen::cycle(4), t);
    EXPECT_EQ(rep.at({1, 2}), 0);
    EXPECT_EQ(rep.at({2, 3}), 0);
    EXPECT_EQ(rep.at({3, 4}), 1);
    EXPECT_EQ(rep.at({1, 4}), 1);
}

TEST(RepHeight, ChainWithOneEdgePerBag) {
    auto t = chain({{1, 2}, {2, 3}, {3, 4}});
    EdgeRepresentation rep{{{1, 2}, 0}, {{2, 3}, 1}, {{3, 4}, 2}};
    EXPECT_EQ(rep_height(t, rep), 2);
    EXPECT_LE(rep_height(t, rep), t.height());
}

TEST(AttachPendants, PendantCycle) {
    Graph h = pendant_cycle_graph();
    auto core = star_of_bags({2, 3, 4}, {{1, 2, 4}, {2, 3}, {3, 4}});
    auto a = attach_pendants(h, core);
    EXPECT_TRUE(validate(h, a.tree).valid);
    std::vector<Bag> bags;
    for (int i = 0; i < a.tree.size(); ++i) bags.push_back(a.tree.bag(i));
    EXPECT_NE(std::find(bags.begin(), bags.end(), Bag{4, 5}), bags.end());
    EXPECT_NE(std::find(bags.begin(), bags.end(), Bag{2, 6}), bags.end());
    EXPECT_EQ(a.tree.bag(a.rep.at({2, 6})), (Bag{2, 6}));
    EXPECT_EQ(a.tree.bag(a.rep.at({4, 5})), (Bag{4, 5}));
    EXPECT_EQ(rep_height(a.tree, a.rep), 2);
}

TEST(AttachPendants, PathOfThree) {
    auto a = attach_pendants(gen::path(3), RootedTreeDecomposition::single({2}));
    EXPECT_EQ(a.tree.size(), 3);
    EXPECT_EQ(a.tree.bag(a.tree.root()), Bag{2});
    EXPECT_TRUE(validate(gen::path(3), a.tree).valid);
    EXPECT_EQ(rep_height(a.tree, a.rep), 1);
}

TEST(AttachPendants, NoPendantsIsNoOp) {
    auto core = RootedTreeDecomposition::single({1, 2, 3, 4});
    auto a = attach_pendants(gen::cycle(4), core);
    EXPECT_EQ(a.tree.size(), 1);
    EXPECT_LE(rep_height(a.tree, a.rep), core.height());
}

TEST(AttachPendants, IsolatedAndK2Components) {
    Graph h(5, {{1, 2}, {3, 4}});
    auto a = attach_pendants(h, RootedTreeDecomposition::single({}));
    EXPECT_TRUE(validate(h, a.tree).valid);
    EXPECT_EQ(a.rep.size(), 2u);
}

TEST(Tree, HeightConventions) {
    EXPECT_EQ(RootedTreeDecomposition::single({1}).height(), 1);
    EXPECT_EQ(RootedTreeDecomposition::single({}).width(), -1);
    EXPECT_EQ(chain({{1}, {1}, {1}}).height(), 3);
    EXPECT_EQ(star_of_bags({1}, {{1}, {1}}).height(), 2);
}

TEST(Tree, RerootKeepsBags) {
    auto t = chain({{1, 2}, {2, 3}, {3, 4}});
    auto r = t.rerooted(1);
    EXPECT_EQ(r.root(), 1);
    EXPECT_EQ(r.height(), 2);
    EXPECT_TRUE(validate(gen::path(4), r).valid);
}

TEST(PathDecomposition, IntervalRoundTrip) {
    PathDecomposition p{{{1, 2}, {2, 3}, {3, 4}}};
    auto iv = p.intervals(4);
    ASSERT_TRUE(iv.has_value());
    EXPECT_EQ(PathDecomposition::from_intervals(*iv, p.length()).bags, p.bags);
    EXPECT_EQ(p.width(), 1);
    EXPECT_TRUE(validate(gen::path(4), p).valid);
}

TEST(PathDecomposition, BrokenIntervalRejected) {
    PathDecomposition p{{{1, 2}, {2, 3}, {1, 3}}};
    EXPECT_FALSE(p.intervals(3).has_value());
}
