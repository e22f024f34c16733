#include <doctest.h>

#include <sstream>

#include "retnet/errors.hpp"
#include "retnet/graph.hpp"
#include "retnet/partition.hpp"
#include "retnet/rng.hpp"
#include "support.hpp"

using namespace retnet;
using retnet::test::make_retweet_graph;

TEST_CASE("to_undirected sums antiparallel edge weights") {
    auto g = make_retweet_graph({{"a", "b", 2.0}, {"b", "a", 3.0}});
    auto u = to_undirected(g);
    REQUIRE(u.edge_count() == 1);
    CHECK(u.edges()[0].weight == doctest::Approx(5.0));
}

TEST_CASE("to_undirected keeps single directed edge weights") {
    auto g = make_retweet_graph({{"a", "b", 2.0}});
    auto u = to_undirected(g);
    REQUIRE(u.edge_count() == 1);
    CHECK(u.edges()[0].weight == doctest::Approx(2.0));
}

TEST_CASE("to_undirected of the empty graph is empty") {
    RetweetGraphBuilder builder;
    auto u = to_undirected(builder.build(-1));
    CHECK(u.node_count() == 0);
    CHECK(u.edge_count() == 0);
}

TEST_CASE("to_undirected preserves nodes and total weight") {
    SplitMix64 rng(5);
    RetweetGraphBuilder builder;
    for (int i = 0; i < 120; ++i) {
        auto a = "n" + std::to_string(rng.next_below(15));
        auto b = "n" + std::to_string(rng.next_below(15));
        if (a == b) continue;
        builder.add_edge(a, b, 0.25 + rng.next_double());
    }
    builder.add_node("isolated");
    auto g = builder.build(-1);
    auto u = to_undirected(g);
    CHECK(u.nodes() == g.nodes());
    CHECK(u.total_weight() == doctest::Approx(g.total_weight()).epsilon(1e-12));
    CHECK(u.has_node("isolated"));
}

TEST_CASE("converting an already-symmetric graph changes no weights") {
    SplitMix64 rng(6);
    RetweetGraphBuilder builder;
    for (int i = 0; i < 60; ++i) {
        auto a = "n" + std::to_string(rng.next_below(10));
        auto b = "n" + std::to_string(rng.next_below(10));
        if (a == b) continue;
        builder.add_edge(a, b, 0.5 + rng.next_double());
    }
    auto once = to_undirected(builder.build(-1));
    // re-feed each undirected edge as a single directed edge
    RetweetGraphBuilder again;
    for (const auto& e : once.edges())
        again.add_edge(once.node_name(e.u), once.node_name(e.v), e.weight);
    auto twice = to_undirected(again.build(-1));
    REQUIRE(twice.edge_count() == once.edge_count());
    for (std::size_t i = 0; i < once.edge_count(); ++i)
        CHECK(twice.edges()[i].weight ==
              doctest::Approx(once.edges()[i].weight).epsilon(1e-15));
}

TEST_CASE("weighted out-degree") {
    auto g = make_retweet_graph({{"a", "b", 2.0}, {"a", "c", 3.0}});
    CHECK(g.weighted_out_degree("a") == doctest::Approx(5.0));
    CHECK(g.weighted_out_degree("b") == 0.0);

    auto h = make_retweet_graph({{"a", "b", 2.0}, {"b", "a", 3.0}});
    CHECK(h.weighted_out_degree("a") == doctest::Approx(2.0));
    CHECK_THROWS_AS(h.weighted_out_degree("zz"), ValidationError);
}

TEST_CASE("builder rejects self-loops and accumulates duplicates") {
    RetweetGraphBuilder builder;
    CHECK_THROWS_AS(builder.add_edge("a", "a", 1.0), ValidationError);
    CHECK_THROWS_AS(builder.add_edge("a", "b", 0.0), ValidationError);
    builder.add_edge("a", "b", 1.0);
    builder.add_edge("a", "b", 2.5);
    auto g = builder.build(7);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.edges()[0].weight == doctest::Approx(3.5));
    CHECK(g.snapshot_id() == 7);
}

TEST_CASE("directed edge csv round-trips") {
    auto g = make_retweet_graph({{"b", "a", 1.5}, {"a", "c", 2.0}, {"c", "b", 0.125}});
    std::ostringstream out;
    g.write_edge_csv(out);
    std::istringstream in(out.str());
    auto g2 = RetweetGraph::read_edge_csv(in, g.snapshot_id());
    CHECK(g2.nodes() == g.nodes());
    REQUIRE(g2.edge_count() == g.edge_count());
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        CHECK(g2.edges()[i].src == g.edges()[i].src);
        CHECK(g2.edges()[i].dst == g.edges()[i].dst);
        CHECK(g2.edges()[i].weight == g.edges()[i].weight);  // exact round-trip
    }
}

TEST_CASE("partition canonicalizes community ids") {
    auto p = test::make_partition({{"b", 9}, {"a", 5}, {"c", 5}});
    // sorted nodes: a b c; first appearance order: a(5)->0, b(9)->1, c(5)->0
    CHECK(p.community_of("a") == 0);
    CHECK(p.community_of("b") == 1);
    CHECK(p.community_of("c") == 0);
    CHECK(p.community_count() == 2);
    CHECK(p.community_size(0) == 2);
}

TEST_CASE("partition rejects duplicate nodes") {
    CHECK_THROWS_AS(test::make_partition({{"a", 0}, {"a", 1}}), ValidationError);
}

TEST_CASE("partition csv round-trips") {
    auto p = test::make_partition({{"x", 3}, {"y", 3}, {"z", 8}}, 4);
    std::ostringstream out;
    p.write_csv(out);
    std::istringstream in(out.str());
    auto p2 = Partition::read_csv(in, 4);
    CHECK(p2 == p);
    CHECK(p2.snapshot_id() == 4);
}
