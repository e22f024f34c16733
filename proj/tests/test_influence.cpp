#include <doctest.h>

#include <algorithm>
#include <vector>

#include "retnet/errors.hpp"
#include "retnet/influence.hpp"
#include "retnet/rng.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace retnet;
using retnet::test::make_partition;
using retnet::test::make_retweet_graph;

TEST_CASE("community influence splits into internal and external parts") {
    // community {a,b} with internal weight 3 and one outgoing edge of 1
    auto g = make_retweet_graph({{"a", "b", 2.0}, {"b", "a", 1.0}, {"a", "c", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 1}});
    auto influences = community_influence(g, p);
    REQUIRE(influences.size() == 2);
    CHECK(influences[0].internal == doctest::Approx(1.5));
    CHECK(influences[0].external == doctest::Approx(0.5));
    CHECK(influences[0].total == doctest::Approx(2.0));
    CHECK(influences[0].size == 2);
}

TEST_CASE("communities without outgoing inter-community edges have zero I_ext") {
    auto g = make_retweet_graph({{"a", "b", 2.0}, {"c", "d", 4.0}, {"a", "c", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    auto influences = community_influence(g, p);
    CHECK(influences[1].external == 0.0);
    CHECK(influences[0].external == doctest::Approx(0.5));
}

TEST_CASE("a single community covering the graph has I = I_int") {
    auto g = make_retweet_graph({{"a", "b", 2.0}, {"b", "c", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 0}});
    auto influences = community_influence(g, p);
    REQUIRE(influences.size() == 1);
    CHECK(influences[0].external == 0.0);
    CHECK(influences[0].total == doctest::Approx(influences[0].internal));
    CHECK(influences[0].total == doctest::Approx(1.0));
}

TEST_CASE("W rows partition the total edge weight and I = I_int + I_ext") {
    SplitMix64 rng(81);
    RetweetGraphBuilder builder;
    for (int i = 0; i < 200; ++i) {
        auto a = "n" + std::to_string(rng.next_below(25));
        auto b = "n" + std::to_string(rng.next_below(25));
        if (a == b) continue;
        builder.add_edge(a, b, 0.2 + rng.next_double());
    }
    auto g = builder.build(-1);
    std::vector<std::pair<UserId, int>> assignment;
    for (const auto& node : g.nodes())
        assignment.emplace_back(node, static_cast<int>(rng.next_below(4)));
    Partition p(-1, assignment);

    auto influences = community_influence(g, p);
    double total_w = 0.0;
    for (const auto& inf : influences) {
        for (const auto& [target, w] : inf.weight_to) total_w += w;
        CHECK(std::abs(inf.total - inf.internal - inf.external) <= 1e-9);
    }
    CHECK(total_w == doctest::Approx(g.total_weight()).epsilon(1e-12));
}

TEST_CASE("meta network normalizes edge weights by source size") {
    auto g = make_retweet_graph(
        {{"a", "c", 3.0}, {"b", "c", 1.0}, {"a", "b", 1.0}, {"c", "d", 2.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    auto meta = meta_network(g, p, 0);
    REQUIRE(meta.nodes.size() == 2);
    REQUIRE(meta.edges.size() == 1);  // nothing flows C1 -> C0
    // C0 -> C1 carries (3+1)/|C0| = 2
    CHECK(meta.edges[0].src == 0);
    CHECK(meta.edges[0].dst == 1);
    CHECK(meta.edges[0].weight == doctest::Approx(2.0));
    CHECK(meta.nodes[0].internal_influence == doctest::Approx(0.5));
    CHECK(meta.nodes[1].internal_influence == doctest::Approx(1.0));
}

TEST_CASE("min_size larger than every community folds everything into Small") {
    auto g = make_retweet_graph({{"a", "b", 1.0}, {"c", "d", 1.0}, {"a", "c", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    auto meta = meta_network(g, p, 10);
    REQUIRE(meta.nodes.size() == 1);
    CHECK(meta.nodes[0].community_id == kSmallNode);
    CHECK(meta.nodes[0].size == 4);
    CHECK(meta.edges.empty());
}

TEST_CASE("no inter-community edges give an edgeless meta network") {
    auto g = make_retweet_graph({{"a", "b", 1.0}, {"c", "d", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
    auto meta = meta_network(g, p, 0);
    CHECK(meta.edges.empty());
}

TEST_CASE("super communities are the components above the edge threshold") {
    // five communities in two blocks, Fig-5 style: {0,1,2} tightly linked,
    // {3,4} tightly linked, one weak cross edge
    RetweetGraphBuilder builder;
    auto clique = [&](const char* u, const char* v) { builder.add_edge(u, v, 8.0); };
    // communities: c0={a0,a1}, c1={b0,b1}, c2={c0,c1}, c3={d0,d1}, c4={e0,e1}
    builder.add_edge("a0", "a1", 4.0);
    builder.add_edge("b0", "b1", 4.0);
    builder.add_edge("c0", "c1", 4.0);
    builder.add_edge("d0", "d1", 4.0);
    builder.add_edge("e0", "e1", 4.0);
    clique("a0", "b0");
    clique("b0", "c0");
    clique("a1", "c1");
    clique("d0", "e0");
    builder.add_edge("a0", "d0", 0.5);  // weak cross-block link
    auto g = builder.build(-1);
    auto p = make_partition({{"a0", 0}, {"a1", 0}, {"b0", 1}, {"b1", 1},
                             {"c0", 2}, {"c1", 2}, {"d0", 3}, {"d1", 3},
                             {"e0", 4}, {"e1", 4}});
    auto meta = meta_network(g, p, 0);
    auto grouping = super_communities(meta, 1.0);  // drops the 0.25 cross edge
    REQUIRE(grouping.size() == 5);
    CHECK(grouping.at(0) == grouping.at(1));
    CHECK(grouping.at(1) == grouping.at(2));
    CHECK(grouping.at(3) == grouping.at(4));
    CHECK(grouping.at(0) != grouping.at(3));

    // threshold 0 keeps the weak link: one super-community
    auto all = super_communities(meta, 0.0);
    CHECK(all.at(0) == all.at(4));
}

TEST_CASE("the Small node never joins a super community") {
    auto g = make_retweet_graph(
        {{"a", "b", 5.0}, {"b", "a", 5.0}, {"a", "x", 5.0}, {"x", "b", 5.0}},
        {});
    // x is a singleton community, folded into Small at min_size 2
    auto p = make_partition({{"a", 0}, {"b", 0}, {"x", 1}});
    auto meta = meta_network(g, p, 2);
    auto grouping = super_communities(meta, 0.0);
    CHECK(grouping.size() == 1);
    CHECK(grouping.count(0) == 1);
}

TEST_CASE("median meta edge weight") {
    MetaNetwork m;
    CHECK(median_meta_edge_weight(m) == 0.0);
    m.edges = {{0, 1, 3.0}, {1, 0, 1.0}, {0, 2, 2.0}};
    CHECK(median_meta_edge_weight(m) == doctest::Approx(2.0));
    m.edges.push_back({2, 0, 10.0});
    CHECK(median_meta_edge_weight(m) == doctest::Approx(2.5));
}

TEST_CASE("total influence sums member out-degrees without normalization") {
    auto g = make_retweet_graph(
        {{"a", "b", 5.0}, {"c", "d", 2.0}, {"d", "c", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});

    std::map<int, int> singleton{{0, 0}};
    auto totals = total_influence(g, p, singleton);
    REQUIRE(totals.size() == 1);
    CHECK(totals[0].size == 2);
    CHECK(totals[0].total == doctest::Approx(5.0));

    std::map<int, int> both{{0, 0}, {1, 0}};
    auto merged = total_influence(g, p, both);
    REQUIRE(merged.size() == 1);
    CHECK(merged[0].total == doctest::Approx(8.0));  // totals add up
    CHECK(merged[0].size == 4);
}

TEST_CASE("h-index closed form") {
    CHECK(h_index({5, 4, 3, 2, 1}) == 3);
    CHECK(h_index({}) == 0);
    CHECK(h_index({10, 10}) == 2);
    CHECK(h_index({1, 1, 1, 1}) == 1);
    CHECK(h_index({100}) == 1);
}

TEST_CASE("h-index is permutation invariant and matches the oracle") {
    SplitMix64 rng(82);
    for (int round = 0; round < 500; ++round) {
        std::vector<std::int64_t> counts;
        const std::size_t posts = rng.next_below(12);
        for (std::size_t i = 0; i < posts; ++i)
            counts.push_back(static_cast<std::int64_t>(rng.next_below(15)) + 1);
        const int expected = oracle::brute_h_index(counts);
        CHECK(h_index(counts) == expected);
        retnet::shuffle(counts, rng);
        CHECK(h_index(counts) == expected);
    }
}

TEST_CASE("adding a retweet never lowers the h-index") {
    SplitMix64 rng(83);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::int64_t> counts;
        const std::size_t posts = 1 + rng.next_below(10);
        for (std::size_t i = 0; i < posts; ++i)
            counts.push_back(static_cast<std::int64_t>(rng.next_below(12)) + 1);
        const int before = h_index(counts);
        auto bumped = counts;
        bumped[rng.next_below(bumped.size())] += 1;
        CHECK(h_index(bumped) >= before);
        auto extended = counts;
        extended.push_back(1);  // brand-new post with one retweet
        CHECK(h_index(extended) >= before);
    }
}

TEST_CASE("retweet h-index over an event stream") {
    std::vector<RetweetEvent> events;
    auto add = [&](const char* author, const char* rt, const char* post,
                   std::int64_t t) {
        events.push_back(RetweetEvent{author, rt, post, t});
    };
    // alice: p1 retweeted 3x, p2 retweeted 1x -> h = 1? no: [3,1] -> min(3,1)=1, min(1,2)=1 -> h=1
    add("alice", "u1", "p1", 10);
    add("alice", "u2", "p1", 20);
    add("alice", "u3", "p1", 30);
    add("alice", "u1", "p2", 40);
    // bob: two posts with 2 retweets each -> h = 2
    add("bob", "u1", "q1", 15);
    add("bob", "u2", "q1", 25);
    add("bob", "u1", "q2", 35);
    add("bob", "u3", "q2", 45);

    auto records = retweet_hindex(events);
    REQUIRE(records.size() == 2);
    CHECK(records[0].user == "bob");
    CHECK(records[0].h == 2);
    CHECK(records[0].h_rank == 1);
    CHECK(records[0].out_degree == 3);
    CHECK(records[1].user == "alice");
    CHECK(records[1].h == 1);
    CHECK(records[1].h_rank == 2);
    CHECK(records[1].out_degree == 3);

    // restrict to the window (20, 45]: alice keeps p1 x1... p1 at 30, p2 at 40
    auto windowed = retweet_hindex(events, TimeInterval{20, 45});
    REQUIRE(windowed.size() == 2);
    // alice: posts p1 (1 rt), p2 (1 rt) -> h = 1; bob: q1 (1), q2 (2) -> h = 1...
    // bob q1 at 25, q2 at 35 and 45 -> [2,1] -> h = 1
    for (const auto& rec : windowed) CHECK(rec.h == 1);
}

TEST_CASE("h-rank ties break by out-degree then user id") {
    std::vector<RetweetEvent> events;
    auto add = [&](const char* author, const char* rt, const char* post) {
        events.push_back(RetweetEvent{author, rt, post, 0});
    };
    // all three authors get h = 1; carol reaches 2 distinct retweeters
    add("alice", "u1", "a-p1");
    add("carol", "u1", "c-p1");
    add("carol", "u2", "c-p1");
    add("bob", "u1", "b-p1");
    auto records = retweet_hindex(events);
    REQUIRE(records.size() == 3);
    CHECK(records[0].user == "carol");  // higher out-degree wins the tie
    CHECK(records[1].user == "alice");  // then lexicographic order
    CHECK(records[2].user == "bob");
    CHECK(records[0].h_rank == 1);
    CHECK(records[1].h_rank == 2);
    CHECK(records[2].h_rank == 3);
}

TEST_CASE("grouping referencing an unknown community is rejected") {
    auto g = make_retweet_graph({{"a", "b", 1.0}});
    auto p = make_partition({{"a", 0}, {"b", 0}});
    std::map<int, int> bogus{{5, 0}};
    CHECK_THROWS_AS(total_influence(g, p, bogus), ValidationError);
}
