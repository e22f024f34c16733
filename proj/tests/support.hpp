#pragma once

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "retnet/graph.hpp"
#include "retnet/partition.hpp"
#include "retnet/rng.hpp"

namespace retnet::test {

inline Partition make_partition(
    std::initializer_list<std::pair<const char*, int>> assignment,
    int snapshot_id = -1) {
    std::vector<std::pair<UserId, int>> pairs;
    for (const auto& [node, label] : assignment) pairs.emplace_back(node, label);
    return Partition(snapshot_id, std::move(pairs));
}

inline UndirectedGraph make_undirected(
    std::initializer_list<std::tuple<const char*, const char*, double>> edges,
    std::initializer_list<const char*> isolated = {}) {
    // route through the directed builder to reuse node layout and validation
    RetweetGraphBuilder builder;
    for (const auto& [u, v, w] : edges) builder.add_edge(u, v, w);
    for (const char* u : isolated) builder.add_node(u);
    return to_undirected(builder.build(-1));
}

inline RetweetGraph make_retweet_graph(
    std::initializer_list<std::tuple<const char*, const char*, double>> edges,
    std::initializer_list<const char*> isolated = {}, int snapshot_id = -1) {
    RetweetGraphBuilder builder;
    for (const auto& [src, dst, w] : edges) builder.add_edge(src, dst, w);
    for (const char* u : isolated) builder.add_node(u);
    return builder.build(snapshot_id);
}

inline std::string data_path(const std::string& name) {
    return std::string(RETNET_TEST_DATA_DIR) + "/" + name;
}

// Random partition over node names "u0".."u{n-1}" with labels < max_labels.
inline Partition random_partition(SplitMix64& rng, std::size_t n,
                                  std::size_t max_labels, int snapshot_id = -1) {
    std::vector<std::pair<UserId, int>> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pairs.emplace_back("u" + std::to_string(i),
                           static_cast<int>(rng.next_below(max_labels)));
    return Partition(snapshot_id, std::move(pairs));
}

// Random partition over a random subset of "u0".."u{universe-1}".
inline Partition random_subset_partition(SplitMix64& rng, std::size_t universe,
                                         double keep_probability,
                                         std::size_t max_labels,
                                         int snapshot_id = -1) {
    std::vector<std::pair<UserId, int>> pairs;
    for (std::size_t i = 0; i < universe; ++i) {
        if (rng.next_double() < keep_probability)
            pairs.emplace_back("u" + std::to_string(i),
                               static_cast<int>(rng.next_below(max_labels)));
    }
    if (pairs.empty())
        pairs.emplace_back("u0", 0);  // keep partitions non-empty
    return Partition(snapshot_id, std::move(pairs));
}

}  // namespace retnet::test
