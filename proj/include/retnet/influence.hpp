#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "retnet/event.hpp"
#include "retnet/graph.hpp"
#include "retnet/partition.hpp"

namespace retnet {

// Size-normalized retweet influence of one community: I = I_int + I_ext,
// where I_int counts retweets staying inside the community and I_ext the
// retweets of its posts made by outsiders.
struct CommunityInfluence {
    int community_id = 0;
    std::size_t size = 0;
    std::vector<std::pair<int, double>> weight_to;  // W_ij by target community
    double total = 0.0;     // I
    double internal = 0.0;  // I_int
    double external = 0.0;  // I_ext
};

std::vector<CommunityInfluence> community_influence(const RetweetGraph& g,
                                                    const Partition& p);

// Pseudo-community id for the merged sub-min_size communities.
constexpr int kSmallNode = -1;

struct MetaNode {
    int community_id = 0;  // kSmallNode for the merged small communities
    std::size_t size = 0;
    double internal_influence = 0.0;
    double external_influence = 0.0;
};

struct MetaEdge {
    int src = 0;
    int dst = 0;
    double weight = 0.0;  // average external influence W_ij / |C_i|
};

struct MetaNetwork {
    std::vector<MetaNode> nodes;  // real communities ascending, Small last
    std::vector<MetaEdge> edges;  // no self-edges; positive weights only
    std::size_t min_size = 0;
};

// Communities as nodes; communities with size < min_size are merged into a
// single Small node. Edge C_i -> C_j carries W_ij / |C_i|.
MetaNetwork meta_network(const RetweetGraph& g, const Partition& p,
                         std::size_t min_size);

// Drops meta-edges below edge_threshold and groups the remaining weakly
// connected real communities; the Small node never joins a group.
// Returns community id -> super-community id (dense from 0).
std::map<int, int> super_communities(const MetaNetwork& m, double edge_threshold);

// Median of the positive meta-edge weights; 0 when there are none.
double median_meta_edge_weight(const MetaNetwork& m);

struct SuperCommunityTotal {
    int super_id = 0;
    std::size_t size = 0;   // member node count
    double total = 0.0;     // sum of members' weighted out-degrees
};

std::vector<SuperCommunityTotal> total_influence(const RetweetGraph& g,
                                                 const Partition& p,
                                                 const std::map<int, int>& grouping);

// Half-open event window (begin, end], matching the snapshot convention.
struct TimeInterval {
    std::int64_t begin = 0;
    std::int64_t end = 0;
};

struct HIndexRecord {
    UserId user;
    int h = 0;
    int h_rank = 0;             // 1-based, dense; ties broken by out-degree
                                // then lexicographic user id
    std::size_t out_degree = 0;  // distinct retweeters within the window
};

// Retweet h-index per author appearing in the (windowed) event stream:
// the largest h such that h of the author's posts each gathered at least
// h retweets. Counts are raw (undecayed) event counts per post.
std::vector<HIndexRecord> retweet_hindex(std::span<const RetweetEvent> events,
                                         std::optional<TimeInterval> window = {});

// Closed-form h from a multiset of per-post retweet counts.
int h_index(std::vector<std::int64_t> retweet_counts);

}  // namespace retnet
