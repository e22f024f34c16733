#include "retnet/influence.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "retnet/errors.hpp"
#include "retnet/union_find.hpp"

namespace retnet {
namespace {

void require_cover(const RetweetGraph& g, const Partition& p) {
    if (g.nodes() != p.nodes())
        throw ValidationError("partition does not cover exactly the graph's nodes");
}

// W_ij sums under an arbitrary community -> group relabeling.
std::map<std::pair<int, int>, double> group_weights(const RetweetGraph& g,
                                                    const Partition& p,
                                                    const std::vector<int>& group_of) {
    std::map<std::pair<int, int>, double> w;
    for (const auto& e : g.edges()) {
        const int gi = group_of[static_cast<std::size_t>(
            p.label_at(static_cast<std::size_t>(e.src)))];
        const int gj = group_of[static_cast<std::size_t>(
            p.label_at(static_cast<std::size_t>(e.dst)))];
        w[{gi, gj}] += e.weight;
    }
    return w;
}

}  // namespace

std::vector<CommunityInfluence> community_influence(const RetweetGraph& g,
                                                    const Partition& p) {
    require_cover(g, p);
    const std::size_t n_comms = p.community_count();
    std::vector<int> identity(n_comms);
    for (std::size_t i = 0; i < n_comms; ++i) identity[i] = static_cast<int>(i);
    const auto weights = group_weights(g, p, identity);

    std::vector<CommunityInfluence> result(n_comms);
    for (std::size_t i = 0; i < n_comms; ++i) {
        result[i].community_id = static_cast<int>(i);
        result[i].size = p.community_size(static_cast<int>(i));
    }
    for (const auto& [key, w] : weights) {
        auto& inf = result[static_cast<std::size_t>(key.first)];
        inf.weight_to.emplace_back(key.second, w);
        const double share = w / static_cast<double>(inf.size);
        if (key.first == key.second)
            inf.internal += share;
        else
            inf.external += share;
    }
    for (auto& inf : result) inf.total = inf.internal + inf.external;
    return result;
}

MetaNetwork meta_network(const RetweetGraph& g, const Partition& p,
                         std::size_t min_size) {
    require_cover(g, p);
    const std::size_t n_comms = p.community_count();

    std::vector<int> group_of(n_comms);
    std::vector<std::size_t> group_size;
    std::vector<int> group_community;  // community id, or kSmallNode
    std::size_t small_size = 0;
    for (std::size_t c = 0; c < n_comms; ++c) {
        if (p.community_size(static_cast<int>(c)) < min_size) {
            group_of[c] = -1;  // placeholder, assigned after real groups
            small_size += p.community_size(static_cast<int>(c));
        } else {
            group_of[c] = static_cast<int>(group_size.size());
            group_size.push_back(p.community_size(static_cast<int>(c)));
            group_community.push_back(static_cast<int>(c));
        }
    }
    const bool has_small = small_size > 0;
    int small_group = -1;
    if (has_small) {
        small_group = static_cast<int>(group_size.size());
        group_size.push_back(small_size);
        group_community.push_back(kSmallNode);
        for (std::size_t c = 0; c < n_comms; ++c)
            if (group_of[c] < 0) group_of[c] = small_group;
    }

    const auto weights = group_weights(g, p, group_of);

    MetaNetwork meta;
    meta.min_size = min_size;
    meta.nodes.resize(group_size.size());
    for (std::size_t i = 0; i < group_size.size(); ++i) {
        meta.nodes[i].community_id = group_community[i];
        meta.nodes[i].size = group_size[i];
    }
    for (const auto& [key, w] : weights) {
        auto& node = meta.nodes[static_cast<std::size_t>(key.first)];
        const double share = w / static_cast<double>(node.size);
        if (key.first == key.second) {
            node.internal_influence += share;
        } else {
            node.external_influence += share;
            if (share > 0.0)
                meta.edges.push_back({key.first, key.second, share});
        }
    }
    return meta;
}

std::map<int, int> super_communities(const MetaNetwork& m, double edge_threshold) {
    if (edge_threshold < 0.0)
        throw ValidationError("edge threshold must be >= 0");
    DisjointSets dsu(m.nodes.size());
    for (const auto& e : m.edges) {
        if (e.weight < edge_threshold) continue;
        const auto& src = m.nodes[static_cast<std::size_t>(e.src)];
        const auto& dst = m.nodes[static_cast<std::size_t>(e.dst)];
        if (src.community_id == kSmallNode || dst.community_id == kSmallNode)
            continue;  // Small never joins a super-community
        dsu.unite(static_cast<std::size_t>(e.src), static_cast<std::size_t>(e.dst));
    }
    std::map<int, int> grouping;
    std::unordered_map<std::size_t, int> super_of_root;
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        if (m.nodes[i].community_id == kSmallNode) continue;
        const std::size_t root = dsu.find(i);
        auto it = super_of_root.emplace(root, static_cast<int>(super_of_root.size()))
                      .first;
        grouping[m.nodes[i].community_id] = it->second;
    }
    return grouping;
}

double median_meta_edge_weight(const MetaNetwork& m) {
    std::vector<double> weights;
    weights.reserve(m.edges.size());
    for (const auto& e : m.edges)
        if (e.weight > 0.0) weights.push_back(e.weight);
    if (weights.empty()) return 0.0;
    std::sort(weights.begin(), weights.end());
    const std::size_t mid = weights.size() / 2;
    if (weights.size() % 2 == 1) return weights[mid];
    return 0.5 * (weights[mid - 1] + weights[mid]);
}

std::vector<SuperCommunityTotal> total_influence(const RetweetGraph& g,
                                                 const Partition& p,
                                                 const std::map<int, int>& grouping) {
    require_cover(g, p);
    std::map<int, SuperCommunityTotal> totals;
    for (const auto& [community, super] : grouping) {
        if (community < 0 ||
            static_cast<std::size_t>(community) >= p.community_count())
            throw ValidationError("grouping names unknown community " +
                                  std::to_string(community));
        auto& entry = totals[super];
        entry.super_id = super;
        for (std::size_t pos : p.communities()[static_cast<std::size_t>(community)]) {
            entry.size += 1;
            entry.total += g.weighted_out_degree(static_cast<int>(pos));
        }
    }
    std::vector<SuperCommunityTotal> result;
    result.reserve(totals.size());
    for (const auto& [super, entry] : totals) result.push_back(entry);
    return result;
}

int h_index(std::vector<std::int64_t> retweet_counts) {
    std::sort(retweet_counts.begin(), retweet_counts.end(),
              std::greater<std::int64_t>());
    int h = 0;
    for (std::size_t i = 0; i < retweet_counts.size(); ++i) {
        const std::int64_t rank = static_cast<std::int64_t>(i) + 1;
        h = static_cast<int>(std::max<std::int64_t>(
            h, std::min(retweet_counts[i], rank)));
    }
    return h;
}

std::vector<HIndexRecord> retweet_hindex(std::span<const RetweetEvent> events,
                                         std::optional<TimeInterval> window) {
    struct AuthorCounts {
        std::unordered_map<std::string, std::int64_t> per_post;
        std::unordered_set<UserId> retweeters;
    };
    std::unordered_map<UserId, AuthorCounts> authors;
    for (const auto& ev : events) {
        if (window && !(window->begin < ev.time && ev.time <= window->end)) continue;
        if (ev.author == ev.retweeter) continue;  // never external impact
        auto& counts = authors[ev.author];
        ++counts.per_post[ev.post_id];
        counts.retweeters.insert(ev.retweeter);
    }
    std::vector<HIndexRecord> records;
    records.reserve(authors.size());
    for (auto& [author, counts] : authors) {
        HIndexRecord rec;
        rec.user = author;
        std::vector<std::int64_t> rt;
        rt.reserve(counts.per_post.size());
        for (const auto& [post, count] : counts.per_post) rt.push_back(count);
        rec.h = h_index(std::move(rt));
        rec.out_degree = counts.retweeters.size();
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const HIndexRecord& a, const HIndexRecord& b) {
                  if (a.h != b.h) return a.h > b.h;
                  if (a.out_degree != b.out_degree) return a.out_degree > b.out_degree;
                  return a.user < b.user;
              });
    for (std::size_t i = 0; i < records.size(); ++i)
        records[i].h_rank = static_cast<int>(i) + 1;
    return records;
}

}  // namespace retnet
