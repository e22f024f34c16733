#include "retnet/flows.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "retnet/errors.hpp"

namespace retnet {
namespace {

// label index per community: 0..k-1 for C1..Ck, k for Small
struct SideLayout {
    std::vector<int> group_of;      // community id -> group index
    std::vector<FlowGroup> groups;  // C1..Ck then Small
};

SideLayout rank_side(const Partition& p, std::size_t top_k) {
    std::vector<int> order(p.community_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const std::size_t sa = p.community_size(a);
        const std::size_t sb = p.community_size(b);
        return sa != sb ? sa > sb : a < b;  // size desc, ties to smaller id
    });
    SideLayout layout;
    layout.group_of.assign(p.community_count(), -1);
    const std::size_t ranked = std::min(top_k, order.size());
    for (std::size_t r = 0; r < ranked; ++r) {
        FlowGroup group;
        group.label = "C" + std::to_string(r + 1);
        group.rank = static_cast<int>(r + 1);
        group.size = p.community_size(order[r]);
        group.communities = {order[r]};
        layout.group_of[static_cast<std::size_t>(order[r])] =
            static_cast<int>(layout.groups.size());
        layout.groups.push_back(std::move(group));
    }
    if (order.size() > ranked) {
        FlowGroup small;
        small.label = "Small";
        for (std::size_t r = ranked; r < order.size(); ++r) {
            small.size += p.community_size(order[r]);
            small.communities.push_back(order[r]);
            layout.group_of[static_cast<std::size_t>(order[r])] =
                static_cast<int>(layout.groups.size());
        }
        std::sort(small.communities.begin(), small.communities.end());
        layout.groups.push_back(std::move(small));
    }
    return layout;
}

}  // namespace

ChurnCounts churn_flows(const Partition& earlier, const Partition& later) {
    ChurnCounts counts;
    const auto& a = earlier.nodes();
    const auto& b = later.nodes();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++counts.core;
            ++i;
            ++j;
        }
    }
    counts.lost = a.size() - counts.core;
    counts.added = b.size() - counts.core;
    return counts;
}

FlowReport transition_flows(const Partition& earlier, const Partition& later,
                            std::size_t top_k) {
    if (top_k < 1) throw ValidationError("top_k must be >= 1");

    FlowReport report;
    report.from_id = earlier.snapshot_id();
    report.to_id = later.snapshot_id();
    report.churn = churn_flows(earlier, later);

    const SideLayout src = rank_side(earlier, top_k);
    const SideLayout dst = rank_side(later, top_k);
    report.sources = src.groups;
    report.targets = dst.groups;

    // cell keys: (source group, target group); group count acts as the
    // "new"/"lost" pseudo index on the respective side
    const int lost_idx = static_cast<int>(dst.groups.size());
    const int new_idx = static_cast<int>(src.groups.size());
    std::map<std::pair<int, int>, std::size_t> cells;

    const auto& a = earlier.nodes();
    const auto& b = later.nodes();
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i] < b[j])) {
            const int g = src.group_of[static_cast<std::size_t>(earlier.label_at(i))];
            ++cells[{g, lost_idx}];
            ++i;
        } else if (i >= a.size() || b[j] < a[i]) {
            const int g = dst.group_of[static_cast<std::size_t>(later.label_at(j))];
            ++cells[{new_idx, g}];
            ++j;
        } else {
            const int gs = src.group_of[static_cast<std::size_t>(earlier.label_at(i))];
            const int gd = dst.group_of[static_cast<std::size_t>(later.label_at(j))];
            ++cells[{gs, gd}];
            ++i;
            ++j;
        }
    }

    for (const auto& [key, count] : cells) {
        FlowCell cell;
        cell.src = key.first == new_idx ? "new" : src.groups[key.first].label;
        cell.dst = key.second == lost_idx ? "lost" : dst.groups[key.second].label;
        cell.count = count;
        report.matrix.push_back(std::move(cell));
    }
    return report;
}

}  // namespace retnet
