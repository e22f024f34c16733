#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "retnet/partition.hpp"

namespace retnet {

// Node churn between two partitions.
struct ChurnCounts {
    std::size_t core = 0;   // nodes present in both
    std::size_t added = 0;  // "new" nodes, only in the later partition
    std::size_t lost = 0;   // only in the earlier partition
};

ChurnCounts churn_flows(const Partition& earlier, const Partition& later);

// One side of the flow matrix: a top-k community (label "C1".."Ck", ranked
// by size, ties to the smaller community id) or the merged "Small" rest.
struct FlowGroup {
    std::string label;
    int rank = 0;                  // 1-based size rank; 0 for Small
    std::size_t size = 0;          // node count in its own partition
    std::vector<int> communities;  // member community ids
};

struct FlowCell {
    std::string src;  // source label, or "new" for appearing nodes
    std::string dst;  // target label, or "lost" for disappearing nodes
    std::size_t count = 0;
};

struct FlowReport {
    int from_id = -1;
    int to_id = -1;
    ChurnCounts churn;
    std::vector<FlowGroup> sources;  // C1..Ck then Small (when present)
    std::vector<FlowGroup> targets;
    std::vector<FlowCell> matrix;    // community cells count core nodes only;
                                     // churn appears as (X, "lost") / ("new", Y)
};

// Sankey-style transition data between two partitions. Community-to-
// community cells count core nodes; per-source row sums (including the
// "lost" cell) equal the source group's node count.
FlowReport transition_flows(const Partition& earlier, const Partition& later,
                            std::size_t top_k);

}  // namespace retnet
