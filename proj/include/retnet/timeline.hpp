#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "retnet/partition.hpp"

namespace retnet {

struct RemovalStep {
    std::size_t step = 0;    // 1-based
    int removed_id = 0;      // snapshot id of the eliminated timepoint
    double objective = 0.0;  // chained adjacent F1 sum after the removal
};

struct TimelineReport {
    std::vector<int> snapshot_ids;        // ids of all input partitions, in order
    std::vector<int> selected;            // retained ids; endpoints always present
    std::vector<double> f1_adjacent;      // F1(P_next | P_prev) per retained pair
    std::vector<double> maxf1_adjacent;   // node-set Dice ceiling per retained pair
    std::vector<RemovalStep> trace;
    double objective = 0.0;               // final chained F1 sum
};

// Adjacent-pair differences: element i = standard F1 of partitions[i+1]
// evaluated against partitions[i]. Needs at least two partitions.
std::vector<double> pairwise_f1(std::span<const Partition> partitions);

// Greedy top-down elimination: repeatedly removes the interior timepoint
// whose two adjacent F1 scores sum highest (least change), rescoring the
// bridged pair after each removal, until k interior timepoints remain.
// Ties pick the smallest index. Endpoints are never removed.
TimelineReport select_timepoints(std::span<const Partition> partitions,
                                 std::size_t k);

// Exhaustive optimum over all interior subsets of size k, minimizing the
// chained adjacent F1 sum. Guarded to at most 15 interior timepoints.
TimelineReport select_timepoints_exhaustive(std::span<const Partition> partitions,
                                            std::size_t k);

}  // namespace retnet
