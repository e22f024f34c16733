#pragma once

#include <cstdint>
#include <vector>

#include "retnet/graph.hpp"
#include "retnet/partition.hpp"

namespace retnet {

struct EnsembleConfig {
    int trials = 100;
    double threshold = 0.9;   // co-membership fraction, in (0, 1]
    std::uint64_t seed = 0;   // master seed; trial i runs with seed + i

    void validate() const;
    // Trials needed for consensus: ceil(threshold * trials), computed with a
    // rounding guard so that 0.9 * 100 requires exactly 90.
    int required_count() const;
};

struct TrialStat {
    int trial = 0;
    std::uint64_t seed = 0;
    double modularity = 0.0;
    std::size_t communities = 0;
};

// Consensus of `trials` Louvain runs: node pairs co-assigned in at least
// required_count() trials are linked, and the communities are the connected
// components of that consensus graph. Deterministic for a fixed seed and
// independent of the thread count.
Partition ensemble_louvain(const UndirectedGraph& g, const EnsembleConfig& cfg,
                           unsigned threads = 1,
                           std::vector<TrialStat>* stats = nullptr,
                           int snapshot_id = -1);

}  // namespace retnet
