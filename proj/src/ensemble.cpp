#include "retnet/ensemble.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "retnet/errors.hpp"
#include "retnet/louvain.hpp"
#include "retnet/parallel.hpp"
#include "retnet/union_find.hpp"

namespace retnet {

void EnsembleConfig::validate() const {
    if (trials < 1) throw ValidationError("ensemble trials must be >= 1");
    if (!(threshold > 0.0) || threshold > 1.0)
        throw ValidationError("ensemble threshold must be in (0, 1]");
}

int EnsembleConfig::required_count() const {
    return static_cast<int>(std::ceil(threshold * trials - 1e-9));
}

Partition ensemble_louvain(const UndirectedGraph& g, const EnsembleConfig& cfg,
                           unsigned threads, std::vector<TrialStat>* stats,
                           int snapshot_id) {
    cfg.validate();
    if (g.node_count() == 0)
        throw ValidationError("ensemble louvain requires a non-empty graph");

    const std::size_t n_trials = static_cast<std::size_t>(cfg.trials);
    std::vector<Partition> trials(n_trials);
    parallel_for(n_trials, threads, [&](std::size_t i) {
        trials[i] = louvain(g, cfg.seed + i);
    });

    if (stats) {
        stats->clear();
        stats->reserve(n_trials);
        for (std::size_t i = 0; i < n_trials; ++i) {
            TrialStat s;
            s.trial = static_cast<int>(i);
            s.seed = cfg.seed + i;
            s.modularity =
                g.total_weight() > 0.0 ? modularity(g, trials[i]) : 0.0;
            s.communities = trials[i].community_count();
            stats->push_back(s);
        }
    }

    // Co-membership counts, enumerated within each trial's communities
    // (sum over trials of sum |C|^2 pair work, never all n^2 pairs).
    // Every trial partitions the same sorted node list, so positions align.
    const std::size_t n = g.node_count();
    std::unordered_map<std::uint64_t, int> counts;
    std::size_t first_trial_pairs = 0;
    for (const auto& members : trials.front().communities())
        first_trial_pairs += members.size() * (members.size() - 1) / 2;
    counts.reserve(first_trial_pairs + first_trial_pairs / 4);
    for (const Partition& p : trials) {
        for (const auto& members : p.communities()) {
            for (std::size_t a = 0; a < members.size(); ++a) {
                for (std::size_t b = a + 1; b < members.size(); ++b) {
                    const std::uint64_t key =
                        static_cast<std::uint64_t>(members[a]) * n + members[b];
                    ++counts[key];
                }
            }
        }
    }

    const int required = cfg.required_count();
    DisjointSets dsu(n);
    for (const auto& [key, count] : counts) {
        if (count >= required)
            dsu.unite(static_cast<std::size_t>(key / n),
                      static_cast<std::size_t>(key % n));
    }

    std::vector<std::pair<UserId, int>> assignment;
    assignment.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        assignment.emplace_back(g.nodes()[i], static_cast<int>(dsu.find(i)));
    return Partition(snapshot_id, std::move(assignment));
}

}  // namespace retnet
