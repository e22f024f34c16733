#include "retnet/timeline.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "retnet/errors.hpp"
#include "retnet/similarity.hpp"

namespace retnet {
namespace {

int id_of(std::span<const Partition> partitions, std::size_t i) {
    const int sid = partitions[i].snapshot_id();
    return sid >= 0 ? sid : static_cast<int>(i);
}

double pair_f1(std::span<const Partition> partitions, std::size_t earlier,
               std::size_t later) {
    return standard_f1(partitions[earlier], partitions[later]).f1;
}

// max_f1 refuses two empty partitions; for sweep purposes score them 0 so a
// pair of empty snapshots cannot abort a selection run.
double pair_max_f1(const Partition& a, const Partition& b) {
    if (a.node_count() == 0 && b.node_count() == 0) return 0.0;
    return max_f1(a, b);
}

TimelineReport finish_report(std::span<const Partition> partitions,
                             const std::vector<std::size_t>& retained) {
    TimelineReport report;
    for (std::size_t i = 0; i < partitions.size(); ++i)
        report.snapshot_ids.push_back(id_of(partitions, i));
    for (std::size_t pos : retained)
        report.selected.push_back(id_of(partitions, pos));
    for (std::size_t j = 0; j + 1 < retained.size(); ++j) {
        const double f1 = pair_f1(partitions, retained[j], retained[j + 1]);
        report.f1_adjacent.push_back(f1);
        report.maxf1_adjacent.push_back(
            pair_max_f1(partitions[retained[j]], partitions[retained[j + 1]]));
        report.objective += f1;
    }
    return report;
}

}  // namespace

std::vector<double> pairwise_f1(std::span<const Partition> partitions) {
    if (partitions.size() < 2)
        throw ValidationError("pairwise F1 needs at least 2 partitions");
    std::vector<double> scores;
    scores.reserve(partitions.size() - 1);
    for (std::size_t i = 0; i + 1 < partitions.size(); ++i)
        scores.push_back(pair_f1(partitions, i, i + 1));
    return scores;
}

TimelineReport select_timepoints(std::span<const Partition> partitions,
                                 std::size_t k) {
    if (partitions.size() < 2)
        throw ValidationError("timepoint selection needs at least 2 partitions");
    const std::size_t interior = partitions.size() - 2;
    if (k > interior)
        throw ValidationError("k = " + std::to_string(k) +
                              " exceeds the " + std::to_string(interior) +
                              " interior timepoints");

    // Doubly linked list over positions, with the adjacent F1 cached on the
    // left endpoint of each retained pair.
    const std::size_t n = partitions.size();
    std::vector<std::size_t> prev(n), next(n);
    std::vector<double> adj_f1(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        prev[i] = i == 0 ? n : i - 1;
        next[i] = i + 1;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) adj_f1[i] = pair_f1(partitions, i, i + 1);

    TimelineReport report;
    for (std::size_t i = 0; i < n; ++i)
        report.snapshot_ids.push_back(id_of(partitions, i));

    const std::size_t removals = interior - k;
    std::vector<bool> removed(n, false);
    for (std::size_t step = 1; step <= removals; ++step) {
        // Most similar triplet: maximise F1(P_t | P_prev) + F1(P_next | P_t).
        // Strict comparison scans ascending positions, so ties keep the
        // smallest index.
        double best_sum = -1.0;
        std::size_t best_t = n;
        for (std::size_t t = next[0]; next[t] < n; t = next[t]) {
            const double sum = adj_f1[prev[t]] + adj_f1[t];
            if (sum > best_sum) {
                best_sum = sum;
                best_t = t;
            }
        }
        const std::size_t left = prev[best_t];
        const std::size_t right = next[best_t];
        removed[best_t] = true;
        next[left] = right;
        prev[right] = left;
        adj_f1[left] = pair_f1(partitions, left, right);  // bridged pair rescored

        RemovalStep entry;
        entry.step = step;
        entry.removed_id = id_of(partitions, best_t);
        for (std::size_t i = 0; next[i] < n; i = next[i]) entry.objective += adj_f1[i];
        report.trace.push_back(entry);
    }

    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < n; ++i)
        if (!removed[i]) retained.push_back(i);
    TimelineReport final_report = finish_report(partitions, retained);
    final_report.trace = std::move(report.trace);
    return final_report;
}

TimelineReport select_timepoints_exhaustive(std::span<const Partition> partitions,
                                            std::size_t k) {
    if (partitions.size() < 2)
        throw ValidationError("timepoint selection needs at least 2 partitions");
    const std::size_t interior = partitions.size() - 2;
    if (interior > 15)
        throw ValidationError("exhaustive selection guard: more than 15 interior "
                              "timepoints");
    if (k > interior)
        throw ValidationError("k exceeds the interior timepoint count");

    std::map<std::pair<std::size_t, std::size_t>, double> memo;
    auto chain_f1 = [&](std::size_t a, std::size_t b) {
        auto it = memo.find({a, b});
        if (it != memo.end()) return it->second;
        const double f1 = pair_f1(partitions, a, b);
        memo.emplace(std::make_pair(a, b), f1);
        return f1;
    };

    // Lexicographic subset enumeration; strict improvement keeps the first
    // optimum, so the result is deterministic.
    std::vector<std::size_t> combo(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i + 1;
    std::vector<std::size_t> best_combo;
    double best_objective = 0.0;
    bool have_best = false;
    const std::size_t last = partitions.size() - 1;
    while (true) {
        double objective = 0.0;
        std::size_t prev_pos = 0;
        for (std::size_t pos : combo) {
            objective += chain_f1(prev_pos, pos);
            prev_pos = pos;
        }
        objective += chain_f1(prev_pos, last);
        if (!have_best || objective < best_objective) {
            have_best = true;
            best_objective = objective;
            best_combo = combo;
        }
        // next combination of {1..interior} of size k
        if (k == 0) break;
        std::size_t i = k;
        while (i > 0 && combo[i - 1] == interior - k + i) --i;
        if (i == 0) break;
        ++combo[i - 1];
        for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }

    std::vector<std::size_t> retained;
    retained.push_back(0);
    retained.insert(retained.end(), best_combo.begin(), best_combo.end());
    retained.push_back(last);
    return finish_report(partitions, retained);
}

}  // namespace retnet
