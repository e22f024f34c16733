#include "retnet/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retnet/errors.hpp"
#include "retnet/parallel.hpp"

namespace retnet {

void WindowSpec::validate() const {
    std::string problems;
    auto add = [&](const char* msg) {
        if (!problems.empty()) problems += "; ";
        problems += msg;
    };
    if (window_len <= 0) add("window_len must be > 0");
    if (step <= 0) add("step must be > 0");
    if (half_life <= 0) add("half_life must be > 0");
    if (window_len > 0 && start + window_len > end)
        add("start + window_len must be <= end");
    if (!problems.empty()) throw ValidationError("invalid window spec: " + problems);
}

std::size_t WindowSpec::snapshot_count() const {
    validate();
    return static_cast<std::size_t>((end - start - window_len) / step) + 1;
}

double decay_weight(std::int64_t age_seconds, std::int64_t half_life_seconds) {
    return std::exp2(-static_cast<double>(age_seconds) /
                     static_cast<double>(half_life_seconds));
}

RetweetGraph build_snapshot(std::span<const RetweetEvent> events,
                            std::int64_t window_end, const WindowSpec& spec,
                            int snapshot_id) {
    // half-open window (window_end - window_len, window_end]
    const std::int64_t lo = window_end - spec.window_len;
    auto first = std::upper_bound(
        events.begin(), events.end(), lo,
        [](std::int64_t t, const RetweetEvent& e) { return t < e.time; });
    auto last = std::upper_bound(
        events.begin(), events.end(), window_end,
        [](std::int64_t t, const RetweetEvent& e) { return t < e.time; });
    RetweetGraphBuilder builder;
    for (auto it = first; it != last; ++it) {
        builder.add_edge(it->author, it->retweeter,
                         decay_weight(window_end - it->time, spec.half_life));
    }
    return builder.build(snapshot_id);
}

std::vector<RetweetGraph> build_snapshots(std::span<const RetweetEvent> events,
                                          const WindowSpec& spec, unsigned threads) {
    spec.validate();
    if (!std::is_sorted(events.begin(), events.end(),
                        [](const RetweetEvent& a, const RetweetEvent& b) {
                            return a.time < b.time;
                        }))
        throw ValidationError("events must be sorted ascending by time");
    const std::size_t count = spec.snapshot_count();
    std::vector<RetweetGraph> snapshots(count);
    parallel_for(count, threads, [&](std::size_t i) {
        snapshots[i] = build_snapshot(events, spec.window_end(i), spec,
                                      static_cast<int>(i));
    });
    return snapshots;
}

}  // namespace retnet
