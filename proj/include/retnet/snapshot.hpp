#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "retnet/event.hpp"
#include "retnet/graph.hpp"

namespace retnet {

constexpr std::int64_t kSecondsPerWeek = 604800;  // fixed 7*86400, no calendar math

// Sliding observation window with exponential edge-weight decay.
struct WindowSpec {
    std::int64_t window_len = 24 * kSecondsPerWeek;
    std::int64_t step = 1 * kSecondsPerWeek;
    std::int64_t half_life = 4 * kSecondsPerWeek;
    std::int64_t start = 0;  // left edge of the first window
    std::int64_t end = 0;    // right edge of the last window

    // Throws ValidationError listing every violated field constraint.
    void validate() const;

    std::size_t snapshot_count() const;
    std::int64_t window_end(std::size_t snapshot_id) const {
        return start + window_len + static_cast<std::int64_t>(snapshot_id) * step;
    }
};

// Weight contribution of an event of the given age: 2^(-age / half_life).
double decay_weight(std::int64_t age_seconds, std::int64_t half_life_seconds);

// One snapshot: every event with time in (window_end - window_len, window_end]
// contributes 2^(-(window_end - t)/half_life) to weight(author -> retweeter).
// Events must be sorted ascending by time.
RetweetGraph build_snapshot(std::span<const RetweetEvent> events,
                            std::int64_t window_end, const WindowSpec& spec,
                            int snapshot_id = -1);

// All snapshots i with window_end(i) = start + window_len + i*step <= end.
std::vector<RetweetGraph> build_snapshots(std::span<const RetweetEvent> events,
                                          const WindowSpec& spec,
                                          unsigned threads = 1);

}  // namespace retnet
