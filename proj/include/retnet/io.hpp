#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "retnet/ensemble.hpp"
#include "retnet/flows.hpp"
#include "retnet/influence.hpp"
#include "retnet/snapshot.hpp"
#include "retnet/timeline.hpp"

namespace retnet::io {

// On-disk layout of one pipeline output directory. Every stage reads the
// artifacts of earlier stages from here and adds its own.
std::filesystem::path manifest_path(const std::filesystem::path& out);
std::filesystem::path snapshot_path(const std::filesystem::path& out, int id);
std::filesystem::path partition_path(const std::filesystem::path& out, int id);
std::filesystem::path detect_log_path(const std::filesystem::path& out);
std::filesystem::path scores_path(const std::filesystem::path& out);
std::filesystem::path timeline_path(const std::filesystem::path& out);
std::filesystem::path flows_path(const std::filesystem::path& out);
std::filesystem::path influence_csv_path(const std::filesystem::path& out, int id);
std::filesystem::path meta_json_path(const std::filesystem::path& out, int id);
std::filesystem::path hindex_path(const std::filesystem::path& out);
std::filesystem::path report_path(const std::filesystem::path& out);

struct EventCounts {
    std::size_t records = 0;
    std::size_t retained = 0;
    std::size_t dropped_self = 0;
    std::size_t skipped = 0;
};

struct SnapshotEntry {
    int id = 0;
    std::int64_t window_end = 0;
    std::size_t nodes = 0;
    std::size_t edges = 0;
};

struct Manifest {
    WindowSpec window;
    EventCounts events;
    std::vector<SnapshotEntry> snapshots;
};

void write_manifest(const std::filesystem::path& out, const Manifest& manifest);
// Throws ValidationError naming the `snapshots` stage when missing.
Manifest read_manifest(const std::filesystem::path& out);

struct ScoreRow {
    int t = 0;  // snapshot id of the later partition in the pair
    double f1 = 0.0;
    bool core_applicable = false;  // node sets identical, so f1 == core F1
    double max_f1 = 0.0;
    std::optional<double> nmi;  // only when core_applicable
    std::optional<double> ari;
};

void write_scores_csv(const std::filesystem::path& out,
                      const std::vector<ScoreRow>& rows);
std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& out);

struct DetectLogEntry {
    int snapshot_id = 0;
    std::vector<TrialStat> trials;
    std::size_t consensus_communities = 0;
};

void write_detect_log(const std::filesystem::path& out,
                      const std::vector<DetectLogEntry>& log);

void write_timeline_json(const std::filesystem::path& out,
                         const TimelineReport& report, std::size_t k);
// Throws ValidationError naming the `select` stage when missing.
TimelineReport read_timeline_json(const std::filesystem::path& out,
                                  std::size_t* k = nullptr);

void write_flows_json(const std::filesystem::path& out,
                      const std::vector<FlowReport>& reports, std::size_t top_k);

struct MetaReport {
    int snapshot_id = 0;
    double edge_threshold = 0.0;
    MetaNetwork meta;
    std::map<int, int> grouping;  // community -> super-community
    std::vector<SuperCommunityTotal> totals;
};

void write_influence_csv(const std::filesystem::path& out,
                         const std::vector<CommunityInfluence>& influences,
                         const MetaReport& meta);
void write_meta_json(const std::filesystem::path& out, const MetaReport& meta);
MetaReport read_meta_json(const std::filesystem::path& out, int snapshot_id);

struct HIndexColumn {
    int snapshot_id = 0;                  // column label h@t{id}
    std::vector<HIndexRecord> records;    // windowed ranking
};

void write_hindex_csv(const std::filesystem::path& out,
                      const std::vector<HIndexRecord>& overall,
                      const std::vector<HIndexColumn>& per_timepoint);

void write_report_json(const std::filesystem::path& out, const Manifest& manifest,
                       const std::vector<ScoreRow>& scores,
                       const TimelineReport& timeline,
                       const std::vector<MetaReport>& metas);

}  // namespace retnet::io
