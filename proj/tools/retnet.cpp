// retnet: retweet-network community evolution pipeline.
//
// Subcommands run one stage each over a shared output directory, so every
// stage can be re-run in isolation from the artifacts already on disk:
//   snapshots -> detect -> compare -> select -> flows / influence / hindex
//   -> report

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "retnet/ensemble.hpp"
#include "retnet/errors.hpp"
#include "retnet/flows.hpp"
#include "retnet/graph.hpp"
#include "retnet/influence.hpp"
#include "retnet/ingest.hpp"
#include "retnet/io.hpp"
#include "retnet/louvain.hpp"
#include "retnet/parallel.hpp"
#include "retnet/partition.hpp"
#include "retnet/similarity.hpp"
#include "retnet/snapshot.hpp"
#include "retnet/timeline.hpp"

namespace fs = std::filesystem;
using namespace retnet;

namespace {

constexpr double kAutoThreshold = -1.0;  // sentinel: median meta-edge weight

struct CommonOptions {
    std::string out;
    unsigned threads = 1;
};

struct IngestOptions {
    std::vector<std::string> inputs;
    std::string format = "csv";
    std::string on_error = "fail";
};

EventFormat parse_format(const std::string& name) {
    if (name == "csv") return EventFormat::csv;
    if (name == "jsonl") return EventFormat::jsonl;
    throw ValidationError("unknown event format '" + name + "'");
}

ErrorPolicy parse_policy(const std::string& name) {
    if (name == "fail") return ErrorPolicy::fail_fast;
    if (name == "skip") return ErrorPolicy::skip_and_count;
    throw ValidationError("unknown error policy '" + name + "'");
}

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("-o,--out", opts.out, "pipeline output directory")->required();
    cmd->add_option("--threads", opts.threads,
                    "worker threads; results never depend on this")
        ->configurable(false)
        ->check(CLI::PositiveNumber);
}

void add_ingest(CLI::App* cmd, IngestOptions& opts) {
    cmd->add_option("-i,--input", opts.inputs, "event file, repeatable")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--format", opts.format, "event file format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    cmd->add_option("--on-error", opts.on_error,
                    "malformed record handling: fail (with line number) or "
                    "skip-and-count")
        ->check(CLI::IsMember({"fail", "skip"}))
        ->capture_default_str();
}

io::EventCounts merge_events(const IngestOptions& opts,
                             std::vector<RetweetEvent>& events) {
    io::EventCounts counts;
    const EventFormat format = parse_format(opts.format);
    const ErrorPolicy policy = parse_policy(opts.on_error);
    for (const auto& path : opts.inputs) {
        auto report = parse_events_file(path, format, policy);
        counts.records += report.records;
        counts.dropped_self += report.dropped_self;
        counts.skipped += report.skipped;
        for (const auto& issue : report.issues)
            std::cerr << path << ": " << issue << "\n";
        events.insert(events.end(), report.events.begin(), report.events.end());
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const RetweetEvent& a, const RetweetEvent& b) {
                         return a.time < b.time;
                     });
    counts.retained = events.size();
    return counts;
}

void echo_config(const CLI::App& app, const fs::path& out, const std::string& stage) {
    std::ofstream cfg(out / ("config_" + stage + ".cfg"), std::ios::binary);
    cfg << app.config_to_str(true, false);
}

std::int64_t parse_time_flag(const std::string& text, const char* flag) {
    try {
        return parse_timestamp(text);
    } catch (const DataError& e) {
        throw ValidationError(std::string(flag) + ": " + e.what());
    }
}

std::int64_t weeks_to_seconds(double weeks) {
    return std::llround(weeks * static_cast<double>(kSecondsPerWeek));
}

std::vector<int> manifest_ids(const io::Manifest& manifest) {
    std::vector<int> ids;
    ids.reserve(manifest.snapshots.size());
    for (const auto& entry : manifest.snapshots) ids.push_back(entry.id);
    return ids;
}

Partition load_partition(const fs::path& out, int id) {
    const fs::path path = io::partition_path(out, id);
    if (!fs::exists(path))
        throw ValidationError("missing artifact '" + path.string() +
                              "'; run the `detect` stage first");
    return Partition::read_csv_file(path.string(), id);
}

RetweetGraph load_snapshot(const fs::path& out, int id) {
    const fs::path path = io::snapshot_path(out, id);
    if (!fs::exists(path))
        throw ValidationError("missing artifact '" + path.string() +
                              "'; run the `snapshots` stage first");
    std::ifstream in(path);
    return RetweetGraph::read_edge_csv(in, id);
}

std::vector<int> resolve_timepoints(const fs::path& out,
                                    const std::vector<int>& flag_values,
                                    const io::Manifest& manifest) {
    std::vector<int> ids = flag_values;
    if (ids.empty()) ids = io::read_timeline_json(out).selected;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) {
        const bool known =
            std::any_of(manifest.snapshots.begin(), manifest.snapshots.end(),
                        [id](const io::SnapshotEntry& e) { return e.id == id; });
        if (!known)
            throw ValidationError("timepoint " + std::to_string(id) +
                                  " is not in the manifest");
    }
    return ids;
}

// ---- stages ----------------------------------------------------------

int run_snapshots(const CLI::App& app, const CommonOptions& common,
                  const IngestOptions& ingest, double window_weeks,
                  double step_weeks, double half_life_weeks,
                  const std::string& start_text, const std::string& end_text) {
    std::vector<RetweetEvent> events;
    const io::EventCounts counts = merge_events(ingest, events);
    if (events.empty()) throw ValidationError("no events after ingestion");

    WindowSpec spec;
    spec.window_len = weeks_to_seconds(window_weeks);
    spec.step = weeks_to_seconds(step_weeks);
    spec.half_life = weeks_to_seconds(half_life_weeks);
    spec.start = start_text.empty() ? events.front().time
                                    : parse_time_flag(start_text, "--start");
    spec.end =
        end_text.empty() ? events.back().time : parse_time_flag(end_text, "--end");
    spec.validate();

    const fs::path out(common.out);
    fs::create_directories(out / "snapshots");
    auto snapshots = build_snapshots(events, spec, common.threads);

    io::Manifest manifest;
    manifest.window = spec;
    manifest.events = counts;
    for (const auto& g : snapshots) {
        const fs::path path = io::snapshot_path(out, g.snapshot_id());
        std::ofstream file(path, std::ios::binary);
        g.write_edge_csv(file);
        if (!file) throw DataError("failed writing '" + path.string() + "'");
        io::SnapshotEntry entry;
        entry.id = g.snapshot_id();
        entry.window_end = spec.window_end(static_cast<std::size_t>(g.snapshot_id()));
        entry.nodes = g.node_count();
        entry.edges = g.edge_count();
        manifest.snapshots.push_back(entry);
    }
    io::write_manifest(out, manifest);
    echo_config(app, out, "snapshots");
    std::cout << "wrote " << snapshots.size() << " snapshots ("
              << counts.retained << " events kept, " << counts.dropped_self
              << " self-retweets dropped, " << counts.skipped << " skipped)\n";
    return 0;
}

int run_detect(const CLI::App& app, const CommonOptions& common, int trials,
               double threshold, std::uint64_t seed) {
    const fs::path out(common.out);
    const io::Manifest manifest = io::read_manifest(out);
    fs::create_directories(out / "partitions");

    EnsembleConfig cfg;
    cfg.trials = trials;
    cfg.threshold = threshold;
    cfg.validate();

    std::vector<io::DetectLogEntry> log;
    for (const auto& entry : manifest.snapshots) {
        const RetweetGraph snapshot = load_snapshot(out, entry.id);
        io::DetectLogEntry log_entry;
        log_entry.snapshot_id = entry.id;
        Partition partition;
        if (snapshot.node_count() == 0) {
            partition = Partition(entry.id, {});
        } else {
            EnsembleConfig per = cfg;
            // one seed stream per snapshot, stable under re-runs of subsets
            per.seed = seed + 0x10000ULL * static_cast<std::uint64_t>(entry.id);
            partition = ensemble_louvain(to_undirected(snapshot), per,
                                         common.threads, &log_entry.trials,
                                         entry.id);
        }
        log_entry.consensus_communities = partition.community_count();
        const fs::path path = io::partition_path(out, entry.id);
        std::ofstream file(path, std::ios::binary);
        partition.write_csv(file);
        if (!file) throw DataError("failed writing '" + path.string() + "'");
        log.push_back(std::move(log_entry));
    }
    io::write_detect_log(out, log);
    echo_config(app, out, "detect");
    std::cout << "detected communities in " << log.size() << " snapshots\n";
    return 0;
}

int run_compare(const CLI::App& app, const CommonOptions& common) {
    const fs::path out(common.out);
    const io::Manifest manifest = io::read_manifest(out);
    const std::vector<int> ids = manifest_ids(manifest);
    if (ids.size() < 2)
        throw ValidationError("compare needs at least 2 partitions; the "
                              "manifest lists " + std::to_string(ids.size()));

    std::vector<Partition> partitions;
    partitions.reserve(ids.size());
    for (int id : ids) partitions.push_back(load_partition(out, id));

    std::vector<io::ScoreRow> rows(ids.size() - 1);
    parallel_for(rows.size(), common.threads, [&](std::size_t i) {
        const Partition& earlier = partitions[i];
        const Partition& later = partitions[i + 1];
        io::ScoreRow row;
        row.t = ids[i + 1];
        row.f1 = standard_f1(earlier, later).f1;
        // a pair of empty snapshots scores 0 instead of aborting the sweep
        row.max_f1 = earlier.node_count() + later.node_count() > 0
                         ? max_f1(earlier, later)
                         : 0.0;
        row.core_applicable =
            earlier.node_count() > 0 && earlier.nodes() == later.nodes();
        if (row.core_applicable) {
            row.nmi = nmi(earlier, later);
            row.ari = ari(earlier, later);
        }
        rows[i] = row;
    });
    io::write_scores_csv(out, rows);
    echo_config(app, out, "compare");
    std::cout << "compared " << rows.size() << " adjacent partition pairs\n";
    return 0;
}

int run_select(const CLI::App& app, const CommonOptions& common, std::size_t k) {
    const fs::path out(common.out);
    const io::Manifest manifest = io::read_manifest(out);
    const std::vector<int> ids = manifest_ids(manifest);
    if (ids.size() < 2)
        throw ValidationError("select needs at least 2 partitions");

    std::vector<Partition> partitions;
    partitions.reserve(ids.size());
    for (int id : ids) partitions.push_back(load_partition(out, id));

    const TimelineReport report = select_timepoints(partitions, k);
    io::write_timeline_json(out, report, k);
    echo_config(app, out, "select");
    std::cout << "selected timepoints:";
    for (int id : report.selected) std::cout << ' ' << id;
    std::cout << '\n';
    return 0;
}

int run_flows(const CLI::App& app, const CommonOptions& common, std::size_t top_k) {
    const fs::path out(common.out);
    const TimelineReport timeline = io::read_timeline_json(out);
    if (timeline.selected.size() < 2)
        throw ValidationError("timeline selects fewer than 2 timepoints");

    std::vector<FlowReport> reports(timeline.selected.size() - 1);
    parallel_for(reports.size(), common.threads, [&](std::size_t i) {
        const Partition earlier = load_partition(out, timeline.selected[i]);
        const Partition later = load_partition(out, timeline.selected[i + 1]);
        reports[i] = transition_flows(earlier, later, top_k);
    });
    io::write_flows_json(out, reports, top_k);
    echo_config(app, out, "flows");
    std::cout << "wrote flow data for " << reports.size() << " transitions\n";
    return 0;
}

int run_influence(const CLI::App& app, const CommonOptions& common,
                  double min_size_frac, std::size_t min_size_abs,
                  double edge_threshold, const std::vector<int>& timepoints) {
    const fs::path out(common.out);
    const io::Manifest manifest = io::read_manifest(out);
    const std::vector<int> ids = resolve_timepoints(out, timepoints, manifest);
    if (ids.empty()) throw ValidationError("no timepoints to analyze");
    fs::create_directories(out / "influence");

    for (int id : ids) {
        const RetweetGraph snapshot = load_snapshot(out, id);
        const Partition partition = load_partition(out, id);
        const auto influences = community_influence(snapshot, partition);

        std::size_t min_size = min_size_abs;
        if (min_size == 0)
            min_size = static_cast<std::size_t>(std::ceil(
                min_size_frac * static_cast<double>(snapshot.node_count()) - 1e-9));
        const MetaNetwork meta = meta_network(snapshot, partition, min_size);

        io::MetaReport report;
        report.snapshot_id = id;
        report.edge_threshold = edge_threshold >= 0.0
                                    ? edge_threshold
                                    : median_meta_edge_weight(meta);
        report.meta = meta;
        report.grouping = super_communities(meta, report.edge_threshold);
        report.totals = total_influence(snapshot, partition, report.grouping);
        io::write_influence_csv(out, influences, report);
        io::write_meta_json(out, report);
    }
    echo_config(app, out, "influence");
    std::cout << "analyzed influence at " << ids.size() << " timepoints\n";
    return 0;
}

int run_hindex(const CLI::App& app, const CommonOptions& common,
               const IngestOptions& ingest, const std::vector<int>& timepoints,
               std::size_t top) {
    const fs::path out(common.out);
    fs::create_directories(out);  // hindex may legitimately run first
    std::vector<RetweetEvent> events;
    merge_events(ingest, events);

    std::vector<int> ids;
    io::Manifest manifest;
    bool have_manifest = false;
    if (!timepoints.empty() || fs::exists(io::timeline_path(out))) {
        manifest = io::read_manifest(out);
        have_manifest = true;
        ids = resolve_timepoints(out, timepoints, manifest);
    }

    auto overall = retweet_hindex(events);
    if (top > 0 && overall.size() > top) overall.resize(top);

    std::vector<io::HIndexColumn> columns;
    for (int id : ids) {
        if (!have_manifest) break;
        const auto entry = std::find_if(
            manifest.snapshots.begin(), manifest.snapshots.end(),
            [id](const io::SnapshotEntry& e) { return e.id == id; });
        io::HIndexColumn column;
        column.snapshot_id = id;
        TimeInterval window;
        window.begin = entry->window_end - manifest.window.window_len;
        window.end = entry->window_end;
        column.records = retweet_hindex(events, window);
        columns.push_back(std::move(column));
    }
    io::write_hindex_csv(out, overall, columns);
    echo_config(app, out, "hindex");
    std::cout << "ranked " << overall.size() << " authors ("
              << columns.size() << " timepoint columns)\n";
    return 0;
}

int run_report(const CLI::App& app, const CommonOptions& common) {
    const fs::path out(common.out);
    const io::Manifest manifest = io::read_manifest(out);
    const auto scores = io::read_scores_csv(out);
    const TimelineReport timeline = io::read_timeline_json(out);
    std::vector<io::MetaReport> metas;
    for (int id : timeline.selected)
        metas.push_back(io::read_meta_json(out, id));
    io::write_report_json(out, manifest, scores, timeline, metas);
    echo_config(app, out, "report");
    std::cout << "wrote " << io::report_path(out).string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"retweet-network community evolution toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value config file; command-line flags win");
    app.get_config_ptr()->configurable(false);

    CommonOptions snap_common, detect_common, compare_common, select_common,
        flows_common, influence_common, hindex_common, report_common;
    IngestOptions snap_ingest, hindex_ingest;

    auto* snapshots = app.add_subcommand(
        "snapshots", "build decayed sliding-window retweet networks");
    add_common(snapshots, snap_common);
    add_ingest(snapshots, snap_ingest);
    double window_weeks = 24.0, step_weeks = 1.0, half_life_weeks = 4.0;
    std::string start_text, end_text;
    snapshots->add_option("--window-weeks", window_weeks, "observation window")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    snapshots->add_option("--step-weeks", step_weeks, "slide between snapshots")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    snapshots
        ->add_option("--half-life-weeks", half_life_weeks,
                     "edge weight decay half-life")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    snapshots->add_option("--start", start_text,
                          "first window's left edge (ISO-8601 UTC or epoch "
                          "seconds; default: first event)");
    snapshots->add_option("--end", end_text,
                          "last window's right edge (default: last event)");

    auto* detect = app.add_subcommand(
        "detect", "run Ensemble Louvain on every snapshot");
    add_common(detect, detect_common);
    int trials = 100;
    double threshold = 0.9;
    std::uint64_t seed = 0;
    detect->add_option("--trials", trials, "Louvain trials per snapshot")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    detect
        ->add_option("--threshold", threshold,
                     "co-membership fraction required for consensus")
        ->capture_default_str();
    detect->add_option("--seed", seed, "master random seed")->capture_default_str();

    auto* compare = app.add_subcommand(
        "compare", "score adjacent partition pairs (F1, max-F1, NMI, ARI)");
    add_common(compare, compare_common);

    auto* select = app.add_subcommand(
        "select", "pick k maximally-different intermediate timepoints");
    add_common(select, select_common);
    std::size_t k = 3;
    select->add_option("-k,--k", k, "interior timepoints to keep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* flows = app.add_subcommand(
        "flows", "node churn and community transition flow data");
    add_common(flows, flows_common);
    std::size_t top_k = 5;
    flows->add_option("--top-k", top_k, "communities shown before folding into Small")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* influence = app.add_subcommand(
        "influence", "community influence, meta-network and super-communities");
    add_common(influence, influence_common);
    double min_size_frac = 0.01;
    std::size_t min_size_abs = 0;
    double edge_threshold = kAutoThreshold;
    std::vector<int> influence_timepoints;
    influence
        ->add_option("--min-size-frac", min_size_frac,
                     "fold communities below this fraction of nodes into Small")
        ->capture_default_str();
    influence->add_option("--min-size", min_size_abs,
                          "absolute fold threshold; overrides --min-size-frac");
    influence->add_option(
        "--edge-threshold", edge_threshold,
        "minimum meta-edge weight for super-community grouping (default: "
        "median positive weight)");
    influence->add_option("--timepoints", influence_timepoints,
                          "snapshot ids (default: the selected timeline)");

    auto* hindex = app.add_subcommand(
        "hindex", "retweet h-index ranking, overall and per timepoint");
    add_common(hindex, hindex_common);
    add_ingest(hindex, hindex_ingest);
    std::vector<int> hindex_timepoints;
    std::size_t top = 0;
    hindex->add_option("--timepoints", hindex_timepoints,
                       "snapshot ids for windowed columns (default: the "
                       "selected timeline when present)");
    hindex->add_option("--top", top, "keep only the top N ranked authors (0 = all)")
        ->capture_default_str();

    auto* report = app.add_subcommand("report", "bundle a summary of all stages");
    add_common(report, report_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // bad flags are validation errors
    }

    try {
        if (snapshots->parsed())
            return run_snapshots(app, snap_common, snap_ingest, window_weeks,
                                 step_weeks, half_life_weeks, start_text, end_text);
        if (detect->parsed())
            return run_detect(app, detect_common, trials, threshold, seed);
        if (compare->parsed()) return run_compare(app, compare_common);
        if (select->parsed()) return run_select(app, select_common, k);
        if (flows->parsed()) return run_flows(app, flows_common, top_k);
        if (influence->parsed())
            return run_influence(app, influence_common, min_size_frac,
                                 min_size_abs, edge_threshold,
                                 influence_timepoints);
        if (hindex->parsed())
            return run_hindex(app, hindex_common, hindex_ingest,
                              hindex_timepoints, top);
        if (report->parsed()) return run_report(app, report_common);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
