#include "retnet/io.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "retnet/errors.hpp"

namespace retnet::io {
namespace {

using nlohmann::json;

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical reruns
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

json load_json(const std::filesystem::path& path, const char* stage) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("missing artifact '" + path.string() +
                              "'; run the `" + stage + "` stage first");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

json timeline_to_json(const TimelineReport& report, std::size_t k) {
    json trace = json::array();
    for (const auto& step : report.trace)
        trace.push_back({{"step", step.step},
                         {"removed", step.removed_id},
                         {"objective", step.objective}});
    return json{{"k", k},
                {"snapshot_ids", report.snapshot_ids},
                {"selected", report.selected},
                {"f1_adjacent", report.f1_adjacent},
                {"maxf1_adjacent", report.maxf1_adjacent},
                {"objective", report.objective},
                {"trace", trace}};
}

}  // namespace

std::filesystem::path manifest_path(const std::filesystem::path& out) {
    return out / "manifest.json";
}
std::filesystem::path snapshot_path(const std::filesystem::path& out, int id) {
    return out / "snapshots" / ("snapshot_" + std::to_string(id) + ".csv");
}
std::filesystem::path partition_path(const std::filesystem::path& out, int id) {
    return out / "partitions" / ("partition_" + std::to_string(id) + ".csv");
}
std::filesystem::path detect_log_path(const std::filesystem::path& out) {
    return out / "detect_log.json";
}
std::filesystem::path scores_path(const std::filesystem::path& out) {
    return out / "scores.csv";
}
std::filesystem::path timeline_path(const std::filesystem::path& out) {
    return out / "timeline.json";
}
std::filesystem::path flows_path(const std::filesystem::path& out) {
    return out / "flows.json";
}
std::filesystem::path influence_csv_path(const std::filesystem::path& out, int id) {
    return out / "influence" / ("influence_" + std::to_string(id) + ".csv");
}
std::filesystem::path meta_json_path(const std::filesystem::path& out, int id) {
    return out / "influence" / ("meta_" + std::to_string(id) + ".json");
}
std::filesystem::path hindex_path(const std::filesystem::path& out) {
    return out / "hindex.csv";
}
std::filesystem::path report_path(const std::filesystem::path& out) {
    return out / "report.json";
}

void write_manifest(const std::filesystem::path& out, const Manifest& manifest) {
    json snapshots = json::array();
    for (const auto& s : manifest.snapshots)
        snapshots.push_back({{"id", s.id},
                             {"window_end", s.window_end},
                             {"nodes", s.nodes},
                             {"edges", s.edges}});
    json doc{{"window",
              {{"start", manifest.window.start},
               {"end", manifest.window.end},
               {"window_len", manifest.window.window_len},
               {"step", manifest.window.step},
               {"half_life", manifest.window.half_life}}},
             {"events",
              {{"records", manifest.events.records},
               {"retained", manifest.events.retained},
               {"dropped_self", manifest.events.dropped_self},
               {"skipped", manifest.events.skipped}}},
             {"snapshots", snapshots}};
    write_text_file(manifest_path(out), doc.dump(2) + "\n");
}

Manifest read_manifest(const std::filesystem::path& out) {
    const json doc = load_json(manifest_path(out), "snapshots");
    Manifest manifest;
    try {
        const auto& w = doc.at("window");
        manifest.window.start = w.at("start").get<std::int64_t>();
        manifest.window.end = w.at("end").get<std::int64_t>();
        manifest.window.window_len = w.at("window_len").get<std::int64_t>();
        manifest.window.step = w.at("step").get<std::int64_t>();
        manifest.window.half_life = w.at("half_life").get<std::int64_t>();
        const auto& ev = doc.at("events");
        manifest.events.records = ev.at("records").get<std::size_t>();
        manifest.events.retained = ev.at("retained").get<std::size_t>();
        manifest.events.dropped_self = ev.at("dropped_self").get<std::size_t>();
        manifest.events.skipped = ev.at("skipped").get<std::size_t>();
        for (const auto& s : doc.at("snapshots")) {
            SnapshotEntry entry;
            entry.id = s.at("id").get<int>();
            entry.window_end = s.at("window_end").get<std::int64_t>();
            entry.nodes = s.at("nodes").get<std::size_t>();
            entry.edges = s.at("edges").get<std::size_t>();
            manifest.snapshots.push_back(entry);
        }
    } catch (const json::exception& e) {
        throw DataError("malformed manifest: " + std::string(e.what()));
    }
    return manifest;
}

void write_scores_csv(const std::filesystem::path& out,
                      const std::vector<ScoreRow>& rows) {
    std::string text = "t,f1,core_f1_applicable,max_f1,nmi,ari\n";
    for (const auto& row : rows) {
        text += std::to_string(row.t) + ',' + fmt_double(row.f1) + ',' +
                (row.core_applicable ? "true" : "false") + ',' +
                fmt_double(row.max_f1) + ',' +
                (row.nmi ? fmt_double(*row.nmi) : "") + ',' +
                (row.ari ? fmt_double(*row.ari) : "") + '\n';
    }
    write_text_file(scores_path(out), text);
}

std::vector<ScoreRow> read_scores_csv(const std::filesystem::path& out) {
    std::ifstream in(scores_path(out));
    if (!in)
        throw ValidationError("missing artifact '" + scores_path(out).string() +
                              "'; run the `compare` stage first");
    std::vector<ScoreRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 || line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        fields.push_back(cur);
        if (fields.size() != 6)
            throw DataError("scores.csv line " + std::to_string(line_no) +
                            ": expected 6 fields");
        try {
            ScoreRow row;
            row.t = std::stoi(fields[0]);
            row.f1 = std::stod(fields[1]);
            row.core_applicable = fields[2] == "true";
            row.max_f1 = std::stod(fields[3]);
            if (!fields[4].empty()) row.nmi = std::stod(fields[4]);
            if (!fields[5].empty()) row.ari = std::stod(fields[5]);
            rows.push_back(row);
        } catch (const std::exception&) {
            throw DataError("scores.csv line " + std::to_string(line_no) +
                            ": unparseable numeric field");
        }
    }
    return rows;
}

void write_detect_log(const std::filesystem::path& out,
                      const std::vector<DetectLogEntry>& log) {
    json snapshots = json::array();
    for (const auto& entry : log) {
        json trials = json::array();
        for (const auto& t : entry.trials)
            trials.push_back({{"trial", t.trial},
                              {"seed", t.seed},
                              {"modularity", t.modularity},
                              {"communities", t.communities}});
        snapshots.push_back({{"id", entry.snapshot_id},
                             {"consensus_communities", entry.consensus_communities},
                             {"trials", trials}});
    }
    write_text_file(detect_log_path(out), json{{"snapshots", snapshots}}.dump(2) + "\n");
}

void write_timeline_json(const std::filesystem::path& out,
                         const TimelineReport& report, std::size_t k) {
    write_text_file(timeline_path(out), timeline_to_json(report, k).dump(2) + "\n");
}

TimelineReport read_timeline_json(const std::filesystem::path& out, std::size_t* k) {
    const json doc = load_json(timeline_path(out), "select");
    TimelineReport report;
    try {
        if (k) *k = doc.at("k").get<std::size_t>();
        report.snapshot_ids = doc.at("snapshot_ids").get<std::vector<int>>();
        report.selected = doc.at("selected").get<std::vector<int>>();
        report.f1_adjacent = doc.at("f1_adjacent").get<std::vector<double>>();
        report.maxf1_adjacent = doc.at("maxf1_adjacent").get<std::vector<double>>();
        report.objective = doc.at("objective").get<double>();
        for (const auto& t : doc.at("trace")) {
            RemovalStep step;
            step.step = t.at("step").get<std::size_t>();
            step.removed_id = t.at("removed").get<int>();
            step.objective = t.at("objective").get<double>();
            report.trace.push_back(step);
        }
    } catch (const json::exception& e) {
        throw DataError("malformed timeline.json: " + std::string(e.what()));
    }
    return report;
}

void write_flows_json(const std::filesystem::path& out,
                      const std::vector<FlowReport>& reports, std::size_t top_k) {
    json pairs = json::array();
    for (const auto& r : reports) {
        auto groups_json = [](const std::vector<FlowGroup>& groups) {
            json arr = json::array();
            for (const auto& g : groups)
                arr.push_back({{"label", g.label},
                               {"rank", g.rank},
                               {"size", g.size},
                               {"communities", g.communities}});
            return arr;
        };
        json matrix = json::array();
        for (const auto& cell : r.matrix)
            matrix.push_back(
                {{"src", cell.src}, {"dst", cell.dst}, {"count", cell.count}});
        pairs.push_back({{"from", r.from_id},
                         {"to", r.to_id},
                         {"core", r.churn.core},
                         {"new", r.churn.added},
                         {"lost", r.churn.lost},
                         {"sources", groups_json(r.sources)},
                         {"targets", groups_json(r.targets)},
                         {"matrix", matrix}});
    }
    write_text_file(flows_path(out),
                    json{{"top_k", top_k}, {"pairs", pairs}}.dump(2) + "\n");
}

void write_influence_csv(const std::filesystem::path& out,
                         const std::vector<CommunityInfluence>& influences,
                         const MetaReport& meta) {
    std::string text = "community,size,I,I_int,I_ext,super_community\n";
    for (const auto& inf : influences) {
        auto super = meta.grouping.find(inf.community_id);
        text += std::to_string(inf.community_id) + ',' + std::to_string(inf.size) +
                ',' + fmt_double(inf.total) + ',' + fmt_double(inf.internal) + ',' +
                fmt_double(inf.external) + ',' +
                (super != meta.grouping.end() ? std::to_string(super->second) : "") +
                '\n';
    }
    write_text_file(influence_csv_path(out, meta.snapshot_id), text);
}

void write_meta_json(const std::filesystem::path& out, const MetaReport& meta) {
    json nodes = json::array();
    for (const auto& n : meta.meta.nodes) {
        json node{{"size", n.size},
                  {"i_int", n.internal_influence},
                  {"i_ext", n.external_influence}};
        if (n.community_id == kSmallNode)
            node["community"] = "Small";
        else
            node["community"] = n.community_id;
        nodes.push_back(node);
    }
    auto node_label = [&](int idx) -> json {
        const auto& n = meta.meta.nodes[static_cast<std::size_t>(idx)];
        if (n.community_id == kSmallNode) return "Small";
        return n.community_id;
    };
    json edges = json::array();
    for (const auto& e : meta.meta.edges)
        edges.push_back({{"src", node_label(e.src)},
                         {"dst", node_label(e.dst)},
                         {"weight", e.weight}});
    json grouping = json::object();
    for (const auto& [community, super] : meta.grouping)
        grouping[std::to_string(community)] = super;
    json totals = json::array();
    for (const auto& t : meta.totals)
        totals.push_back(
            {{"super", t.super_id}, {"size", t.size}, {"total", t.total}});
    json doc{{"snapshot_id", meta.snapshot_id},
             {"min_size", meta.meta.min_size},
             {"edge_threshold", meta.edge_threshold},
             {"nodes", nodes},
             {"edges", edges},
             {"super_communities", grouping},
             {"totals", totals}};
    write_text_file(meta_json_path(out, meta.snapshot_id), doc.dump(2) + "\n");
}

MetaReport read_meta_json(const std::filesystem::path& out, int snapshot_id) {
    const json doc = load_json(meta_json_path(out, snapshot_id), "influence");
    MetaReport meta;
    try {
        meta.snapshot_id = doc.at("snapshot_id").get<int>();
        meta.edge_threshold = doc.at("edge_threshold").get<double>();
        meta.meta.min_size = doc.at("min_size").get<std::size_t>();
        for (const auto& n : doc.at("nodes")) {
            MetaNode node;
            node.community_id =
                n.at("community").is_string() ? kSmallNode : n.at("community").get<int>();
            node.size = n.at("size").get<std::size_t>();
            node.internal_influence = n.at("i_int").get<double>();
            node.external_influence = n.at("i_ext").get<double>();
            meta.meta.nodes.push_back(node);
        }
        for (const auto& [key, value] : doc.at("super_communities").items())
            meta.grouping[std::stoi(key)] = value.get<int>();
        for (const auto& t : doc.at("totals")) {
            SuperCommunityTotal total;
            total.super_id = t.at("super").get<int>();
            total.size = t.at("size").get<std::size_t>();
            total.total = t.at("total").get<double>();
            meta.totals.push_back(total);
        }
    } catch (const json::exception& e) {
        throw DataError("malformed meta json: " + std::string(e.what()));
    }
    return meta;
}

void write_hindex_csv(const std::filesystem::path& out,
                      const std::vector<HIndexRecord>& overall,
                      const std::vector<HIndexColumn>& per_timepoint) {
    std::string header = "user,h,h_rank,out_deg";
    for (const auto& column : per_timepoint)
        header += ",h@t" + std::to_string(column.snapshot_id);
    std::string text = header + "\n";

    std::vector<std::unordered_map<UserId, int>> windowed(per_timepoint.size());
    for (std::size_t c = 0; c < per_timepoint.size(); ++c) {
        for (const auto& rec : per_timepoint[c].records)
            windowed[c].emplace(rec.user, rec.h);
    }
    for (const auto& rec : overall) {
        text += rec.user + ',' + std::to_string(rec.h) + ',' +
                std::to_string(rec.h_rank) + ',' + std::to_string(rec.out_degree);
        for (std::size_t c = 0; c < per_timepoint.size(); ++c) {
            auto it = windowed[c].find(rec.user);
            text += ',';
            if (it != windowed[c].end()) text += std::to_string(it->second);
        }
        text += '\n';
    }
    write_text_file(hindex_path(out), text);
}

void write_report_json(const std::filesystem::path& out, const Manifest& manifest,
                       const std::vector<ScoreRow>& scores,
                       const TimelineReport& timeline,
                       const std::vector<MetaReport>& metas) {
    json snapshot_counts = json::array();
    for (const auto& s : manifest.snapshots)
        snapshot_counts.push_back({{"id", s.id},
                                   {"window_end", s.window_end},
                                   {"nodes", s.nodes},
                                   {"edges", s.edges}});
    json curve = json::array();
    for (const auto& row : scores) {
        json item{{"t", row.t}, {"f1", row.f1}, {"max_f1", row.max_f1}};
        if (row.nmi) item["nmi"] = *row.nmi;
        if (row.ari) item["ari"] = *row.ari;
        curve.push_back(item);
    }
    json supers = json::array();
    for (const auto& meta : metas) {
        json totals = json::array();
        for (const auto& t : meta.totals)
            totals.push_back(
                {{"super", t.super_id}, {"size", t.size}, {"total", t.total}});
        supers.push_back({{"t", meta.snapshot_id}, {"totals", totals}});
    }
    json doc{{"events",
              {{"records", manifest.events.records},
               {"retained", manifest.events.retained},
               {"dropped_self", manifest.events.dropped_self},
               {"skipped", manifest.events.skipped}}},
             {"snapshots", snapshot_counts},
             {"f1_curve", curve},
             {"selected_timepoints", timeline.selected},
             {"selection_objective", timeline.objective},
             {"super_community_influence", supers}};
    write_text_file(report_path(out), doc.dump(2) + "\n");
}

}  // namespace retnet::io
