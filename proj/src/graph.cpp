#include "retnet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <utility>

#include "retnet/errors.hpp"

namespace retnet {
namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
    out.write(buf, ptr - buf);
}

double parse_weight(const std::string& text) {
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), w);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(w > 0.0) ||
        !std::isfinite(w))
        throw DataError("invalid edge weight '" + text + "'");
    return w;
}

std::vector<std::string> split3(const std::string& line) {
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
    if (fields.size() != 3) throw DataError("expected 3 fields in edge row");
    return fields;
}

}  // namespace

int RetweetGraph::node_index(const UserId& u) const {
    auto it = index_.find(u);
    if (it == index_.end()) throw ValidationError("unknown node '" + u + "'");
    return it->second;
}

double RetweetGraph::weighted_out_degree(const UserId& u) const {
    return out_weight_[static_cast<std::size_t>(node_index(u))];
}

void RetweetGraph::write_edge_csv(std::ostream& out) const {
    out << "src,dst,weight\n";
    for (const Edge& e : edges_) {
        out << nodes_[static_cast<std::size_t>(e.src)] << ','
            << nodes_[static_cast<std::size_t>(e.dst)] << ',';
        write_double(out, e.weight);
        out << '\n';
    }
}

RetweetGraph RetweetGraph::read_edge_csv(std::istream& in, int snapshot_id) {
    RetweetGraphBuilder builder;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "src,dst,weight")
                throw DataError("expected edge header 'src,dst,weight'");
            continue;
        }
        if (line.empty()) continue;
        try {
            auto f = split3(line);
            builder.add_edge(f[0], f[1], parse_weight(f[2]));
        } catch (const std::exception& e) {  // bad rows are data, not API misuse
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return builder.build(snapshot_id);
}

void RetweetGraphBuilder::add_edge(const UserId& author, const UserId& retweeter,
                                   double w) {
    if (author == retweeter)
        throw ValidationError("self-loop on '" + author + "' rejected");
    if (author.empty() || retweeter.empty())
        throw ValidationError("empty user id in edge");
    if (!(w > 0.0) || !std::isfinite(w))
        throw ValidationError("edge weight must be positive and finite");
    weights_["" + author + '\t' + retweeter] += w;
}

void RetweetGraphBuilder::add_node(const UserId& u) {
    if (u.empty()) throw ValidationError("empty user id");
    extra_nodes_.push_back(u);
}

RetweetGraph RetweetGraphBuilder::build(int snapshot_id) const {
    std::set<UserId> node_set(extra_nodes_.begin(), extra_nodes_.end());
    for (const auto& [key, w] : weights_) {
        auto tab = key.find('\t');
        node_set.insert(key.substr(0, tab));
        node_set.insert(key.substr(tab + 1));
    }
    RetweetGraph g;
    g.snapshot_id_ = snapshot_id;
    g.nodes_.assign(node_set.begin(), node_set.end());
    g.index_.reserve(g.nodes_.size());
    for (std::size_t i = 0; i < g.nodes_.size(); ++i)
        g.index_.emplace(g.nodes_[i], static_cast<int>(i));
    g.edges_.reserve(weights_.size());
    for (const auto& [key, w] : weights_) {
        auto tab = key.find('\t');
        RetweetGraph::Edge e;
        e.src = g.index_.at(key.substr(0, tab));
        e.dst = g.index_.at(key.substr(tab + 1));
        e.weight = w;
        g.edges_.push_back(e);
    }
    std::sort(g.edges_.begin(), g.edges_.end(),
              [](const RetweetGraph::Edge& a, const RetweetGraph::Edge& b) {
                  return a.src != b.src ? a.src < b.src : a.dst < b.dst;
              });
    g.out_weight_.assign(g.nodes_.size(), 0.0);
    for (const auto& e : g.edges_) {
        g.out_weight_[static_cast<std::size_t>(e.src)] += e.weight;
        g.total_weight_ += e.weight;
    }
    return g;
}

UndirectedGraph::UndirectedGraph(std::vector<UserId> sorted_nodes,
                                 std::vector<Edge> edges)
    : nodes_(std::move(sorted_nodes)), edges_(std::move(edges)) {
    if (!std::is_sorted(nodes_.begin(), nodes_.end()))
        throw ValidationError("undirected graph nodes must be sorted");
    index_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        index_.emplace(nodes_[i], static_cast<int>(i));
    if (index_.size() != nodes_.size())
        throw ValidationError("duplicate node ids in undirected graph");
    degree_.assign(nodes_.size(), 0.0);
    for (const Edge& e : edges_) {
        if (e.u == e.v) throw ValidationError("self-loop in undirected graph");
        if (e.u > e.v) throw ValidationError("undirected edge must have u < v");
        if (!(e.weight > 0.0)) throw ValidationError("non-positive undirected weight");
        degree_[static_cast<std::size_t>(e.u)] += e.weight;
        degree_[static_cast<std::size_t>(e.v)] += e.weight;
        total_weight_ += e.weight;
    }
}

int UndirectedGraph::node_index(const UserId& u) const {
    auto it = index_.find(u);
    if (it == index_.end()) throw ValidationError("unknown node '" + u + "'");
    return it->second;
}

void UndirectedGraph::write_edge_csv(std::ostream& out) const {
    out << "u,v,weight\n";
    for (const Edge& e : edges_) {
        out << nodes_[static_cast<std::size_t>(e.u)] << ','
            << nodes_[static_cast<std::size_t>(e.v)] << ',';
        write_double(out, e.weight);
        out << '\n';
    }
}

UndirectedGraph UndirectedGraph::read_edge_csv(std::istream& in) {
    std::map<std::pair<std::string, std::string>, double> weights;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "u,v,weight")
                throw DataError("expected edge header 'u,v,weight'");
            continue;
        }
        if (line.empty()) continue;
        try {
            auto f = split3(line);
            if (f[0] == f[1])
                throw DataError("self-loop on '" + f[0] + "'");
            auto key = f[0] < f[1] ? std::make_pair(f[0], f[1])
                                   : std::make_pair(f[1], f[0]);
            weights[key] += parse_weight(f[2]);
        } catch (const DataError& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    std::set<UserId> node_set;
    for (const auto& [key, w] : weights) {
        node_set.insert(key.first);
        node_set.insert(key.second);
    }
    std::vector<UserId> nodes(node_set.begin(), node_set.end());
    std::unordered_map<UserId, int> index;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        index.emplace(nodes[i], static_cast<int>(i));
    std::vector<Edge> edges;
    edges.reserve(weights.size());
    for (const auto& [key, w] : weights) {
        Edge e;
        int a = index.at(key.first);
        int b = index.at(key.second);
        e.u = std::min(a, b);
        e.v = std::max(a, b);
        e.weight = w;
        edges.push_back(e);
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return UndirectedGraph(std::move(nodes), std::move(edges));
}

UndirectedGraph UndirectedGraph::read_edge_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge file '" + path + "'");
    return read_edge_csv(in);
}

UndirectedGraph to_undirected(const RetweetGraph& g) {
    // Pairwise sum w(u->v) + w(v->u); single directed edges keep their weight.
    std::map<std::pair<int, int>, double> sums;
    for (const auto& e : g.edges()) {
        auto key = std::minmax(e.src, e.dst);
        sums[{key.first, key.second}] += e.weight;
    }
    std::vector<UndirectedGraph::Edge> edges;
    edges.reserve(sums.size());
    for (const auto& [key, w] : sums)
        edges.push_back({key.first, key.second, w});
    return UndirectedGraph(g.nodes(), std::move(edges));
}

}  // namespace retnet
