#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "retnet/event.hpp"

namespace retnet {

// Directed retweet graph: edge author -> retweeter, weight = (decayed)
// retweet count. Immutable after construction; no self-loops; weights > 0.
// Node order is lexicographic, so identical inputs give identical layouts.
class RetweetGraph {
public:
    struct Edge {
        int src = 0;
        int dst = 0;
        double weight = 0.0;
    };

    RetweetGraph() = default;

    int snapshot_id() const { return snapshot_id_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<UserId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }  // sorted by (src, dst)
    const UserId& node_name(int index) const { return nodes_[static_cast<std::size_t>(index)]; }

    bool has_node(const UserId& u) const { return index_.count(u) != 0; }
    int node_index(const UserId& u) const;  // throws ValidationError if absent

    // Sum of weights of edges leaving u; 0 for sinks and isolated nodes.
    double weighted_out_degree(const UserId& u) const;
    double weighted_out_degree(int index) const {
        return out_weight_[static_cast<std::size_t>(index)];
    }

    double total_weight() const { return total_weight_; }

    void write_edge_csv(std::ostream& out) const;  // header: src,dst,weight
    static RetweetGraph read_edge_csv(std::istream& in, int snapshot_id);

private:
    friend class RetweetGraphBuilder;

    int snapshot_id_ = -1;
    std::vector<UserId> nodes_;  // sorted lexicographically
    std::unordered_map<UserId, int> index_;
    std::vector<Edge> edges_;
    std::vector<double> out_weight_;
    double total_weight_ = 0.0;
};

// Accumulates edge weights, then freezes into a RetweetGraph.
class RetweetGraphBuilder {
public:
    // Adds w to weight(author -> retweeter). Rejects self-loops and w <= 0.
    void add_edge(const UserId& author, const UserId& retweeter, double w);
    void add_node(const UserId& u);  // explicit isolated node

    RetweetGraph build(int snapshot_id) const;

private:
    std::unordered_map<std::string, double> weights_;  // key "author\tretweeter"
    std::vector<UserId> extra_nodes_;
};

// Undirected weighted graph; each unordered pair stored once.
class UndirectedGraph {
public:
    struct Edge {
        int u = 0;
        int v = 0;        // u < v
        double weight = 0.0;
    };

    UndirectedGraph() = default;
    UndirectedGraph(std::vector<UserId> sorted_nodes, std::vector<Edge> edges);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<UserId>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const UserId& node_name(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
    bool has_node(const UserId& u) const { return index_.count(u) != 0; }
    int node_index(const UserId& u) const;

    double total_weight() const { return total_weight_; }
    double weighted_degree(int index) const {
        return degree_[static_cast<std::size_t>(index)];
    }

    void write_edge_csv(std::ostream& out) const;  // header: u,v,weight
    static UndirectedGraph read_edge_csv(std::istream& in);
    static UndirectedGraph read_edge_csv_file(const std::string& path);

private:
    std::vector<UserId> nodes_;
    std::unordered_map<UserId, int> index_;
    std::vector<Edge> edges_;
    std::vector<double> degree_;
    double total_weight_ = 0.0;
};

// Drops edge direction; antiparallel edge pairs sum their weights.
// The node set is preserved, isolated nodes included.
UndirectedGraph to_undirected(const RetweetGraph& g);

}  // namespace retnet
