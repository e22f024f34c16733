#include "retnet/louvain.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "retnet/errors.hpp"
#include "retnet/rng.hpp"

namespace retnet {
namespace {

// Net modularity gains below this are treated as zero; guarantees
// termination since every accepted move then raises Q by at least kGainEps.
constexpr double kGainEps = 1e-12;

// Aggregated working graph. Self-loops carry intra-community weight and
// count twice in the degree, so sum(degree) == 2m at every level.
struct LevelGraph {
    std::size_t n = 0;
    std::vector<std::size_t> adj_start;  // n+1
    std::vector<int> adj_node;
    std::vector<double> adj_weight;
    std::vector<double> self_weight;  // per node, counted once in m
    std::vector<double> degree;       // sum of incident weights + 2*self
    double m = 0.0;                   // total weight
};

LevelGraph from_undirected(const UndirectedGraph& g) {
    LevelGraph lg;
    lg.n = g.node_count();
    std::vector<std::size_t> counts(lg.n, 0);
    for (const auto& e : g.edges()) {
        ++counts[static_cast<std::size_t>(e.u)];
        ++counts[static_cast<std::size_t>(e.v)];
    }
    lg.adj_start.assign(lg.n + 1, 0);
    for (std::size_t i = 0; i < lg.n; ++i)
        lg.adj_start[i + 1] = lg.adj_start[i] + counts[i];
    lg.adj_node.resize(lg.adj_start[lg.n]);
    lg.adj_weight.resize(lg.adj_start[lg.n]);
    std::vector<std::size_t> cursor(lg.adj_start.begin(), lg.adj_start.end() - 1);
    for (const auto& e : g.edges()) {
        lg.adj_node[cursor[e.u]] = e.v;
        lg.adj_weight[cursor[e.u]++] = e.weight;
        lg.adj_node[cursor[e.v]] = e.u;
        lg.adj_weight[cursor[e.v]++] = e.weight;
    }
    lg.self_weight.assign(lg.n, 0.0);
    lg.degree.assign(lg.n, 0.0);
    for (std::size_t u = 0; u < lg.n; ++u) {
        for (std::size_t s = lg.adj_start[u]; s < lg.adj_start[u + 1]; ++s)
            lg.degree[u] += lg.adj_weight[s];
    }
    lg.m = g.total_weight();
    return lg;
}

// One round of local moves. comm is updated in place; returns whether any
// node changed community.
bool local_moves(const LevelGraph& g, std::vector<int>& comm, SplitMix64& rng) {
    std::vector<double> tot(g.n, 0.0);
    for (std::size_t u = 0; u < g.n; ++u)
        tot[static_cast<std::size_t>(comm[u])] += g.degree[u];

    std::vector<double> weight_to(g.n, 0.0);
    std::vector<int> touched;
    touched.reserve(64);
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);

    const double inv_2m = 1.0 / (2.0 * g.m);
    bool any_move = false;
    bool moved_this_pass = true;
    while (moved_this_pass) {
        moved_this_pass = false;
        shuffle(order, rng);  // fresh visit order each pass
        for (int u : order) {
            const std::size_t su = static_cast<std::size_t>(u);
            const int old_comm = comm[su];
            const double k_u = g.degree[su];

            touched.clear();
            for (std::size_t s = g.adj_start[su]; s < g.adj_start[su + 1]; ++s) {
                const int c = comm[static_cast<std::size_t>(g.adj_node[s])];
                if (weight_to[static_cast<std::size_t>(c)] == 0.0)
                    touched.push_back(c);
                weight_to[static_cast<std::size_t>(c)] += g.adj_weight[s];
            }

            tot[static_cast<std::size_t>(old_comm)] -= k_u;
            // Gain of joining c (u currently detached):
            //   w(u,c) - tot_c * k_u / 2m.
            // Baseline is re-joining the old community; strict improvement
            // keeps the first-encountered community on ties.
            double best_gain = weight_to[static_cast<std::size_t>(old_comm)] -
                               tot[static_cast<std::size_t>(old_comm)] * k_u * inv_2m;
            int best = old_comm;
            for (int c : touched) {
                if (c == old_comm) continue;
                const double gain = weight_to[static_cast<std::size_t>(c)] -
                                    tot[static_cast<std::size_t>(c)] * k_u * inv_2m;
                if (gain > best_gain + kGainEps) {
                    best_gain = gain;
                    best = c;
                }
            }
            tot[static_cast<std::size_t>(best)] += k_u;
            comm[su] = best;
            if (best != old_comm) {
                moved_this_pass = true;
                any_move = true;
            }
            for (int c : touched) weight_to[static_cast<std::size_t>(c)] = 0.0;
            weight_to[static_cast<std::size_t>(old_comm)] = 0.0;
        }
    }
    return any_move;
}

// Renumber communities contiguously in order of first appearance.
std::size_t compact_labels(std::vector<int>& comm) {
    std::vector<int> remap(comm.size(), -1);
    int next = 0;
    for (int& c : comm) {
        if (remap[static_cast<std::size_t>(c)] < 0)
            remap[static_cast<std::size_t>(c)] = next++;
        c = remap[static_cast<std::size_t>(c)];
    }
    return static_cast<std::size_t>(next);
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& comm,
                     std::size_t n_comms) {
    LevelGraph ag;
    ag.n = n_comms;
    ag.self_weight.assign(n_comms, 0.0);
    std::map<std::pair<int, int>, double> agg_edges;
    for (std::size_t u = 0; u < g.n; ++u) {
        const int cu = comm[u];
        ag.self_weight[static_cast<std::size_t>(cu)] += g.self_weight[u];
        for (std::size_t s = g.adj_start[u]; s < g.adj_start[u + 1]; ++s) {
            const int v = g.adj_node[s];
            if (v < static_cast<int>(u)) continue;  // each undirected edge once
            const int cv = comm[static_cast<std::size_t>(v)];
            if (cu == cv) {
                ag.self_weight[static_cast<std::size_t>(cu)] += g.adj_weight[s];
            } else {
                agg_edges[std::minmax(cu, cv)] += g.adj_weight[s];
            }
        }
    }
    std::vector<std::size_t> counts(n_comms, 0);
    for (const auto& [key, w] : agg_edges) {
        ++counts[static_cast<std::size_t>(key.first)];
        ++counts[static_cast<std::size_t>(key.second)];
    }
    ag.adj_start.assign(n_comms + 1, 0);
    for (std::size_t i = 0; i < n_comms; ++i)
        ag.adj_start[i + 1] = ag.adj_start[i] + counts[i];
    ag.adj_node.resize(ag.adj_start[n_comms]);
    ag.adj_weight.resize(ag.adj_start[n_comms]);
    std::vector<std::size_t> cursor(ag.adj_start.begin(), ag.adj_start.end() - 1);
    for (const auto& [key, w] : agg_edges) {
        ag.adj_node[cursor[static_cast<std::size_t>(key.first)]] = key.second;
        ag.adj_weight[cursor[static_cast<std::size_t>(key.first)]++] = w;
        ag.adj_node[cursor[static_cast<std::size_t>(key.second)]] = key.first;
        ag.adj_weight[cursor[static_cast<std::size_t>(key.second)]++] = w;
    }
    ag.degree.assign(n_comms, 0.0);
    ag.m = 0.0;
    for (std::size_t u = 0; u < n_comms; ++u) {
        for (std::size_t s = ag.adj_start[u]; s < ag.adj_start[u + 1]; ++s)
            ag.degree[u] += ag.adj_weight[s];
        ag.degree[u] += 2.0 * ag.self_weight[u];
        ag.m += ag.self_weight[u];
    }
    for (const auto& [key, w] : agg_edges) ag.m += w;
    return ag;
}

}  // namespace

double modularity(const UndirectedGraph& g, const Partition& p) {
    if (g.nodes() != p.nodes())
        throw ValidationError("partition does not cover exactly the graph's nodes");
    const double m = g.total_weight();
    if (!(m > 0.0))
        throw ValidationError("modularity undefined on a graph with no edges");
    double internal = 0.0;
    for (const auto& e : g.edges()) {
        if (p.label_at(static_cast<std::size_t>(e.u)) ==
            p.label_at(static_cast<std::size_t>(e.v)))
            internal += e.weight;
    }
    std::vector<double> tot(p.community_count(), 0.0);
    for (std::size_t i = 0; i < g.node_count(); ++i)
        tot[static_cast<std::size_t>(p.label_at(i))] +=
            g.weighted_degree(static_cast<int>(i));
    double q = internal / m;
    const double inv_2m = 1.0 / (2.0 * m);
    for (double t : tot) q -= (t * inv_2m) * (t * inv_2m);
    return q;
}

Partition louvain(const UndirectedGraph& g, std::uint64_t seed, int snapshot_id) {
    if (g.node_count() == 0)
        throw ValidationError("louvain requires a non-empty graph");

    std::vector<int> final_label(g.node_count());
    std::iota(final_label.begin(), final_label.end(), 0);

    if (g.total_weight() > 0.0) {
        SplitMix64 rng(seed);
        LevelGraph lg = from_undirected(g);
        while (true) {
            std::vector<int> comm(lg.n);
            std::iota(comm.begin(), comm.end(), 0);
            if (!local_moves(lg, comm, rng)) break;
            const std::size_t n_comms = compact_labels(comm);
            for (int& label : final_label)
                label = comm[static_cast<std::size_t>(label)];
            if (n_comms == lg.n) break;  // no compression left
            lg = aggregate(lg, comm, n_comms);
        }
    }
    // Edgeless graphs keep identity labels: all singletons.

    std::vector<std::pair<UserId, int>> assignment;
    assignment.reserve(g.node_count());
    for (std::size_t i = 0; i < g.node_count(); ++i)
        assignment.emplace_back(g.nodes()[i], final_label[i]);
    return Partition(snapshot_id, std::move(assignment));
}

}  // namespace retnet
