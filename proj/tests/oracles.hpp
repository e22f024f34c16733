#pragma once

// Independent oracles used by the unit and acceptance suites. Everything
// here is deliberately brute force and shares no code with the library
// implementations it checks.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "retnet/partition.hpp"

namespace retnet::oracle {

// All set partitions of {0..n-1} as restricted-growth label strings.
inline std::vector<std::vector<int>> enumerate_set_partitions(int n) {
    std::vector<std::vector<int>> result;
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    auto recurse = [&](auto&& self, int index, int max_used) -> void {
        if (index == n) {
            result.push_back(labels);
            return;
        }
        for (int label = 0; label <= max_used + 1; ++label) {
            labels[static_cast<std::size_t>(index)] = label;
            self(self, index + 1, std::max(max_used, label));
        }
    };
    recurse(recurse, 0, -1);
    return result;
}

struct PRF {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// BCubed by the book: materializes L(n) and C(n) for every overlap node.
// Works on any node sets; restriction to the overlap included.
inline PRF brute_core_f1(const Partition& reference, const Partition& candidate) {
    std::set<UserId> overlap;
    for (const auto& node : reference.nodes())
        if (candidate.contains(node)) overlap.insert(node);
    PRF out;
    if (overlap.empty()) return out;
    double sum_pre = 0.0, sum_rec = 0.0;
    for (const auto& node : overlap) {
        std::set<UserId> L, C;
        for (const auto& other : overlap) {
            if (reference.community_of(other) == reference.community_of(node))
                L.insert(other);
            if (candidate.community_of(other) == candidate.community_of(node))
                C.insert(other);
        }
        std::size_t both = 0;
        for (const auto& member : L)
            if (C.count(member)) ++both;
        sum_pre += static_cast<double>(both) / static_cast<double>(C.size());
        sum_rec += static_cast<double>(both) / static_cast<double>(L.size());
    }
    out.precision = sum_pre / static_cast<double>(overlap.size());
    out.recall = sum_rec / static_cast<double>(overlap.size());
    if (out.precision + out.recall > 0)
        out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

// Exact-rational BCubed sums for label vectors over one fixed universe.
// Returned as long doubles computed from integer numerators over the lcm
// denominator, so two oracles runs agree bit for bit.
struct ExactPRF {
    long double precision = 0.0L;
    long double recall = 0.0L;
};

inline ExactPRF exact_core_sums(const std::vector<int>& ref_labels,
                                const std::vector<int>& cand_labels) {
    const std::size_t n = ref_labels.size();
    // lcm(1..n) for n <= 8 is 840
    const std::int64_t lcm = 840;
    std::int64_t pre_num = 0, rec_num = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t both = 0, in_ref = 0, in_cand = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const bool same_ref = ref_labels[j] == ref_labels[i];
            const bool same_cand = cand_labels[j] == cand_labels[i];
            if (same_ref) ++in_ref;
            if (same_cand) ++in_cand;
            if (same_ref && same_cand) ++both;
        }
        pre_num += both * (lcm / in_cand);
        rec_num += both * (lcm / in_ref);
    }
    ExactPRF out;
    out.precision = static_cast<long double>(pre_num) /
                    (static_cast<long double>(lcm) * static_cast<long double>(n));
    out.recall = static_cast<long double>(rec_num) /
                 (static_cast<long double>(lcm) * static_cast<long double>(n));
    return out;
}

struct Contingency {
    std::map<std::pair<int, int>, std::int64_t> cells;
    std::map<int, std::int64_t> row;  // reference community sizes
    std::map<int, std::int64_t> col;
    std::int64_t n = 0;
};

inline Contingency contingency_of(const Partition& p, const Partition& q) {
    Contingency table;
    for (const auto& node : p.nodes()) {
        const int a = p.community_of(node);
        const int b = q.community_of(node);
        ++table.cells[{a, b}];
        ++table.row[a];
        ++table.col[b];
        ++table.n;
    }
    return table;
}

inline double brute_nmi(const Partition& p, const Partition& q) {
    const Contingency t = contingency_of(p, q);
    const double n = static_cast<double>(t.n);
    double mi = 0.0;
    for (const auto& [key, count] : t.cells) {
        const double pij = static_cast<double>(count) / n;
        const double pi = static_cast<double>(t.row.at(key.first)) / n;
        const double pj = static_cast<double>(t.col.at(key.second)) / n;
        mi += pij * std::log(pij / (pi * pj));
    }
    double hp = 0.0, hq = 0.0;
    for (const auto& [label, count] : t.row) {
        const double frac = static_cast<double>(count) / n;
        hp -= frac * std::log(frac);
    }
    for (const auto& [label, count] : t.col) {
        const double frac = static_cast<double>(count) / n;
        hq -= frac * std::log(frac);
    }
    if (hp + hq == 0.0) return 1.0;
    if (mi <= 0.0) return 0.0;
    return 2.0 * mi / (hp + hq);
}

inline double brute_ari(const Partition& p, const Partition& q) {
    const Contingency t = contingency_of(p, q);
    auto comb2 = [](std::int64_t x) -> long double {
        return static_cast<long double>(x) * (static_cast<long double>(x) - 1) / 2;
    };
    long double index = 0, sum_a = 0, sum_b = 0;
    for (const auto& [key, count] : t.cells) index += comb2(count);
    for (const auto& [label, count] : t.row) sum_a += comb2(count);
    for (const auto& [label, count] : t.col) sum_b += comb2(count);
    const long double total = comb2(t.n);
    if (total == 0) return 1.0;
    const long double expected = sum_a * sum_b / total;
    const long double denom = (sum_a + sum_b) / 2 - expected;
    if (denom == 0) return 1.0;
    return static_cast<double>((index - expected) / denom);
}

// Direct definition: the largest h such that at least h posts have at
// least h retweets each.
inline int brute_h_index(const std::vector<std::int64_t>& counts) {
    int best = 0;
    for (int h = 0; h <= static_cast<int>(counts.size()); ++h) {
        int qualifying = 0;
        for (std::int64_t c : counts)
            if (c >= h) ++qualifying;
        if (qualifying >= h) best = h;
    }
    return best;
}

// O(n^2) modularity straight from the definition, over an explicit
// adjacency map.
inline double brute_modularity(const std::vector<std::vector<double>>& adjacency,
                               const std::vector<int>& labels) {
    const std::size_t n = adjacency.size();
    double two_m = 0.0;
    std::vector<double> degree(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) degree[i] += adjacency[i][j];
        two_m += degree[i];
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (labels[i] != labels[j]) continue;
            q += adjacency[i][j] - degree[i] * degree[j] / two_m;
        }
    }
    return q / two_m;
}

}  // namespace retnet::oracle
