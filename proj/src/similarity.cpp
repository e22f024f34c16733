#include "retnet/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "retnet/errors.hpp"

namespace retnet {
namespace {

double harmonic(double p, double r) {
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace

PartitionPair::PartitionPair(const Partition& reference, const Partition& candidate)
    : ref_(reference), cand_(candidate) {
    identical_nodes_ = ref_.nodes() == cand_.nodes();

    // (ref position, cand position) pairs of the overlap; both node lists
    // are sorted, so a merge walk finds the intersection.
    std::vector<std::pair<std::size_t, std::size_t>> matched;
    if (identical_nodes_) {
        matched.reserve(ref_.node_count());
        for (std::size_t i = 0; i < ref_.node_count(); ++i) matched.push_back({i, i});
    } else {
        const auto& a = ref_.nodes();
        const auto& b = cand_.nodes();
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) {
                ++i;
            } else if (b[j] < a[i]) {
                ++j;
            } else {
                matched.push_back({i, j});
                ++i;
                ++j;
            }
        }
    }

    overlap_.reserve(matched.size());
    ref_restricted_.assign(ref_.community_count(), 0);
    cand_restricted_.assign(cand_.community_count(), 0);
    std::vector<Cell> raw;
    raw.reserve(matched.size());
    for (const auto& [ri, ci] : matched) {
        overlap_.push_back(ri);
        const int lc = ref_.label_at(ri);
        const int cc = cand_.label_at(ci);
        ++ref_restricted_[static_cast<std::size_t>(lc)];
        ++cand_restricted_[static_cast<std::size_t>(cc)];
        raw.push_back({lc, cc, 1});
    }
    std::sort(raw.begin(), raw.end(), [](const Cell& a, const Cell& b) {
        return a.ref_comm != b.ref_comm ? a.ref_comm < b.ref_comm
                                        : a.cand_comm < b.cand_comm;
    });
    for (const Cell& c : raw) {
        if (!cells_.empty() && cells_.back().ref_comm == c.ref_comm &&
            cells_.back().cand_comm == c.cand_comm) {
            ++cells_.back().count;
        } else {
            cells_.push_back(c);
        }
    }

    for (const Cell& c : cells_) {
        const double n_lc = static_cast<double>(c.count);
        sum_precision_ +=
            n_lc * n_lc /
            static_cast<double>(cand_restricted_[static_cast<std::size_t>(c.cand_comm)]);
        sum_recall_ +=
            n_lc * n_lc /
            static_cast<double>(ref_restricted_[static_cast<std::size_t>(c.ref_comm)]);
    }
}

std::size_t PartitionPair::reference_only() const {
    return ref_.node_count() - overlap_.size();
}

std::size_t PartitionPair::candidate_only() const {
    return cand_.node_count() - overlap_.size();
}

std::pair<double, double> PartitionPair::node_precision_recall(const UserId& n) const {
    if (!ref_.contains(n) || !cand_.contains(n))
        throw ValidationError("node '" + n + "' is not in the overlap");
    const int lc = ref_.label_at(ref_.position_of(n));
    const int cc = cand_.label_at(cand_.position_of(n));
    auto it = std::lower_bound(
        cells_.begin(), cells_.end(), std::make_pair(lc, cc),
        [](const Cell& cell, const std::pair<int, int>& key) {
            return cell.ref_comm != key.first ? cell.ref_comm < key.first
                                              : cell.cand_comm < key.second;
        });
    const double both = static_cast<double>(it->count);  // node's own cell exists
    const double pre =
        both / static_cast<double>(cand_restricted_[static_cast<std::size_t>(cc)]);
    const double rec =
        both / static_cast<double>(ref_restricted_[static_cast<std::size_t>(lc)]);
    return {pre, rec};
}

SimilarityScore PartitionPair::core_f1() const {
    if (ref_.node_count() == 0 || cand_.node_count() == 0)
        throw ValidationError("core F1 requires non-empty partitions");
    if (!identical_nodes_)
        throw ValidationError("core F1 requires identical node sets");
    SimilarityScore s;
    const double n = static_cast<double>(overlap_.size());
    s.precision = sum_precision_ / n;
    s.recall = sum_recall_ / n;
    s.f1 = harmonic(s.precision, s.recall);
    return s;
}

SimilarityScore PartitionPair::standard_f1() const {
    SimilarityScore s;
    if (overlap_.empty()) return s;  // disjoint node sets score 0
    // (|overlap| / |P1|) * mean Pre over the overlap collapses to
    // sum Pre / |P1|; recall likewise against |P0|.
    s.precision = sum_precision_ / static_cast<double>(cand_.node_count());
    s.recall = sum_recall_ / static_cast<double>(ref_.node_count());
    s.f1 = harmonic(s.precision, s.recall);
    return s;
}

double PartitionPair::max_f1() const {
    const std::size_t total = ref_.node_count() + cand_.node_count();
    if (total == 0)
        throw ValidationError("max F1 undefined for two empty partitions");
    return 2.0 * static_cast<double>(overlap_.size()) / static_cast<double>(total);
}

std::pair<double, double> bcubed_node(const UserId& n, const Partition& reference,
                                      const Partition& candidate) {
    return PartitionPair(reference, candidate).node_precision_recall(n);
}

SimilarityScore core_f1(const Partition& reference, const Partition& candidate) {
    return PartitionPair(reference, candidate).core_f1();
}

SimilarityScore standard_f1(const Partition& reference, const Partition& candidate) {
    return PartitionPair(reference, candidate).standard_f1();
}

double max_f1(const Partition& reference, const Partition& candidate) {
    return PartitionPair(reference, candidate).max_f1();
}

double f1_to_jaccard(double f1) {
    if (f1 < 0.0 || f1 > 1.0) throw ValidationError("F1 must be in [0, 1]");
    return f1 / (2.0 - f1);
}

double jaccard_to_f1(double jaccard) {
    if (jaccard < 0.0 || jaccard > 1.0)
        throw ValidationError("Jaccard index must be in [0, 1]");
    return 2.0 * jaccard / (1.0 + jaccard);
}

double nmi(const Partition& p, const Partition& q) {
    if (p.nodes() != q.nodes())
        throw ValidationError("NMI requires identical node sets");
    if (p.node_count() == 0) throw ValidationError("NMI of empty partitions");
    if (p.community_count() == 1 && q.community_count() == 1) return 1.0;

    PartitionPair pair(p, q);
    const double n = static_cast<double>(p.node_count());
    double mi = 0.0;
    for (const auto& c : pair.cells_) {
        const double joint = static_cast<double>(c.count) / n;
        const double a =
            static_cast<double>(pair.ref_restricted_[static_cast<std::size_t>(c.ref_comm)]);
        const double b = static_cast<double>(
            pair.cand_restricted_[static_cast<std::size_t>(c.cand_comm)]);
        mi += joint * std::log(n * static_cast<double>(c.count) / (a * b));
    }
    auto entropy = [n](const std::vector<std::size_t>& sizes) {
        double h = 0.0;
        for (std::size_t s : sizes) {
            if (s == 0) continue;
            const double frac = static_cast<double>(s) / n;
            h -= frac * std::log(frac);
        }
        return h;
    };
    const double hp = entropy(pair.ref_restricted_);
    const double hq = entropy(pair.cand_restricted_);
    if (mi <= 0.0) return 0.0;
    const double value = 2.0 * mi / (hp + hq);
    return std::clamp(value, 0.0, 1.0);
}

double ari(const Partition& p, const Partition& q) {
    if (p.nodes() != q.nodes())
        throw ValidationError("ARI requires identical node sets");
    if (p.node_count() == 0) throw ValidationError("ARI of empty partitions");

    PartitionPair pair(p, q);
    // long double: pair-count products overflow double's 53-bit mantissa
    // already around 20k nodes.
    auto comb2 = [](std::size_t x) -> long double {
        return static_cast<long double>(x) * (static_cast<long double>(x) - 1) / 2;
    };
    long double index = 0;
    for (const auto& c : pair.cells_) index += comb2(c.count);
    long double sum_a = 0, sum_b = 0;
    for (std::size_t s : pair.ref_restricted_) sum_a += comb2(s);
    for (std::size_t s : pair.cand_restricted_) sum_b += comb2(s);
    const long double total = comb2(p.node_count());
    if (total == 0) return 1.0;  // single node: identical trivial partitions
    const long double expected = sum_a * sum_b / total;
    const long double max_index = (sum_a + sum_b) / 2;
    const long double denom = max_index - expected;
    if (std::abs(static_cast<double>(denom)) < 1e-12) return 1.0;
    return static_cast<double>((index - expected) / denom);
}

}  // namespace retnet
