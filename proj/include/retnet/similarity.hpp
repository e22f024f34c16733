#pragma once

#include <utility>
#include <vector>

#include "retnet/partition.hpp"

namespace retnet {

struct SimilarityScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;  // harmonic mean; 0 when precision + recall == 0
};

// Decomposition of a (reference, candidate) partition pair into the node
// overlap and the partition-specific remainders, with both partitions'
// communities restricted to the overlap. Precomputes the contingency table
// all scores are derived from.
class PartitionPair {
public:
    PartitionPair(const Partition& reference, const Partition& candidate);

    std::size_t overlap_size() const { return overlap_.size(); }
    std::size_t reference_only() const;  // |R_0|
    std::size_t candidate_only() const;  // |R_1|

    // BCubed precision/recall of one overlap node, communities restricted
    // to the overlap. Throws ValidationError for nodes outside the overlap.
    std::pair<double, double> node_precision_recall(const UserId& n) const;

    // Mean node precision/recall; requires identical node sets.
    SimilarityScore core_f1() const;
    // Core scores scaled by the overlap fractions; empty overlap gives 0.
    SimilarityScore standard_f1() const;
    // Sorensen-Dice coefficient of the node sets: the F1 ceiling reached
    // when each partition's overlap forms a single community.
    double max_f1() const;

private:
    const Partition& ref_;
    const Partition& cand_;
    struct Cell {
        int ref_comm;
        int cand_comm;
        std::size_t count;
    };
    std::vector<std::size_t> overlap_;        // positions in ref_, ascending
    std::vector<Cell> cells_;                  // sorted by (ref_comm, cand_comm)
    std::vector<std::size_t> ref_restricted_;  // overlap size per ref community
    std::vector<std::size_t> cand_restricted_;
    double sum_precision_ = 0.0;  // sum over overlap nodes of Pre(n)
    double sum_recall_ = 0.0;
    bool identical_nodes_ = false;

    friend double nmi(const Partition&, const Partition&);
    friend double ari(const Partition&, const Partition&);
};

std::pair<double, double> bcubed_node(const UserId& n, const Partition& reference,
                                      const Partition& candidate);
SimilarityScore core_f1(const Partition& reference, const Partition& candidate);
SimilarityScore standard_f1(const Partition& reference, const Partition& candidate);
double max_f1(const Partition& reference, const Partition& candidate);

// Bijection between the Dice-style F1 and the Jaccard index.
double f1_to_jaccard(double f1);
double jaccard_to_f1(double jaccard);

// Contingency-table NMI (arithmetic-mean normalization) and ARI over
// identical node sets; mismatched node sets throw ValidationError.
double nmi(const Partition& p, const Partition& q);
double ari(const Partition& p, const Partition& q);

}  // namespace retnet
