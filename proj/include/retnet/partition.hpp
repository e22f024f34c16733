#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "retnet/event.hpp"

namespace retnet {

// Assignment of every node of one snapshot to exactly one community.
// Community ids are relabeled on construction to be contiguous from 0 in
// order of first appearance over the sorted node list, so logically equal
// assignments compare equal.
class Partition {
public:
    Partition() = default;

    // Pairs (node, community label); labels may be arbitrary ints.
    Partition(int snapshot_id, std::vector<std::pair<UserId, int>> assignment);

    int snapshot_id() const { return snapshot_id_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t community_count() const { return members_.size(); }

    const std::vector<UserId>& nodes() const { return nodes_; }  // sorted
    // Community id for the node at the given position in nodes().
    int label_at(std::size_t position) const { return labels_[position]; }
    bool contains(const UserId& u) const { return position_.count(u) != 0; }
    std::size_t position_of(const UserId& u) const;  // throws if absent
    int community_of(const UserId& u) const { return labels_[position_of(u)]; }

    // Node positions per community id.
    const std::vector<std::vector<std::size_t>>& communities() const { return members_; }
    std::size_t community_size(int community_id) const {
        return members_[static_cast<std::size_t>(community_id)].size();
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.nodes_ == b.nodes_ && a.labels_ == b.labels_;
    }

    void write_csv(std::ostream& out) const;  // header: user_id,community_id
    static Partition read_csv(std::istream& in, int snapshot_id);
    static Partition read_csv_file(const std::string& path, int snapshot_id);

private:
    int snapshot_id_ = -1;
    std::vector<UserId> nodes_;
    std::vector<int> labels_;
    std::vector<std::vector<std::size_t>> members_;
    std::unordered_map<UserId, std::size_t> position_;
};

}  // namespace retnet
