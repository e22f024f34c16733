#include "retnet/partition.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "retnet/errors.hpp"

namespace retnet {

Partition::Partition(int snapshot_id, std::vector<std::pair<UserId, int>> assignment)
    : snapshot_id_(snapshot_id) {
    std::sort(assignment.begin(), assignment.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    nodes_.reserve(assignment.size());
    labels_.reserve(assignment.size());
    std::unordered_map<int, int> relabel;
    for (const auto& [node, raw_label] : assignment) {
        if (node.empty()) throw ValidationError("empty user id in partition");
        if (!nodes_.empty() && nodes_.back() == node)
            throw ValidationError("node '" + node + "' assigned twice");
        auto [it, fresh] = relabel.emplace(raw_label, static_cast<int>(members_.size()));
        if (fresh) members_.emplace_back();
        nodes_.push_back(node);
        labels_.push_back(it->second);
        members_[static_cast<std::size_t>(it->second)].push_back(nodes_.size() - 1);
    }
    position_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) position_.emplace(nodes_[i], i);
}

std::size_t Partition::position_of(const UserId& u) const {
    auto it = position_.find(u);
    if (it == position_.end())
        throw ValidationError("node '" + u + "' not in partition");
    return it->second;
}

void Partition::write_csv(std::ostream& out) const {
    out << "user_id,community_id\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        out << nodes_[i] << ',' << labels_[i] << '\n';
}

Partition Partition::read_csv(std::istream& in, int snapshot_id) {
    std::vector<std::pair<UserId, int>> assignment;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "user_id,community_id")
                throw DataError("expected partition header 'user_id,community_id'");
            continue;
        }
        if (line.empty()) continue;
        auto comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0)
            throw DataError("line " + std::to_string(line_no) + ": expected 2 fields");
        int label = 0;
        const char* begin = line.data() + comma + 1;
        const char* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, label);
        if (ec != std::errc{} || ptr != end)
            throw DataError("line " + std::to_string(line_no) +
                            ": invalid community id '" + line.substr(comma + 1) + "'");
        assignment.emplace_back(line.substr(0, comma), label);
    }
    return Partition(snapshot_id, std::move(assignment));
}

Partition Partition::read_csv_file(const std::string& path, int snapshot_id) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open partition file '" + path + "'");
    return read_csv(in, snapshot_id);
}

}  // namespace retnet
