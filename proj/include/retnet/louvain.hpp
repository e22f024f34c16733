#pragma once

#include <cstdint>

#include "retnet/graph.hpp"
#include "retnet/partition.hpp"

namespace retnet {

// Newman modularity, weighted form:
//   Q = (1/2m) * sum_uv [w_uv - k_u*k_v/(2m)] * delta(c_u, c_v)
// The partition must cover exactly the nodes of g; throws ValidationError
// on an edgeless graph (m = 0 leaves Q undefined).
double modularity(const UndirectedGraph& g, const Partition& p);

// Louvain heuristic: seeded-shuffle local moves (accepted only on strictly
// positive modularity gain, ties broken by the first community encountered),
// followed by community aggregation, repeated until no move improves Q.
// Deterministic for a fixed seed. Isolated nodes end up as singletons.
Partition louvain(const UndirectedGraph& g, std::uint64_t seed,
                  int snapshot_id = -1);

}  // namespace retnet
