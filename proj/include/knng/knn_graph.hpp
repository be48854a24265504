#pragma once

#include <cstdint>
#include <vector>

#include "knng/sampling.hpp"

namespace knng {

// k-nearest-neighbour graph: directed selection lists plus the symmetrised
// adjacency (u ~ v iff either selects the other). Distance ties are broken by
// vertex id, so the graph is a deterministic function of the point set.
struct NeighborGraph {
    int k = 0;
    std::vector<std::vector<std::uint32_t>> out_neighbors;        // nearest first
    std::vector<std::vector<std::uint32_t>> undirected_adjacency;  // sorted ascending
    std::size_t edge_count = 0;
};

// Grid-bucketed exact build; O(m k) expected at unit intensity.
NeighborGraph build_graph(const PointSet& ps, int k);

// All-pairs reference implementation; must match build_graph bit for bit.
NeighborGraph brute_force_graph(const PointSet& ps, int k);

// Distance from v to its k-th nearest neighbour.
double kth_neighbor_radius(const NeighborGraph& g, const PointSet& ps, std::uint32_t v);

}  // namespace knng
