#pragma once

#include <cstdint>
#include <vector>

#include "knng/knn_graph.hpp"

namespace knng {

// Connected components of the undirected graph, ordered by smallest member
// id; member lists ascending.
std::vector<std::vector<std::uint32_t>> connected_components(const NeighborGraph& g);

struct ComponentInfo {
    std::uint32_t comp_id = 0;
    std::vector<std::uint32_t> vertices;  // ascending
    double diameter = 0.0;
    double min_boundary_distance = 0.0;
    bool is_giant = false;
    bool is_small = false;          // non-giant with diameter below the small bound
    bool in_boundary_strip = false;  // min_boundary_distance <= strip width
};

struct ComponentCensus {
    std::vector<ComponentInfo> components;
    std::size_t giant_index = 0;  // into components; meaningful when any exist
    double giant_fraction = 0.0;
    std::size_t small_count = 0;
    std::size_t boundary_small_count = 0;
    std::size_t interior_small_count = 0;
    double small_diameter_bound = 0.0;  // small_coeff * sqrt(ln area_n)
    // max over non-giant components of diameter / sqrt(ln area_n)
    double max_small_diameter_normalized = 0.0;
};

// Classifies components: the giant is the largest (ties to the smallest
// minimum vertex id); a component is small when its euclidean diameter is
// below small_coeff * sqrt(ln area_n); boundary membership is distance to the
// nearest window side at most boundary_strip.
ComponentCensus census(const NeighborGraph& g, const PointSet& ps, double boundary_strip,
                       double small_coeff);

struct OutsideWitness {
    std::uint32_t inside = 0;   // P: component vertex of the closest cross pair
    std::uint32_t outside = 0;  // Q: non-component vertex of that pair
    double distance = 0.0;      // r0
};

// Closest (component, non-component) vertex pair; ties broken by (inside id,
// outside id). Throws "no outside vertex" when the component is everything.
OutsideWitness nearest_outside_witness(const PointSet& ps,
                                       const std::vector<std::uint32_t>& component);

struct SmallPairDistance {
    std::uint32_t comp_a = 0;
    std::uint32_t comp_b = 0;
    double distance = 0.0;  // min point-to-point distance between the two
};

// Pairwise separations between small components (comp ids from the census).
std::vector<SmallPairDistance> small_pair_distance_census(const PointSet& ps,
                                                          const ComponentCensus& census);

// Smallest disc containing all the points (Welzl).
Disc min_enclosing_disc(const std::vector<Point>& pts);

struct ClosedVertexSet {
    std::vector<std::uint32_t> vertices;  // ascending
    Disc enclosing;
};

// Sink strongly-connected components of the directed selection relation:
// vertex sets closed under out-edges that are not the whole graph. size_cap 0
// means the default 4k.
std::vector<ClosedVertexSet> no_outdegree_subgraph_scan(const NeighborGraph& g,
                                                        const PointSet& ps,
                                                        std::size_t size_cap = 0);

}  // namespace knng
