#include <doctest.h>

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "knng/knn_graph.hpp"
#include "knng/sampling.hpp"

using namespace knng;

namespace {

std::set<std::pair<std::uint32_t, std::uint32_t>> edge_set(const NeighborGraph& g) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < g.undirected_adjacency.size(); ++u)
        for (std::uint32_t v : g.undirected_adjacency[u])
            if (u < v) edges.insert({u, v});
    return edges;
}

void check_graphs_identical(const NeighborGraph& a, const NeighborGraph& b) {
    REQUIRE(a.k == b.k);
    REQUIRE(a.out_neighbors.size() == b.out_neighbors.size());
    for (std::size_t v = 0; v < a.out_neighbors.size(); ++v) {
        REQUIRE_MESSAGE(a.out_neighbors[v] == b.out_neighbors[v], "out-list differs at vertex ",
                        v);
    }
    REQUIRE(a.undirected_adjacency == b.undirected_adjacency);
    REQUIRE(a.edge_count == b.edge_count);
}

}  // namespace

TEST_SUITE_BEGIN("knn_graph");

TEST_CASE("grid build equals brute force bit-exactly") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        const PointSet ps = sample_poisson_square(SquareWorld{600.0}, seed);
        for (int k : {1, 2, 5, 12}) {
            const NeighborGraph fast = build_graph(ps, k);
            const NeighborGraph brute = brute_force_graph(ps, k);
            check_graphs_identical(fast, brute);
        }
    }
}

TEST_CASE("tied distances resolve identically to the oracle") {
    // Integer lattice: many exactly-equal candidate distances.
    PointSet ps;
    ps.world = SquareWorld{100.0};
    ps.seed = 0;
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 10; ++x) ps.points.push_back({static_cast<double>(x) + 0.05,
                                                           static_cast<double>(y) + 0.05});
    for (int k : {1, 3, 4, 8}) {
        const NeighborGraph fast = build_graph(ps, k);
        const NeighborGraph brute = brute_force_graph(ps, k);
        check_graphs_identical(fast, brute);
        const NeighborGraph again = build_graph(ps, k);
        check_graphs_identical(fast, again);
    }
}

TEST_CASE("points outside the nominal window are handled") {
    PointSet ps;
    ps.world = SquareWorld{25.0};
    ps.seed = 0;
    ps.points = {{-3.0, -4.0}, {0.5, 0.5}, {1.0, 4.0}, {6.0, 7.5}, {9.0, -2.0},
                 {2.0, 2.0},   {4.4, 4.4}, {8.0, 8.0}, {3.3, 0.1}};
    for (int k : {1, 2, 4}) {
        check_graphs_identical(build_graph(ps, k), brute_force_graph(ps, k));
    }
}

TEST_CASE("structural invariants") {
    const PointSet ps = sample_poisson_square(SquareWorld{400.0}, 77);
    const int k = 4;
    const NeighborGraph g = build_graph(ps, k);
    const std::size_t m = ps.points.size();
    REQUIRE(g.out_neighbors.size() == m);

    std::size_t degree_sum = 0;
    for (std::uint32_t u = 0; u < m; ++u) {
        CHECK(g.out_neighbors[u].size() == static_cast<std::size_t>(k));
        // Out-lists strictly ordered by (distance, id), no self, no duplicates.
        for (std::size_t i = 0; i < g.out_neighbors[u].size(); ++i) {
            const std::uint32_t v = g.out_neighbors[u][i];
            CHECK(v != u);
            if (i > 0) {
                const std::uint32_t w = g.out_neighbors[u][i - 1];
                const double dw = dist2(ps.points[u], ps.points[w]);
                const double dv = dist2(ps.points[u], ps.points[v]);
                CHECK((dw < dv || (dw == dv && w < v)));
            }
        }
        // Undirected adjacency is sorted, unique, symmetric.
        const auto& adj = g.undirected_adjacency[u];
        CHECK(std::is_sorted(adj.begin(), adj.end()));
        CHECK(std::adjacent_find(adj.begin(), adj.end()) == adj.end());
        CHECK(adj.size() >= static_cast<std::size_t>(k));  // undirected degree >= k
        degree_sum += adj.size();
        for (std::uint32_t v : adj) {
            const auto& back = g.undirected_adjacency[v];
            CHECK(std::binary_search(back.begin(), back.end(), u));
        }
    }
    CHECK(g.edge_count == degree_sum / 2);
}

TEST_CASE("edge sets grow with k") {
    const PointSet ps = sample_poisson_square(SquareWorld{300.0}, 13);
    auto prev = edge_set(build_graph(ps, 1));
    for (int k = 2; k <= 6; ++k) {
        auto cur = edge_set(build_graph(ps, k));
        CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
        prev = std::move(cur);
    }
}

TEST_CASE("kth neighbour radius matches the out-list") {
    const PointSet ps = sample_poisson_square(SquareWorld{200.0}, 21);
    const int k = 3;
    const NeighborGraph g = build_graph(ps, k);
    for (std::uint32_t v = 0; v < ps.points.size(); ++v) {
        const std::uint32_t last = g.out_neighbors[v].back();
        CHECK(kth_neighbor_radius(g, ps, v) == dist(ps.points[v], ps.points[last]));
    }
}

TEST_CASE("precondition errors") {
    const PointSet ps = sample_poisson_square(SquareWorld{50.0}, 2);
    CHECK_THROWS_AS(build_graph(ps, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_graph(ps, -3), std::invalid_argument);
    PointSet tiny;
    tiny.world = SquareWorld{4.0};
    tiny.points = {{0.0, 0.0}, {1.0, 1.0}};
    CHECK_THROWS_AS(build_graph(tiny, 2), std::runtime_error);
    CHECK_THROWS_AS(build_graph(tiny, 5), std::runtime_error);
    CHECK_NOTHROW(build_graph(tiny, 1));
}

TEST_SUITE_END();
