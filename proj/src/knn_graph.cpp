#include "knng/knn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace knng {

namespace {

struct Cand {
    double d2 = 0.0;
    std::uint32_t id = 0;
};

// strict weak order: nearer first, ties to the smaller id
inline bool nearer(const Cand& a, const Cand& b) {
    return a.d2 < b.d2 || (a.d2 == b.d2 && a.id < b.id);
}

void check_preconditions(const PointSet& ps, int k) {
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (ps.points.size() <= static_cast<std::size_t>(k)) {
        throw std::runtime_error("k too large for point count");
    }
}

void finish_graph(NeighborGraph& g) {
    const std::size_t m = g.out_neighbors.size();
    g.undirected_adjacency.assign(m, {});
    for (std::uint32_t u = 0; u < m; ++u) {
        for (std::uint32_t v : g.out_neighbors[u]) {
            g.undirected_adjacency[u].push_back(v);
            g.undirected_adjacency[v].push_back(u);
        }
    }
    g.edge_count = 0;
    for (auto& adj : g.undirected_adjacency) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        g.edge_count += adj.size();
    }
    g.edge_count /= 2;
}

}  // namespace

NeighborGraph build_graph(const PointSet& ps, int k) {
    check_preconditions(ps, k);
    const auto& pts = ps.points;
    const std::size_t m = pts.size();
    const std::size_t uk = static_cast<std::size_t>(k);

    // Bucket grid sized so a cell holds about k+1 points at unit intensity.
    const double side = ps.world.side();
    const double target_cell = std::sqrt((k + 1) / std::numbers::pi);
    double lo_x = 0.0, lo_y = 0.0, hi_x = std::max(side, 0.0), hi_y = std::max(side, 0.0);
    for (const Point& p : pts) {  // synthetic sets may stray outside the window
        lo_x = std::min(lo_x, p.x);
        lo_y = std::min(lo_y, p.y);
        hi_x = std::max(hi_x, p.x);
        hi_y = std::max(hi_y, p.y);
    }
    const double span_x = std::max(hi_x - lo_x, 1e-12);
    const double span_y = std::max(hi_y - lo_y, 1e-12);
    const long nx = std::max(1L, static_cast<long>(std::floor(span_x / target_cell)));
    const long ny = std::max(1L, static_cast<long>(std::floor(span_y / target_cell)));
    const double cw = span_x / static_cast<double>(nx);
    const double ch = span_y / static_cast<double>(ny);
    const double cell_min = std::min(cw, ch);

    std::vector<std::vector<std::uint32_t>> cells(static_cast<std::size_t>(nx * ny));
    const auto cell_of = [&](const Point& p) -> std::pair<long, long> {
        long cx = static_cast<long>((p.x - lo_x) / cw);
        long cy = static_cast<long>((p.y - lo_y) / ch);
        cx = std::clamp(cx, 0L, nx - 1);
        cy = std::clamp(cy, 0L, ny - 1);
        return {cx, cy};
    };
    for (std::uint32_t i = 0; i < m; ++i) {
        const auto [cx, cy] = cell_of(pts[i]);
        cells[static_cast<std::size_t>(cy * nx + cx)].push_back(i);
    }

    NeighborGraph g;
    g.k = k;
    g.out_neighbors.assign(m, {});

    std::vector<Cand> heap;  // max-heap: worst candidate on top
    const auto worse_on_top = [](const Cand& a, const Cand& b) { return nearer(a, b); };

    for (std::uint32_t u = 0; u < m; ++u) {
        heap.clear();
        const Point pu = pts[u];
        const auto [ucx, ucy] = cell_of(pu);
        const long max_ring = std::max({ucx, nx - 1 - ucx, ucy, ny - 1 - ucy});

        const auto scan_cell = [&](long cx, long cy) {
            if (cx < 0 || cx >= nx || cy < 0 || cy >= ny) return;
            for (std::uint32_t v : cells[static_cast<std::size_t>(cy * nx + cx)]) {
                if (v == u) continue;
                const Cand cand{dist2(pu, pts[v]), v};
                if (heap.size() < uk) {
                    heap.push_back(cand);
                    std::push_heap(heap.begin(), heap.end(), worse_on_top);
                } else if (nearer(cand, heap.front())) {
                    std::pop_heap(heap.begin(), heap.end(), worse_on_top);
                    heap.back() = cand;
                    std::push_heap(heap.begin(), heap.end(), worse_on_top);
                }
            }
        };

        for (long ring = 0;; ++ring) {
            if (ring == 0) {
                scan_cell(ucx, ucy);
            } else {
                for (long cx = ucx - ring; cx <= ucx + ring; ++cx) {
                    scan_cell(cx, ucy - ring);
                    scan_cell(cx, ucy + ring);
                }
                for (long cy = ucy - ring + 1; cy <= ucy + ring - 1; ++cy) {
                    scan_cell(ucx - ring, cy);
                    scan_cell(ucx + ring, cy);
                }
            }
            if (heap.size() == uk) {
                // Any unvisited point sits in ring >= ring+1, hence at distance
                // >= ring*cell_min from u. Strict comparison keeps id-tie
                // handling identical to the all-pairs reference.
                const double bound = static_cast<double>(ring) * cell_min;
                if (heap.front().d2 < bound * bound) break;
            }
            if (ring >= max_ring) break;
        }

        std::sort(heap.begin(), heap.end(), nearer);
        auto& out = g.out_neighbors[u];
        out.reserve(uk);
        for (const Cand& c : heap) out.push_back(c.id);
    }

    finish_graph(g);
    return g;
}

NeighborGraph brute_force_graph(const PointSet& ps, int k) {
    check_preconditions(ps, k);
    const auto& pts = ps.points;
    const std::size_t m = pts.size();
    const std::size_t uk = static_cast<std::size_t>(k);

    NeighborGraph g;
    g.k = k;
    g.out_neighbors.assign(m, {});
    std::vector<Cand> all;
    all.reserve(m - 1);
    for (std::uint32_t u = 0; u < m; ++u) {
        all.clear();
        const Point pu = pts[u];
        for (std::uint32_t v = 0; v < m; ++v) {
            if (v == u) continue;
            all.push_back(Cand{dist2(pu, pts[v]), v});
        }
        std::partial_sort(all.begin(), all.begin() + uk, all.end(), nearer);
        auto& out = g.out_neighbors[u];
        out.reserve(uk);
        for (std::size_t i = 0; i < uk; ++i) out.push_back(all[i].id);
    }
    finish_graph(g);
    return g;
}

double kth_neighbor_radius(const NeighborGraph& g, const PointSet& ps, std::uint32_t v) {
    if (v >= g.out_neighbors.size()) throw std::invalid_argument("vertex id out of range");
    const auto& out = g.out_neighbors[v];
    if (out.empty()) throw std::runtime_error("vertex has no neighbour list");
    return dist(ps.points[v], ps.points[out.back()]);
}

}  // namespace knng
