#include "knng/components.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace knng {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

double boundary_distance(const Point& p, double side) {
    return std::min(std::min(p.x, p.y), std::min(side - p.x, side - p.y));
}

}  // namespace

std::vector<std::vector<std::uint32_t>> connected_components(const NeighborGraph& g) {
    const std::size_t m = g.undirected_adjacency.size();
    UnionFind uf(m);
    for (std::uint32_t u = 0; u < m; ++u) {
        for (std::uint32_t v : g.undirected_adjacency[u]) uf.unite(u, v);
    }
    std::vector<std::vector<std::uint32_t>> comps;
    std::vector<std::int64_t> comp_of_root(m, -1);
    for (std::uint32_t v = 0; v < m; ++v) {
        const std::uint32_t r = uf.find(v);
        if (comp_of_root[r] < 0) {
            comp_of_root[r] = static_cast<std::int64_t>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(comp_of_root[r])].push_back(v);
    }
    return comps;
}

ComponentCensus census(const NeighborGraph& g, const PointSet& ps, double boundary_strip,
                       double small_coeff) {
    ComponentCensus out;
    const std::size_t m = ps.points.size();
    const double side = ps.world.side();
    const double log_n = std::max(0.0, std::log(std::max(ps.world.area_n, 1.0)));
    const double normalizer = std::sqrt(log_n);
    out.small_diameter_bound = small_coeff * normalizer;

    auto comps = connected_components(g);
    if (comps.empty()) return out;

    std::size_t giant = 0;
    for (std::size_t i = 1; i < comps.size(); ++i) {
        if (comps[i].size() > comps[giant].size()) giant = i;  // ties keep the earlier one
    }
    out.giant_index = giant;
    out.giant_fraction = static_cast<double>(comps[giant].size()) / static_cast<double>(m);

    std::vector<Point> member_pts;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ComponentInfo info;
        info.comp_id = static_cast<std::uint32_t>(i);
        info.vertices = std::move(comps[i]);
        member_pts.clear();
        double min_bd = std::numeric_limits<double>::infinity();
        for (std::uint32_t v : info.vertices) {
            member_pts.push_back(ps.points[v]);
            min_bd = std::min(min_bd, boundary_distance(ps.points[v], side));
        }
        info.diameter = euclidean_diameter(member_pts);
        info.min_boundary_distance = min_bd;
        info.is_giant = (i == giant);
        info.is_small = !info.is_giant && info.diameter < out.small_diameter_bound;
        info.in_boundary_strip = info.min_boundary_distance <= boundary_strip;
        if (info.is_small) {
            ++out.small_count;
            if (info.in_boundary_strip) {
                ++out.boundary_small_count;
            } else {
                ++out.interior_small_count;
            }
        }
        if (!info.is_giant && normalizer > 0.0) {
            out.max_small_diameter_normalized =
                std::max(out.max_small_diameter_normalized, info.diameter / normalizer);
        }
        out.components.push_back(std::move(info));
    }
    return out;
}

OutsideWitness nearest_outside_witness(const PointSet& ps,
                                       const std::vector<std::uint32_t>& component) {
    const std::size_t m = ps.points.size();
    if (component.empty()) throw std::invalid_argument("empty component");
    std::vector<char> in_comp(m, 0);
    for (std::uint32_t v : component) {
        if (v >= m) throw std::invalid_argument("vertex id out of range");
        in_comp[v] = 1;
    }
    if (component.size() >= m) throw std::runtime_error("no outside vertex");

    OutsideWitness best;
    double best_d2 = std::numeric_limits<double>::infinity();
    bool found = false;
    for (std::uint32_t p : component) {
        const Point pp = ps.points[p];
        for (std::uint32_t q = 0; q < m; ++q) {
            if (in_comp[q]) continue;
            const double d2v = dist2(pp, ps.points[q]);
            if (d2v < best_d2 ||
                (d2v == best_d2 &&
                 (p < best.inside || (p == best.inside && q < best.outside)))) {
                best_d2 = d2v;
                best.inside = p;
                best.outside = q;
                found = true;
            }
        }
    }
    if (!found) throw std::runtime_error("no outside vertex");
    best.distance = std::sqrt(best_d2);
    return best;
}

std::vector<SmallPairDistance> small_pair_distance_census(const PointSet& ps,
                                                          const ComponentCensus& census) {
    std::vector<const ComponentInfo*> small;
    for (const auto& c : census.components) {
        if (c.is_small) small.push_back(&c);
    }
    std::vector<SmallPairDistance> out;
    for (std::size_t i = 0; i < small.size(); ++i) {
        for (std::size_t j = i + 1; j < small.size(); ++j) {
            double best = std::numeric_limits<double>::infinity();
            for (std::uint32_t a : small[i]->vertices) {
                for (std::uint32_t b : small[j]->vertices) {
                    best = std::min(best, dist2(ps.points[a], ps.points[b]));
                }
            }
            out.push_back({small[i]->comp_id, small[j]->comp_id, std::sqrt(best)});
        }
    }
    return out;
}

namespace {

bool disc_covers(const Disc& d, Point p) {
    return dist(p, d.center) <= d.radius + 1e-9 * std::max(1.0, d.radius);
}

Disc disc_from_two(Point a, Point b) {
    const Point c{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    return {c, 0.5 * dist(a, b)};
}

Disc circumscribed_disc(Point a, Point b, Point c) {
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (std::abs(d) < 1e-14) {
        // collinear: diametral disc of the farthest pair
        Disc best = disc_from_two(a, b);
        for (const Disc cand : {disc_from_two(a, c), disc_from_two(b, c)}) {
            if (cand.radius > best.radius) best = cand;
        }
        return best;
    }
    const double a2 = norm2(a), b2 = norm2(b), c2 = norm2(c);
    const Point center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                       (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return {center, dist(center, a)};
}

}  // namespace

Disc min_enclosing_disc(const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("minimum enclosing disc of empty set");
    Disc d{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (disc_covers(d, pts[i])) continue;
        d = Disc{pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (disc_covers(d, pts[j])) continue;
            d = disc_from_two(pts[i], pts[j]);
            for (std::size_t l = 0; l < j; ++l) {
                if (disc_covers(d, pts[l])) continue;
                d = circumscribed_disc(pts[i], pts[j], pts[l]);
            }
        }
    }
    return d;
}

std::vector<ClosedVertexSet> no_outdegree_subgraph_scan(const NeighborGraph& g,
                                                        const PointSet& ps,
                                                        std::size_t size_cap) {
    const std::size_t m = g.out_neighbors.size();
    if (size_cap == 0) size_cap = 4 * static_cast<std::size_t>(std::max(g.k, 1));

    // Iterative Tarjan SCC over the directed selection lists.
    constexpr std::uint32_t kUnset = 0xffffffffu;
    std::vector<std::uint32_t> index(m, kUnset), low(m, 0), comp(m, kUnset);
    std::vector<char> on_stack(m, 0);
    std::vector<std::uint32_t> stack;
    std::uint32_t next_index = 0, comp_count = 0;

    struct Frame {
        std::uint32_t v;
        std::size_t child;
    };
    std::vector<Frame> call;

    for (std::uint32_t root = 0; root < m; ++root) {
        if (index[root] != kUnset) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            const std::uint32_t v = f.v;
            if (f.child == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            if (f.child < g.out_neighbors[v].size()) {
                const std::uint32_t w = g.out_neighbors[v][f.child++];
                if (index[w] == kUnset) {
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                for (;;) {
                    const std::uint32_t w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comp_count;
                    if (w == v) break;
                }
                ++comp_count;
            }
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
    }

    // A component is closed when every out-edge stays inside it.
    std::vector<char> closed(comp_count, 1);
    std::vector<std::uint32_t> size_of(comp_count, 0);
    for (std::uint32_t v = 0; v < m; ++v) {
        ++size_of[comp[v]];
        for (std::uint32_t w : g.out_neighbors[v]) {
            if (comp[w] != comp[v]) closed[comp[v]] = 0;
        }
    }

    std::vector<std::vector<std::uint32_t>> members(comp_count);
    for (std::uint32_t v = 0; v < m; ++v) {
        if (closed[comp[v]]) members[comp[v]].push_back(v);
    }

    std::vector<ClosedVertexSet> out;
    for (std::uint32_t c = 0; c < comp_count; ++c) {
        if (!closed[c]) continue;
        if (size_of[c] == m) continue;  // the whole vertex set does not count
        if (size_of[c] > size_cap) continue;
        ClosedVertexSet set;
        set.vertices = members[c];  // ascending by construction
        std::vector<Point> pts;
        pts.reserve(set.vertices.size());
        for (std::uint32_t v : set.vertices) pts.push_back(ps.points[v]);
        set.enclosing = min_enclosing_disc(pts);
        out.push_back(std::move(set));
    }
    std::sort(out.begin(), out.end(), [](const ClosedVertexSet& a, const ClosedVertexSet& b) {
        return a.vertices.front() < b.vertices.front();
    });
    return out;
}

}  // namespace knng
