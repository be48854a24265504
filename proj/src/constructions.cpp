#include "knng/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace knng {

namespace {

// cos/sin of the fixed tangent directions as exact literals so that mirrored
// point sets produce exactly mirrored constructions
constexpr double kHalf = 0.5;
constexpr double kHalfSqrt3 = 0.86602540378443864676;

// outward normals at 30, 90, 150, 210, 270, 330 degrees (cyclic)
const Point kHexNormals[6] = {
    {kHalfSqrt3, kHalf},  {0.0, 1.0},  {-kHalfSqrt3, kHalf},
    {-kHalfSqrt3, -kHalf}, {0.0, -1.0}, {kHalfSqrt3, -kHalf},
};

Point inward_normal(WorldSide side) {
    switch (side) {
        case WorldSide::Bottom: return {0.0, 1.0};
        case WorldSide::Right: return {-1.0, 0.0};
        case WorldSide::Top: return {0.0, -1.0};
        case WorldSide::Left: return {1.0, 0.0};
    }
    return {0.0, 1.0};
}

Point side_anchor(WorldSide side, double world_side_len) {
    switch (side) {
        case WorldSide::Bottom: return {0.0, 0.0};
        case WorldSide::Right: return {world_side_len, 0.0};
        case WorldSide::Top: return {0.0, world_side_len};
        case WorldSide::Left: return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

// rotate the (axis-aligned, exact) inward normal by theta where cos/sin are
// exact literals; products with 0/±1 components stay exact
Point rotate_exact(Point v, double c, double s) {
    return {v.x * c - v.y * s, v.x * s + v.y * c};
}

std::pair<double, std::uint32_t> support_of(const std::vector<Point>& pts, Point normal) {
    double best = -std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
        const double s = dot(pts[i], normal);
        if (s > best) {
            best = s;
            arg = i;
        }
    }
    return {best, arg};
}

// intersection of the lines dot(x, na) = ha and dot(x, nb) = hb
Point line_intersection(Point na, double ha, Point nb, double hb) {
    const double det = cross(na, nb);
    if (std::abs(det) < 1e-14) throw std::runtime_error("support lines nearly parallel");
    return {(ha * nb.y - hb * na.y) / det, (na.x * hb - nb.x * ha) / det};
}

ConvexPolygon clip_to_lines(const std::vector<SupportLine>& lines, BoundingBox seed_box) {
    ConvexPolygon poly;
    poly.vertices = {{seed_box.xmin, seed_box.ymin},
                     {seed_box.xmax, seed_box.ymin},
                     {seed_box.xmax, seed_box.ymax},
                     {seed_box.xmin, seed_box.ymax}};
    for (const SupportLine& ln : lines) {
        const Point anchor{ln.support * ln.normal.x, ln.support * ln.normal.y};
        const Point inward{-ln.normal.x, -ln.normal.y};
        poly = clip_polygon(poly, HalfPlane{anchor, inward});
        if (poly.vertices.empty()) break;
    }
    return poly;
}

BoundingBox padded_box(const std::vector<Point>& pts, double extra) {
    BoundingBox bb{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point& p : pts) {
        bb.xmin = std::min(bb.xmin, p.x);
        bb.ymin = std::min(bb.ymin, p.y);
        bb.xmax = std::max(bb.xmax, p.x);
        bb.ymax = std::max(bb.ymax, p.y);
    }
    const double pad = 4.0 * (std::max(bb.width(), bb.height()) + extra) + 16.0;
    bb.xmin -= pad;
    bb.ymin -= pad;
    bb.xmax += pad;
    bb.ymax += pad;
    return bb;
}

}  // namespace

HullConstruction hexagon_hull(const std::vector<Point>& component_points) {
    if (component_points.empty()) throw std::invalid_argument("empty component");
    HullConstruction hc;
    hc.mode = AuditMode::Interior;
    for (const Point& n : kHexNormals) {
        const auto [h, arg] = support_of(component_points, n);
        hc.lines.push_back(SupportLine{n, h, arg});
    }
    for (std::size_t i = 0; i < hc.lines.size(); ++i) hc.tangent_indices.push_back(i);
    hc.hull = clip_to_lines(hc.lines, padded_box(component_points, 1.0));
    hc.degenerate = hc.hull.degenerate();
    return hc;
}

HullConstruction boundary_hull(const std::vector<Point>& component_points,
                               const SquareWorld& world, WorldSide side) {
    if (component_points.empty()) throw std::invalid_argument("empty component");
    HullConstruction hc;
    hc.mode = AuditMode::Boundary;
    hc.base_side = side;

    const Point u = inward_normal(side);
    const Point anchor = side_anchor(side, world.side());
    // E first, then tangents with outward normals at u rotated by
    // -90, -30, +30, +90 degrees: cyclic in increasing normal angle.
    SupportLine base;
    base.normal = {-u.x, -u.y};
    base.support = dot(anchor, base.normal);
    base.support_point = kNoSupportPoint;
    hc.lines.push_back(base);

    const double c30 = kHalfSqrt3, s30 = kHalf;
    const Point tangent_normals[4] = {
        rotate_exact(u, 0.0, -1.0),   // u - 90 degrees
        rotate_exact(u, c30, -s30),   // u - 30 degrees
        rotate_exact(u, c30, s30),    // u + 30 degrees
        rotate_exact(u, 0.0, 1.0),    // u + 90 degrees
    };
    for (const Point& n : tangent_normals) {
        const auto [h, arg] = support_of(component_points, n);
        hc.lines.push_back(SupportLine{n, h, arg});
        hc.tangent_indices.push_back(hc.lines.size() - 1);
    }
    hc.hull = clip_to_lines(hc.lines, padded_box(component_points, world.side()));
    hc.degenerate = hc.hull.degenerate();
    return hc;
}

std::vector<Region> bisector_regions(const HullConstruction& hc) {
    const std::size_t n = hc.lines.size();
    std::vector<Region> regions;
    regions.reserve(hc.tangent_indices.size());
    for (const std::size_t i : hc.tangent_indices) {
        const SupportLine& cur = hc.lines[i];
        const SupportLine& prev = hc.lines[(i + n - 1) % n];
        const SupportLine& next = hc.lines[(i + 1) % n];
        const Point v_prev =
            line_intersection(prev.normal, prev.support, cur.normal, cur.support);
        const Point v_next =
            line_intersection(cur.normal, cur.support, next.normal, next.support);
        const Point side_anchor_pt{cur.support * cur.normal.x, cur.support * cur.normal.y};
        std::vector<Region> parts;
        // beyond the side's line
        parts.push_back(Region::half_plane(side_anchor_pt, cur.normal));
        // inside the exterior-bisector wedge at each end
        parts.push_back(Region::half_plane(v_prev, cur.normal - prev.normal));
        parts.push_back(Region::half_plane(v_next, cur.normal - next.normal));
        regions.push_back(Region::intersection(std::move(parts)));
    }
    return regions;
}

double side_distance(const Point& p, WorldSide side, double len) {
    switch (side) {
        case WorldSide::Bottom: return p.y;
        case WorldSide::Right: return len - p.x;
        case WorldSide::Top: return len - p.y;
        case WorldSide::Left: return p.x;
    }
    return p.y;
}

double near_side_threshold(double area_n, const AuditConfig& config) {
    const double log_n = std::max(0.0, std::log(std::max(area_n, 1.0)));
    return 2.0 * config.near_side_mult * config.small_coeff * std::sqrt(log_n);
}

int near_side_count(const std::vector<Point>& pts, const SquareWorld& world, double threshold) {
    const double len = world.side();
    const WorldSide order[4] = {WorldSide::Bottom, WorldSide::Right, WorldSide::Top,
                                WorldSide::Left};
    int count = 0;
    for (WorldSide s : order) {
        double d = std::numeric_limits<double>::infinity();
        for (const Point& p : pts) d = std::min(d, side_distance(p, s, len));
        if (d < threshold) ++count;
    }
    return count;
}

namespace {

ConvexPolygon world_polygon(const SquareWorld& world) {
    const double s = world.side();
    return ConvexPolygon{{{0.0, 0.0}, {s, 0.0}, {s, s}, {0.0, s}}};
}

}  // namespace

AuditReport audit_component(const PointSet& ps, const NeighborGraph& g,
                            const std::vector<std::uint32_t>& component, AuditMode mode,
                            const AuditConfig& config) {
    const std::size_t m = ps.points.size();
    if (component.empty()) throw std::invalid_argument("empty component");
    if (component.size() >= m) throw std::invalid_argument("component must be a proper subset");
    if (2 * component.size() > m) {
        throw std::invalid_argument("giant component passed to audit");
    }
    std::vector<char> in_comp(m, 0);
    std::vector<Point> comp_pts;
    comp_pts.reserve(component.size());
    for (std::uint32_t v : component) {
        if (v >= m) throw std::invalid_argument("vertex id out of range");
        in_comp[v] = 1;
        comp_pts.push_back(ps.points[v]);
    }

    AuditReport report;
    report.mode = mode;
    const double tol = config.tolerance;
    const double len = ps.world.side();
    const double near_threshold = near_side_threshold(ps.world.area_n, config);

    HullConstruction hc;
    if (mode == AuditMode::Boundary) {
        const WorldSide order[4] = {WorldSide::Bottom, WorldSide::Right, WorldSide::Top,
                                    WorldSide::Left};
        int near_sides = 0;
        WorldSide nearest = WorldSide::Bottom;
        double nearest_dist = std::numeric_limits<double>::infinity();
        for (WorldSide s : order) {
            double d = std::numeric_limits<double>::infinity();
            for (const Point& p : comp_pts) d = std::min(d, side_distance(p, s, len));
            if (d < near_threshold) ++near_sides;
            if (d < nearest_dist) {  // strict: ties keep bottom,right,top,left order
                nearest_dist = d;
                nearest = s;
            }
        }
        if (near_sides >= 2) {
            report.skipped = true;
            report.skip_reason = "ambiguous side";
            return report;
        }
        report.base_side = nearest;
        hc = boundary_hull(comp_pts, ps.world, nearest);
    } else {
        hc = hexagon_hull(comp_pts);
    }
    report.hull_degenerate = hc.degenerate;

    const std::vector<Region> wedges = bisector_regions(hc);
    const std::size_t n_tangents = hc.tangent_indices.size();

    // selection discs D_i at the tangent support points
    std::vector<Disc> discs;
    discs.reserve(n_tangents);
    for (std::size_t t = 0; t < n_tangents; ++t) {
        const SupportLine& ln = hc.lines[hc.tangent_indices[t]];
        const std::uint32_t global_id = component[ln.support_point];
        const double radius = kth_neighbor_radius(g, ps, global_id);
        discs.push_back(Disc{ps.points[global_id], radius});
        report.disc_radii.push_back(radius);
    }

    // fact (a): the wedge cut to its selection disc holds no process points
    for (std::size_t t = 0; t < n_tangents; ++t) {
        Region a_i = Region::intersection(
            {Region::disc(discs[t].center, discs[t].radius), wedges[t]});
        for (std::uint32_t v = 0; v < m; ++v) {
            if (a_i.contains(ps.points[v], tol)) {
                report.fact_a = false;
                report.offending_points.push_back(v);
            }
        }
        report.tangent_regions.push_back(std::move(a_i));
    }

    // A_0: the disc-hull overlap with the least (exact) area
    std::size_t best_t = 0;
    double best_area = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n_tangents; ++t) {
        const double area = disc_polygon_intersection_area(discs[t], hc.hull);
        // near-ties (1e-12 relative) keep the earlier tangent index
        if (t == 0 || area < best_area - 1e-12 * std::max(1.0, best_area)) {
            best_area = area;
            best_t = t;
        }
    }
    report.min_region_side = best_t;
    report.min_region_area = best_area;
    Region min_region = Region::intersection(
        {Region::disc(discs[best_t].center, discs[best_t].radius),
         Region::convex_polygon(hc.hull)});

    // fact (b): at least k+1 points inside, all of them component members
    std::size_t inside_count = 0;
    bool all_members = true;
    for (std::uint32_t v = 0; v < m; ++v) {
        if (min_region.contains(ps.points[v], -tol)) {
            ++inside_count;
            if (!in_comp[v]) all_members = false;
        }
    }
    report.min_region_count = inside_count;
    report.fact_b = all_members && inside_count >= static_cast<std::size_t>(g.k) + 1;

    // witness pair and crescent B
    const OutsideWitness w = nearest_outside_witness(ps, component);
    report.witness_inside = w.inside;
    report.witness_outside = w.outside;
    report.witness_radius = w.distance;
    const Point P = ps.points[w.inside];
    const Point Q = ps.points[w.outside];
    Region lune = Region::difference(Region::disc(Q, w.distance), Region::disc(P, w.distance));
    bool clipped = false;
    if (mode == AuditMode::Boundary) {
        const double r0 = w.distance;
        clipped = Q.x - r0 < 0.0 || Q.y - r0 < 0.0 || Q.x + r0 > len || Q.y + r0 > len;
    }
    report.lune_clipped = clipped;
    Region witness_region =
        clipped ? Region::intersection({lune, Region::convex_polygon(world_polygon(ps.world))})
                : lune;
    if (clipped) {
        const std::uint64_t area_seed =
            mix64(ps.seed ^ (0xb10c5eedULL + w.inside * 0x10001ULL + w.outside));
        const AreaEstimate est = region_area(witness_region, config.area_budget, area_seed);
        report.lune_area = est.area;
        report.lune_area_se = est.std_error;
    } else {
        const AreaEstimate est = region_area(lune, 10000);
        report.lune_area = est.area;  // closed form, std_error 0
    }

    // fact (c): the crescent holds at least k points
    std::size_t lune_count = 0;
    for (std::uint32_t v = 0; v < m; ++v) {
        if (witness_region.contains(ps.points[v], -tol)) ++lune_count;
    }
    report.lune_count = lune_count;
    report.fact_c = lune_count >= static_cast<std::size_t>(g.k);

    // fact (d): nothing sits in both A_0 and B
    for (std::uint32_t v = 0; v < m; ++v) {
        if (min_region.contains(ps.points[v], 0.0) && witness_region.contains(ps.points[v], 0.0)) {
            report.fact_d = false;
            break;
        }
    }

    // fact (e): r0 really is the least cross distance
    const double bound = w.distance - tol;
    const double bound2 = bound <= 0.0 ? -1.0 : bound * bound;
    for (std::uint32_t q = 0; q < m && report.fact_e; ++q) {
        if (in_comp[q]) continue;
        for (std::uint32_t p : component) {
            if (dist2(ps.points[p], ps.points[q]) <= bound2) {
                report.fact_e = false;
                break;
            }
        }
    }

    const double r_shrunk = std::max(w.distance - config.witness_shrink, 0.0);
    report.x_ratio = best_area > 0.0
                         ? r_shrunk / std::sqrt(best_area / std::numbers::pi)
                         : 0.0;
    report.min_region = std::move(min_region);
    report.witness_region = std::move(witness_region);
    return report;
}

}  // namespace knng
