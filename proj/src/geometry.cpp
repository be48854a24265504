#include "knng/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "knng/rng.hpp"

namespace knng {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-9;  // absolute tolerance for geometric predicates

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double SquareWorld::side() const { return std::sqrt(area_n); }

HalfPlane make_half_plane(Point anchor, Point normal_direction) {
    const double len = norm(normal_direction);
    if (!(len > 0.0)) throw std::invalid_argument("half-plane normal must be nonzero");
    return HalfPlane{anchor, {normal_direction.x / len, normal_direction.y / len}};
}

double polygon_area(const ConvexPolygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        twice += cross(a, b);
    }
    return std::abs(twice) * 0.5;
}

double distance_point_segment(Point p, Point a, Point b) {
    const Point ab = b - a;
    const double len2 = norm2(ab);
    if (len2 <= 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + t * ab);
}

bool point_in_convex_polygon(const ConvexPolygon& poly, Point p, double margin) {
    const auto& v = poly.vertices;
    if (v.empty()) return false;
    if (v.size() < 3) {
        if (margin > 0.0) return false;
        const double d = (v.size() == 1) ? dist(p, v[0]) : distance_point_segment(p, v[0], v[1]);
        return d <= -margin;
    }
    bool inside_by_margin = true;
    for (std::size_t i = 0; i < v.size() && inside_by_margin; ++i) {
        const Point a = v[i];
        const Point b = v[(i + 1) % v.size()];
        const double len = dist(a, b);
        if (len <= 0.0) continue;
        // signed distance from the edge line, positive on the interior side
        if (cross(b - a, p - a) < margin * len) inside_by_margin = false;
    }
    if (inside_by_margin) return true;
    if (margin >= 0.0) return false;
    return distance_to_convex_polygon(poly, p) <= -margin;
}

double distance_to_convex_polygon(const ConvexPolygon& poly, Point p) {
    const auto& v = poly.vertices;
    if (v.empty()) throw std::invalid_argument("distance to empty polygon");
    if (v.size() == 1) return dist(p, v[0]);
    if (point_in_convex_polygon(poly, p, 0.0)) return 0.0;
    double best = dist(p, v[0]);
    for (std::size_t i = 0; i < v.size(); ++i) {
        best = std::min(best, distance_point_segment(p, v[i], v[(i + 1) % v.size()]));
    }
    return best;
}

ConvexPolygon clip_polygon(const ConvexPolygon& poly, const HalfPlane& hp) {
    const auto& v = poly.vertices;
    ConvexPolygon out;
    if (v.empty()) return out;
    const auto signed_off = [&](Point p) { return dot(p - hp.anchor, hp.normal); };
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point cur = v[i];
        const Point nxt = v[(i + 1) % n];
        const double sc = signed_off(cur);
        const double sn = signed_off(nxt);
        const bool in_c = sc >= -kTol;
        const bool in_n = sn >= -kTol;
        if (in_c) out.vertices.push_back(cur);
        if (in_c != in_n) {
            const double t = sc / (sc - sn);
            out.vertices.push_back(cur + t * (nxt - cur));
        }
    }
    // collapse consecutive (near-)duplicates left behind by tangential clips
    auto& w = out.vertices;
    std::vector<Point> dedup;
    for (const Point& p : w) {
        if (dedup.empty() || dist(dedup.back(), p) > kTol) dedup.push_back(p);
    }
    while (dedup.size() > 1 && dist(dedup.front(), dedup.back()) <= kTol) dedup.pop_back();
    out.vertices = std::move(dedup);
    return out;
}

double disc_polygon_intersection_area(const Disc& d, const ConvexPolygon& poly) {
    const double r = d.radius;
    if (r <= 0.0 || poly.vertices.size() < 3) return 0.0;
    const double r2 = r * r;
    const auto& vs = poly.vertices;
    const std::size_t n = vs.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = vs[i] - d.center;
        const Point b = vs[(i + 1) % n] - d.center;
        const Point ab = b - a;
        const double qa = norm2(ab);
        double ts[4];
        int nt = 0;
        ts[nt++] = 0.0;
        if (qa > 0.0) {
            // params where |a + t*ab| = r
            const double qb = dot(a, ab);
            const double qc = norm2(a) - r2;
            const double disc = qb * qb - qa * qc;
            if (disc > 0.0) {
                const double sq = std::sqrt(disc);
                const double t1 = (-qb - sq) / qa;
                const double t2 = (-qb + sq) / qa;
                if (t1 > 0.0 && t1 < 1.0) ts[nt++] = t1;
                if (t2 > 0.0 && t2 < 1.0) ts[nt++] = t2;
            }
        }
        ts[nt++] = 1.0;
        for (int s = 0; s + 1 < nt; ++s) {
            const Point p = a + ts[s] * ab;
            const Point q = a + ts[s + 1] * ab;
            const Point mid = 0.5 * (p + q);
            if (norm2(mid) <= r2) {
                total += 0.5 * cross(p, q);  // straight piece inside the disc
            } else {
                total += 0.5 * r2 * std::atan2(cross(p, q), dot(p, q));  // arc sector
            }
        }
    }
    return std::max(0.0, total);
}

Region::Region(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

Region Region::disc(Point center, double radius) { return Region(DiscNode{{center, radius}}); }

Region Region::half_plane(HalfPlane hp) { return Region(HalfPlaneNode{hp}); }

Region Region::half_plane(Point anchor, Point normal_direction) {
    return Region(HalfPlaneNode{make_half_plane(anchor, normal_direction)});
}

Region Region::convex_polygon(ConvexPolygon poly) { return Region(PolygonNode{std::move(poly)}); }

Region Region::intersection(std::vector<Region> parts) {
    if (parts.empty()) throw std::invalid_argument("intersection of zero regions");
    IntersectionNode node;
    for (auto& p : parts) node.parts.push_back(std::make_shared<const Region>(std::move(p)));
    return Region(std::move(node));
}

Region Region::union_of(std::vector<Region> parts) {
    if (parts.empty()) throw std::invalid_argument("union of zero regions");
    UnionNode node;
    for (auto& p : parts) node.parts.push_back(std::make_shared<const Region>(std::move(p)));
    return Region(std::move(node));
}

Region Region::difference(Region a, Region b) {
    return Region(DifferenceNode{std::make_shared<const Region>(std::move(a)),
                                 std::make_shared<const Region>(std::move(b))});
}

Region Region::blowup(Region base, double r) {
    if (r < 0.0) throw std::invalid_argument("blow-up radius must be nonnegative");
    return Region(BlowupNode{std::make_shared<const Region>(std::move(base)), r});
}

bool Region::contains(Point p, double margin) const {
    return std::visit(
        Overloaded{
            [&](const DiscNode& n) { return dist(p, n.disc.center) <= n.disc.radius - margin; },
            [&](const HalfPlaneNode& n) {
                return dot(p - n.hp.anchor, n.hp.normal) >= margin;
            },
            [&](const PolygonNode& n) { return point_in_convex_polygon(n.poly, p, margin); },
            [&](const IntersectionNode& n) {
                for (const auto& part : n.parts) {
                    if (!part->contains(p, margin)) return false;
                }
                return true;
            },
            [&](const UnionNode& n) {
                // conservative for margin > 0: a ball can straddle two parts
                for (const auto& part : n.parts) {
                    if (part->contains(p, margin)) return true;
                }
                return false;
            },
            [&](const DifferenceNode& n) {
                return n.a->contains(p, margin) && !n.b->contains(p, -margin);
            },
            [&](const BlowupNode& n) { return n.base->distance_to(p) <= n.r - margin; },
        },
        *node_);
}

double Region::distance_to(Point p) const {
    return std::visit(
        Overloaded{
            [&](const DiscNode& n) {
                return std::max(0.0, dist(p, n.disc.center) - n.disc.radius);
            },
            [&](const HalfPlaneNode& n) {
                return std::max(0.0, -dot(p - n.hp.anchor, n.hp.normal));
            },
            [&](const PolygonNode& n) { return distance_to_convex_polygon(n.poly, p); },
            [&](const IntersectionNode&) -> double {
                throw std::runtime_error("distance query unsupported for intersections");
            },
            [&](const UnionNode& n) {
                double best = n.parts.front()->distance_to(p);
                for (std::size_t i = 1; i < n.parts.size(); ++i) {
                    best = std::min(best, n.parts[i]->distance_to(p));
                }
                return best;
            },
            [&](const DifferenceNode&) -> double {
                throw std::runtime_error("distance query unsupported for differences");
            },
            [&](const BlowupNode& n) { return std::max(0.0, n.base->distance_to(p) - n.r); },
        },
        *node_);
}

std::optional<BoundingBox> Region::bounding_box() const {
    return std::visit(
        Overloaded{
            [&](const DiscNode& n) -> std::optional<BoundingBox> {
                const double r = std::max(0.0, n.disc.radius);
                return BoundingBox{n.disc.center.x - r, n.disc.center.y - r,
                                   n.disc.center.x + r, n.disc.center.y + r};
            },
            [&](const HalfPlaneNode&) -> std::optional<BoundingBox> { return std::nullopt; },
            [&](const PolygonNode& n) -> std::optional<BoundingBox> {
                const auto& v = n.poly.vertices;
                if (v.empty()) return BoundingBox{0, 0, -1, -1};
                BoundingBox bb{v[0].x, v[0].y, v[0].x, v[0].y};
                for (const Point& p : v) {
                    bb.xmin = std::min(bb.xmin, p.x);
                    bb.ymin = std::min(bb.ymin, p.y);
                    bb.xmax = std::max(bb.xmax, p.x);
                    bb.ymax = std::max(bb.ymax, p.y);
                }
                return bb;
            },
            [&](const IntersectionNode& n) -> std::optional<BoundingBox> {
                std::optional<BoundingBox> acc;
                for (const auto& part : n.parts) {
                    auto bb = part->bounding_box();
                    if (!bb) continue;  // unbounded parts do not constrain
                    if (!acc) {
                        acc = bb;
                    } else {
                        acc->xmin = std::max(acc->xmin, bb->xmin);
                        acc->ymin = std::max(acc->ymin, bb->ymin);
                        acc->xmax = std::min(acc->xmax, bb->xmax);
                        acc->ymax = std::min(acc->ymax, bb->ymax);
                    }
                }
                return acc;
            },
            [&](const UnionNode& n) -> std::optional<BoundingBox> {
                std::optional<BoundingBox> acc;
                for (const auto& part : n.parts) {
                    auto bb = part->bounding_box();
                    if (!bb) return std::nullopt;
                    if (!acc) {
                        acc = bb;
                    } else {
                        acc->xmin = std::min(acc->xmin, bb->xmin);
                        acc->ymin = std::min(acc->ymin, bb->ymin);
                        acc->xmax = std::max(acc->xmax, bb->xmax);
                        acc->ymax = std::max(acc->ymax, bb->ymax);
                    }
                }
                return acc;
            },
            [&](const DifferenceNode& n) { return n.a->bounding_box(); },
            [&](const BlowupNode& n) -> std::optional<BoundingBox> {
                auto bb = n.base->bounding_box();
                if (!bb) return std::nullopt;
                return BoundingBox{bb->xmin - n.r, bb->ymin - n.r, bb->xmax + n.r, bb->ymax + n.r};
            },
        },
        *node_);
}

namespace {

double disc_area(const Disc& d) { return d.radius <= 0.0 ? 0.0 : kPi * d.radius * d.radius; }

// Area of disc ∩ { p : dot(p - anchor, normal) >= 0 } where s is the signed
// offset of the disc center from the boundary line.
double disc_halfplane_area(const Disc& d, double s) {
    const double r = d.radius;
    if (r <= 0.0) return 0.0;
    if (s <= -r) return 0.0;
    if (s >= r) return kPi * r * r;
    return r * r * std::acos(-s / r) + s * std::sqrt(r * r - s * s);
}

// Area of the lens shared by two discs of radius r with centers d apart.
double equal_disc_lens_area(double r, double d) {
    if (d >= 2.0 * r) return 0.0;
    if (d <= 0.0) return kPi * r * r;
    return 2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
}

std::optional<double> closed_form_area(const Region& region) {
    const auto& node = region.node();
    if (const auto* d = std::get_if<Region::DiscNode>(&node)) {
        return disc_area(d->disc);
    }
    if (const auto* p = std::get_if<Region::PolygonNode>(&node)) {
        return polygon_area(p->poly);
    }
    if (const auto* ix = std::get_if<Region::IntersectionNode>(&node)) {
        if (ix->parts.size() == 2) {
            const Region::DiscNode* d = nullptr;
            const Region::HalfPlaneNode* h = nullptr;
            for (const auto& part : ix->parts) {
                if (const auto* dn = std::get_if<Region::DiscNode>(&part->node())) d = dn;
                if (const auto* hn = std::get_if<Region::HalfPlaneNode>(&part->node())) h = hn;
            }
            if (d && h) {
                const double s = dot(d->disc.center - h->hp.anchor, h->hp.normal);
                return disc_halfplane_area(d->disc, s);
            }
        }
        return std::nullopt;
    }
    if (const auto* df = std::get_if<Region::DifferenceNode>(&node)) {
        const auto* da = std::get_if<Region::DiscNode>(&df->a->node());
        const auto* db = std::get_if<Region::DiscNode>(&df->b->node());
        if (da && db && da->disc.radius > 0.0) {
            const double r = da->disc.radius;
            const double scale = std::max(1.0, r);
            const double d = dist(da->disc.center, db->disc.center);
            // equal radii, centers one radius apart: the crescent shape has a
            // closed form; anything else goes through Monte Carlo
            if (std::abs(db->disc.radius - r) <= 1e-9 * scale && std::abs(d - r) <= 1e-9 * scale) {
                return kPi * r * r - equal_disc_lens_area(r, d);
            }
        }
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace

AreaEstimate region_area(const Region& region, long long quadrature_budget, std::uint64_t mc_seed) {
    if (auto exact = closed_form_area(region)) return {*exact, 0.0};
    if (quadrature_budget < 10000) {
        throw std::invalid_argument("quadrature_budget must be at least 10^4 for Monte Carlo areas");
    }
    const auto bb = region.bounding_box();
    if (!bb) throw std::runtime_error("unbounded region");
    if (bb->empty() || bb->width() <= 0.0 || bb->height() <= 0.0) return {0.0, 0.0};
    Xoshiro256pp rng(mc_seed);
    long long hits = 0;
    for (long long i = 0; i < quadrature_budget; ++i) {
        const Point p{bb->xmin + bb->width() * rng.uniform(),
                      bb->ymin + bb->height() * rng.uniform()};
        if (region.contains(p)) ++hits;
    }
    const double box_area = bb->width() * bb->height();
    const double p_hat = static_cast<double>(hits) / static_cast<double>(quadrature_budget);
    const double se =
        box_area * std::sqrt(std::max(0.0, p_hat * (1.0 - p_hat)) /
                             static_cast<double>(quadrature_budget));
    return {box_area * p_hat, se};
}

double blowup_excess_lower_bound(double base_area, double r, BlowupDomain domain) {
    if (!(base_area > 0.0)) throw std::invalid_argument("base_area must be positive");
    if (r < 0.0) throw std::invalid_argument("blow-up radius must be nonnegative");
    const double x = r / std::sqrt(base_area / kPi);
    if (domain == BlowupDomain::Plane) {
        return ((x + 1.0) * (x + 1.0) - 1.0) * base_area;
    }
    const double g = 1.0 + x / std::sqrt(2.0);
    return (g * g - 1.0) * base_area;
}

ConvexPolygon convex_hull(std::vector<Point> pts) {
    if (pts.empty()) throw std::invalid_argument("convex hull of empty point set");
    std::sort(pts.begin(), pts.end(),
              [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n == 1) return ConvexPolygon{{pts[0]}};
    std::vector<Point> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return ConvexPolygon{std::move(h)};
}

double euclidean_diameter(const std::vector<Point>& pts) {
    const ConvexPolygon hull = convex_hull(pts);
    const auto& h = hull.vertices;
    const std::size_t n = h.size();
    if (n == 1) return 0.0;
    if (n == 2) return dist(h[0], h[1]);
    double best = 0.0;
    const auto consider = [&](std::size_t i, std::size_t j) {
        best = std::max(best, dist2(h[i], h[j]));
    };
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Point e = h[(i + 1) % n] - h[i];
        // advance the antipodal pointer while it moves away from edge i
        while (true) {
            const std::size_t jn = (j + 1) % n;
            if (cross(e, h[jn] - h[i]) > cross(e, h[j] - h[i])) {
                consider(i, j);
                consider((i + 1) % n, j);
                j = jn;
            } else {
                break;
            }
        }
        consider(i, j);
        consider((i + 1) % n, j);
    }
    return std::sqrt(best);
}

}  // namespace knng
