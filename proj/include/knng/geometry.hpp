#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace knng {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point a) { return a.x * a.x + a.y * a.y; }
inline double norm(Point a) { return std::sqrt(norm2(a)); }
inline double dist2(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}
inline double dist(Point a, Point b) { return std::sqrt(dist2(a, b)); }

// Simulation window: axis-aligned square [0, side]^2 of area `area_n`.
struct SquareWorld {
    double area_n = 0.0;
    double side() const;
};

struct BoundingBox {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    bool empty() const { return xmax < xmin || ymax < ymin; }
};

struct Disc {
    Point center;
    double radius = 0.0;
};

// Closed half-plane { p : dot(p - anchor, normal) >= 0 }. The normal is unit
// length so signed offsets are true distances.
struct HalfPlane {
    Point anchor;
    Point normal;
};
HalfPlane make_half_plane(Point anchor, Point normal_direction);

// Convex polygon, vertices in counter-clockwise order. Fewer than three
// vertices marks a degenerate hull (single point or segment).
struct ConvexPolygon {
    std::vector<Point> vertices;
    bool degenerate() const { return vertices.size() < 3; }
};

double polygon_area(const ConvexPolygon& poly);
bool point_in_convex_polygon(const ConvexPolygon& poly, Point p, double margin = 0.0);
double distance_to_convex_polygon(const ConvexPolygon& poly, Point p);
double distance_point_segment(Point p, Point a, Point b);

// One Sutherland-Hodgman clipping step: the part of `poly` inside `hp`.
ConvexPolygon clip_polygon(const ConvexPolygon& poly, const HalfPlane& hp);

// Exact area of disc ∩ polygon (per-edge triangle/arc decomposition).
double disc_polygon_intersection_area(const Disc& d, const ConvexPolygon& poly);

class Region;
using RegionPtr = std::shared_ptr<const Region>;

// Immutable algebraic region: primitive shapes composed by intersection,
// union, set difference and metric blow-up (all points within distance r of
// the base set).
class Region {
public:
    struct DiscNode { Disc disc; };
    struct HalfPlaneNode { HalfPlane hp; };
    struct PolygonNode { ConvexPolygon poly; };
    struct IntersectionNode { std::vector<RegionPtr> parts; };
    struct UnionNode { std::vector<RegionPtr> parts; };
    struct DifferenceNode { RegionPtr a, b; };
    struct BlowupNode { RegionPtr base; double r; };
    using Node = std::variant<DiscNode, HalfPlaneNode, PolygonNode, IntersectionNode,
                              UnionNode, DifferenceNode, BlowupNode>;

    static Region disc(Point center, double radius);
    static Region half_plane(HalfPlane hp);
    static Region half_plane(Point anchor, Point normal_direction);
    static Region convex_polygon(ConvexPolygon poly);
    static Region intersection(std::vector<Region> parts);
    static Region union_of(std::vector<Region> parts);
    static Region difference(Region a, Region b);
    static Region blowup(Region base, double r);

    // margin > 0: strictly inside by at least `margin`.
    // margin < 0: within distance |margin| of the closed region.
    bool contains(Point p, double margin = 0.0) const;

    // Euclidean distance to the closed region (0 inside). Supported for
    // discs, half-planes, polygons, unions and blow-ups of those.
    double distance_to(Point p) const;

    // nullopt means unbounded in at least one direction.
    std::optional<BoundingBox> bounding_box() const;

    const Node& node() const { return *node_; }

private:
    explicit Region(Node n);
    std::shared_ptr<const Node> node_;
};

struct AreaEstimate {
    double area = 0.0;
    double std_error = 0.0;  // 0 for closed-form evaluations
};

// Closed forms: disc, convex polygon, disc ∩ half-plane, and the difference
// of two equal-radius discs whose centers are one radius apart. Everything
// else is an unbiased Monte Carlo estimate over the bounding box using
// `quadrature_budget` samples (budget must be >= 10^4 on that path).
AreaEstimate region_area(const Region& region, long long quadrature_budget,
                         std::uint64_t mc_seed = 0x9e3779b97f4a7c15ULL);

enum class BlowupDomain { Plane, HalfPlane };

// Lower bound on |blowup(A, r)| - |A| for convex A, from the disc of equal
// area (full plane) or the half-disc based on the bounding line (half-plane).
double blowup_excess_lower_bound(double base_area, double r, BlowupDomain domain);

// Monotone chain; ties and duplicates collapsed; throws on empty input.
ConvexPolygon convex_hull(std::vector<Point> pts);

// Farthest pair distance via hull + rotating calipers.
double euclidean_diameter(const std::vector<Point>& pts);

}  // namespace knng
