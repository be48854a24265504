#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knng/components.hpp"

namespace knng {

enum class AuditMode { Interior, Boundary };
enum class WorldSide { Bottom, Right, Top, Left };

inline constexpr std::uint32_t kNoSupportPoint = 0xffffffffu;

// One boundary line of the circumscribed hull: dot(x, normal) <= support
// inside. Tangent lines carry the index of a touching component point;
// the window side in boundary mode has support_point = kNoSupportPoint.
struct SupportLine {
    Point normal;
    double support = 0.0;
    std::uint32_t support_point = kNoSupportPoint;
};

struct HullConstruction {
    AuditMode mode = AuditMode::Interior;
    std::optional<WorldSide> base_side;       // boundary mode only
    std::vector<SupportLine> lines;           // cyclic, increasing normal angle
    std::vector<std::size_t> tangent_indices;  // entries of `lines` that are tangents
    ConvexPolygon hull;                        // the bounded region H
    bool degenerate = false;
};

// Circumscribed hexagon: supporting tangents with outward normals every 60
// degrees (lines at 0 and +-60 degrees to the horizontal).
HullConstruction hexagon_hull(const std::vector<Point>& component_points);

// Circumscribed five-sided hull against window side E: the four supporting
// tangents at 90 and +-30 degrees to E that do not face E, plus E itself.
HullConstruction boundary_hull(const std::vector<Point>& component_points,
                               const SquareWorld& world, WorldSide side);

// Exterior wedge H_i for every tangent side: beyond the side's line, between
// the exterior angle bisectors at its two hull vertices. Pairwise disjoint.
std::vector<Region> bisector_regions(const HullConstruction& hc);

struct AuditConfig {
    double tolerance = 1e-9;
    double witness_shrink = 0.0;   // additive reduction of r0 when reporting x
    double near_side_mult = 1.0;   // side proximity threshold multiplier
    double small_coeff = 1.0;
    long long area_budget = 100000;  // Monte Carlo budget for clipped lune area
};

struct AuditReport {
    bool skipped = false;
    std::string skip_reason;
    AuditMode mode = AuditMode::Interior;
    std::optional<WorldSide> base_side;
    bool hull_degenerate = false;

    // (a) the exterior wedge of every tangent side, cut to that side's
    //     selection disc, holds no process points
    bool fact_a = true;
    // (b) the least disc-hull overlap holds at least k+1 points, all from the
    //     audited component
    bool fact_b = true;
    // (c) the witness crescent holds at least k points
    bool fact_c = true;
    // (d) no point lies in both the least overlap and the crescent
    bool fact_d = true;
    // (e) every outside point keeps distance > r0 - tol from the component
    bool fact_e = true;

    std::vector<std::uint32_t> offending_points;  // fact (a) witnesses, global ids

    std::size_t min_region_side = 0;  // tangent index chosen for the least overlap
    double min_region_area = 0.0;     // |A_0|, exact
    std::size_t min_region_count = 0;  // process points in the least overlap
    double lune_area = 0.0;           // |B|
    double lune_area_se = 0.0;        // 0 unless the crescent was clipped
    bool lune_clipped = false;
    std::size_t lune_count = 0;       // process points in the crescent
    double witness_radius = 0.0;      // r0
    std::uint32_t witness_inside = 0;
    std::uint32_t witness_outside = 0;
    double x_ratio = 0.0;  // max(r0 - shrink, 0) / sqrt(|A_0| / pi)

    std::vector<double> disc_radii;        // selection-disc radius per tangent
    std::vector<Region> tangent_regions;   // A_i per tangent side
    std::optional<Region> min_region;      // A_0
    std::optional<Region> witness_region;  // B
};

// Distance from a point to one window side.
double side_distance(const Point& p, WorldSide side, double world_side_length);

// Side-proximity threshold used to pick the audit mode:
// 2 * near_side_mult * small_coeff * sqrt(ln area_n).
double near_side_threshold(double area_n, const AuditConfig& config);

// How many window sides lie strictly closer than the threshold to the set.
int near_side_count(const std::vector<Point>& pts, const SquareWorld& world, double threshold);

// Checks the crescent-and-hull facts for one non-giant component against the
// full point set. The component must be a proper subset of the vertices and
// no larger than half of them.
AuditReport audit_component(const PointSet& ps, const NeighborGraph& g,
                            const std::vector<std::uint32_t>& component, AuditMode mode,
                            const AuditConfig& config = {});

}  // namespace knng
