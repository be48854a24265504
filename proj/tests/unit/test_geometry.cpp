#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <vector>

#include "knng/geometry.hpp"
#include "knng/rng.hpp"

using namespace knng;

namespace {

constexpr double kPi = std::numbers::pi;

Point random_point(Xoshiro256pp& rng, double lo, double hi) {
    return {lo + (hi - lo) * rng.uniform(), lo + (hi - lo) * rng.uniform()};
}

// O(n^3) hull-edge oracle: (i, j) is a hull edge iff every other point sits on
// one side of the line through them (non-strictly).
std::set<std::pair<int, int>> brute_hull_edges(const std::vector<Point>& pts) {
    std::set<std::pair<int, int>> edges;
    const int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            bool all_left = true;
            bool degenerate_pair = false;
            for (int t = 0; t < n && all_left; ++t) {
                if (t == i || t == j) continue;
                const double s = cross(pts[j] - pts[i], pts[t] - pts[i]);
                if (s < 0.0) all_left = false;
                if (s == 0.0) degenerate_pair = true;
            }
            if (all_left && !degenerate_pair)
                edges.insert({std::min(i, j), std::max(i, j)});
        }
    }
    return edges;
}

double brute_diameter(const std::vector<Point>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, dist(pts[i], pts[j]));
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("geometry");

TEST_CASE("square world side") {
    const SquareWorld w{100.0};
    CHECK(w.side() == doctest::Approx(10.0).epsilon(1e-15));
}

TEST_CASE("crescent area closed form matches the lune coefficient") {
    // |D(Q,r) \ D(P,r)| with |PQ| = r equals (pi/3 + sqrt(3)/2) r^2.
    Xoshiro256pp rng(2024);
    for (int rep = 0; rep < 25; ++rep) {
        const Point p = random_point(rng, -5.0, 5.0);
        const double r = 0.25 + 4.0 * rng.uniform();
        const double theta = 2.0 * kPi * rng.uniform();
        const Point q{p.x + r * std::cos(theta), p.y + r * std::sin(theta)};
        const Region lune = Region::difference(Region::disc(q, r), Region::disc(p, r));
        const AreaEstimate est = region_area(lune, 10000);
        CHECK(est.std_error == 0.0);  // closed-form path
        const double expected = (kPi / 3.0 + std::sqrt(3.0) / 2.0) * r * r;
        CHECK(est.area == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("disc and polygon closed forms") {
    const Region d = Region::disc({1.0, 2.0}, 3.0);
    CHECK(region_area(d, 10000).area == doctest::Approx(9.0 * kPi).epsilon(1e-14));

    const Region square = Region::convex_polygon(
        ConvexPolygon{{{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {0.0, 1.0}}});
    CHECK(region_area(square, 10000).area == doctest::Approx(2.0).epsilon(1e-14));

    CHECK(region_area(Region::disc({0, 0}, 0.0), 10000).area == 0.0);
}

TEST_CASE("disc cut by half-plane: circular segment closed form") {
    const double r = 2.0;
    // Half-plane through the center keeps exactly half the disc.
    const Region half = Region::intersection(
        {Region::disc({0, 0}, r), Region::half_plane({0, 0}, {1.0, 0.0})});
    CHECK(region_area(half, 10000).area == doctest::Approx(0.5 * kPi * r * r).epsilon(1e-12));

    // Offset cuts, checked against the analytic segment formula.
    for (double off : {-1.5, -0.5, 0.5, 1.3, 1.99}) {
        const Region cut = Region::intersection(
            {Region::disc({0, 0}, r), Region::half_plane({off, 0.0}, {1.0, 0.0})});
        const double expected =
            r * r * std::acos(off / r) - off * std::sqrt(r * r - off * off);
        CHECK(region_area(cut, 10000).area == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("Monte Carlo area agrees with closed forms") {
    // Lens of two equal discs at general separation has no closed-form path;
    // compare the MC estimate against the analytic lens area.
    const double r = 1.5;
    const double d = 1.1;
    const Region lens = Region::intersection(
        {Region::disc({0, 0}, r), Region::disc({d, 0}, r)});
    const AreaEstimate est = region_area(lens, 400000);
    CHECK(est.std_error > 0.0);
    const double lens_exact =
        2.0 * r * r * std::acos(d / (2.0 * r)) - 0.5 * d * std::sqrt(4.0 * r * r - d * d);
    CHECK(std::abs(est.area - lens_exact) <= 4.0 * est.std_error);

    // Union of two disjoint discs: MC vs sum of areas.
    const Region two = Region::union_of(
        {Region::disc({0, 0}, 1.0), Region::disc({5, 0}, 2.0)});
    const AreaEstimate est2 = region_area(two, 400000);
    CHECK(std::abs(est2.area - 5.0 * kPi) <= 4.0 * est2.std_error);
}

TEST_CASE("region area errors") {
    CHECK_THROWS_AS(region_area(Region::half_plane({0, 0}, {1, 0}), 100000),
                    std::runtime_error);
    const Region lens = Region::intersection(
        {Region::disc({0, 0}, 1.0), Region::disc({0.5, 0}, 1.0)});
    CHECK_THROWS_AS(region_area(lens, 100), std::invalid_argument);
}

TEST_CASE("region membership margins") {
    const Region d = Region::disc({0, 0}, 1.0);
    CHECK(d.contains({0.0, 0.0}));
    CHECK(d.contains({0.0, 0.0}, 0.999));
    CHECK_FALSE(d.contains({0.0, 0.0}, 1.001));
    CHECK(d.contains({1.0, 0.0}));
    CHECK_FALSE(d.contains({1.0, 0.0}, 1e-9));
    CHECK(d.contains({1.0 + 1e-4, 0.0}, -1e-3));  // relaxed membership

    const Region h = Region::half_plane({0, 0}, {0, 1});
    CHECK(h.contains({3.0, 0.0}));
    CHECK_FALSE(h.contains({3.0, -1e-12}));
    CHECK(h.contains({3.0, -0.5}, -0.6));

    const Region diff = Region::difference(Region::disc({0, 0}, 2.0), Region::disc({0, 0}, 1.0));
    CHECK(diff.contains({1.5, 0.0}));
    CHECK_FALSE(diff.contains({0.5, 0.0}));
    CHECK_FALSE(diff.contains({2.5, 0.0}));
}

TEST_CASE("region distances") {
    const Region d = Region::disc({0, 0}, 1.0);
    CHECK(d.distance_to({3.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.distance_to({0.5, 0.0}) == 0.0);

    const Region poly = Region::convex_polygon(
        ConvexPolygon{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}});
    CHECK(poly.distance_to({2.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(poly.distance_to({2.0, 2.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

    const Region grown = Region::blowup(poly, 0.25);
    CHECK(grown.contains({1.2, 0.5}));
    CHECK_FALSE(grown.contains({1.3, 0.5}));
    CHECK(grown.distance_to({2.0, 0.5}) == doctest::Approx(0.75).epsilon(1e-12));

    const Region meet = Region::intersection({d, poly});
    CHECK_THROWS_AS(meet.distance_to({0, 0}), std::runtime_error);
}

TEST_CASE("blow-up of a disc: exact growth equals the isoperimetric bound") {
    const double R = 1.7;
    const double r = 0.6;
    const double base = kPi * R * R;
    const Region grown = Region::blowup(Region::disc({0, 0}, R), r);
    const AreaEstimate est = region_area(grown, 400000);
    const double exact = kPi * (R + r) * (R + r);
    CHECK(std::abs(est.area - exact) <= 4.0 * est.std_error);
    // For discs the plane-domain lower bound is tight.
    const double bound = blowup_excess_lower_bound(base, r, BlowupDomain::Plane);
    CHECK(exact - base == doctest::Approx(bound).epsilon(1e-12));
    CHECK(est.area - base >= bound - 4.0 * est.std_error);
}

TEST_CASE("blow-up lower bound for convex sets (Monte Carlo)") {
    Xoshiro256pp rng(99);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<Point> pts;
        for (int i = 0; i < 12; ++i) pts.push_back(random_point(rng, 0.0, 4.0));
        const ConvexPolygon hull = convex_hull(pts);
        if (hull.degenerate()) continue;
        const double base = polygon_area(hull);
        const double r = 0.3 + rng.uniform();
        const Region grown = Region::blowup(Region::convex_polygon(hull), r);
        const AreaEstimate est = region_area(grown, 200000);
        const double bound = blowup_excess_lower_bound(base, r, BlowupDomain::Plane);
        CHECK(est.area - base >= bound - 4.0 * est.std_error);
    }
    // Half-plane domain bound is weaker than the full-plane bound.
    CHECK(blowup_excess_lower_bound(3.0, 0.5, BlowupDomain::HalfPlane) <
          blowup_excess_lower_bound(3.0, 0.5, BlowupDomain::Plane));
}

TEST_CASE("clip polygon by half-plane") {
    const ConvexPolygon square{{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}};
    const ConvexPolygon right = clip_polygon(square, make_half_plane({0.5, 0.0}, {1.0, 0.0}));
    CHECK(polygon_area(right) == doctest::Approx(0.5).epsilon(1e-12));
    const ConvexPolygon none = clip_polygon(square, make_half_plane({2.0, 0.0}, {1.0, 0.0}));
    CHECK(none.vertices.empty());
    const ConvexPolygon all = clip_polygon(square, make_half_plane({-1.0, 0.0}, {1.0, 0.0}));
    CHECK(polygon_area(all) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("disc-polygon intersection area") {
    const ConvexPolygon square{{{-2.0, -2.0}, {2.0, -2.0}, {2.0, 2.0}, {-2.0, 2.0}}};
    // Disc strictly inside.
    CHECK(disc_polygon_intersection_area({{0, 0}, 1.0}, square) ==
          doctest::Approx(kPi).epsilon(1e-12));
    // Polygon strictly inside the disc.
    CHECK(disc_polygon_intersection_area({{0, 0}, 10.0}, square) ==
          doctest::Approx(16.0).epsilon(1e-12));
    // Disjoint.
    CHECK(disc_polygon_intersection_area({{10, 0}, 1.0}, square) == doctest::Approx(0.0));
    // Disc centered on an edge: half the disc.
    CHECK(disc_polygon_intersection_area({{2.0, 0.0}, 1.0}, square) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-12));
    // Random overlaps vs Monte Carlo.
    Xoshiro256pp rng(7);
    for (int rep = 0; rep < 8; ++rep) {
        const Disc d{random_point(rng, -3.0, 3.0), 0.5 + 2.0 * rng.uniform()};
        const double exact = disc_polygon_intersection_area(d, square);
        const Region meet = Region::intersection(
            {Region::disc(d.center, d.radius), Region::convex_polygon(square)});
        const AreaEstimate est = region_area(meet, 200000);
        CHECK(std::abs(est.area - exact) <= std::max(4.0 * est.std_error, 1e-9));
    }
}

TEST_CASE("convex hull against the edge oracle") {
    Xoshiro256pp rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 4 + static_cast<int>(rng.uniform() * 30);
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, 0.0, 10.0));
        const ConvexPolygon hull = convex_hull(pts);
        REQUIRE(!hull.degenerate());
        // Every input point inside the hull (with slack).
        for (const Point& p : pts) CHECK(point_in_convex_polygon(hull, p, -1e-9));
        // Hull vertices are input points.
        for (const Point& v : hull.vertices) {
            const bool found = std::any_of(pts.begin(), pts.end(), [&](const Point& p) {
                return p.x == v.x && p.y == v.y;
            });
            CHECK(found);
        }
        // CCW convexity.
        const auto& h = hull.vertices;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Point a = h[i];
            const Point b = h[(i + 1) % h.size()];
            const Point c = h[(i + 2) % h.size()];
            CHECK(cross(b - a, c - b) > 0.0);
        }
        // Edge set equals the brute-force oracle.
        std::set<std::pair<int, int>> got;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const Point a = h[i];
            const Point b = h[(i + 1) % h.size()];
            int ia = -1, ib = -1;
            for (int t = 0; t < n; ++t) {
                if (pts[t].x == a.x && pts[t].y == a.y) ia = t;
                if (pts[t].x == b.x && pts[t].y == b.y) ib = t;
            }
            got.insert({std::min(ia, ib), std::max(ia, ib)});
        }
        CHECK(got == brute_hull_edges(pts));
    }
}

TEST_CASE("convex hull degenerate inputs") {
    CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
    const ConvexPolygon single = convex_hull({{1.0, 2.0}});
    CHECK(single.vertices.size() == 1);
    CHECK(single.degenerate());
    const ConvexPolygon dup = convex_hull({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}});
    CHECK(dup.vertices.size() == 1);
    const ConvexPolygon seg = convex_hull({{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}});
    CHECK(seg.vertices.size() == 2);
    CHECK(polygon_area(seg) == 0.0);
}

TEST_CASE("diameter equals the brute-force farthest pair") {
    Xoshiro256pp rng(55);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + static_cast<int>(rng.uniform() * 64);
        std::vector<Point> pts;
        for (int i = 0; i < n; ++i) pts.push_back(random_point(rng, -20.0, 20.0));
        CHECK(euclidean_diameter(pts) == brute_diameter(pts));
    }
    CHECK(euclidean_diameter({{3.0, 4.0}}) == 0.0);
    CHECK(euclidean_diameter({{0.0, 0.0}, {3.0, 4.0}}) == 5.0);
}

TEST_CASE("point-segment and polygon distances") {
    CHECK(distance_point_segment({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(distance_point_segment({-2, 0}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(distance_point_segment({0, 0}, {0, 0}, {0, 0}) == doctest::Approx(0.0));
    const ConvexPolygon tri{{{0.0, 0.0}, {2.0, 0.0}, {0.0, 2.0}}};
    CHECK(distance_to_convex_polygon(tri, {0.5, 0.5}) == 0.0);
    CHECK(distance_to_convex_polygon(tri, {-1.0, 0.0}) == doctest::Approx(1.0));
}

TEST_SUITE_END();
