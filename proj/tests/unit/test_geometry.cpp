#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "paw/error.hpp"
#include "paw/geometry.hpp"
#include "synth.hpp"

using namespace paw;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const PawError& e) {
        return e.kind();
    }
    FAIL("no PawError thrown");
    return ErrorKind::InvalidArgument;
}

std::set<std::pair<int, int>> pixels_of(const ClosedContour& c) {
    std::set<std::pair<int, int>> s;
    for (const Point2& p : c.points) s.emplace(static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y)));
    return s;
}

bool has_false_neighbor(const BinaryMask& m, int x, int y, bool diagonals) {
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!diagonals && dx != 0 && dy != 0) continue;
            if (!m.get_or_false(x + dx, y + dy)) return true;
        }
    return false;
}

std::vector<Point2> regular_polygon(int n, Point2 center, double radius, double phase = 0.0) {
    std::vector<Point2> v;
    for (int i = 0; i < n; ++i) {
        const double t = phase + 2.0 * std::numbers::pi * i / n;
        v.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    return v;
}

}  // namespace

TEST_CASE("trace_boundary") {
    SUBCASE("single pixel is degenerate") {
        BinaryMask m(3, 3);
        m.set(1, 1);
        CHECK(kind_of([&] { trace_boundary(m); }) == ErrorKind::DegenerateRegion);
    }
    SUBCASE("two pixels are degenerate") {
        BinaryMask m(5, 5);
        m.set(1, 1), m.set(2, 2);
        CHECK(kind_of([&] { trace_boundary(m); }) == ErrorKind::DegenerateRegion);
    }
    SUBCASE("empty") { CHECK(kind_of([&] { trace_boundary(BinaryMask(4, 4)); }) == ErrorKind::EmptyMask); }
    SUBCASE("4x4 block, clockwise from the top-left") {
        BinaryMask m(8, 8);
        for (int y = 2; y < 6; ++y)
            for (int x = 2; x < 6; ++x) m.set(x, y);
        const std::vector<std::pair<int, int>> expected{{2, 2}, {3, 2}, {4, 2}, {5, 2}, {5, 3}, {5, 4},
                                                        {5, 5}, {4, 5}, {3, 5}, {2, 5}, {2, 4}, {2, 3}};
        const ClosedContour c = trace_boundary(m);
        REQUIRE(c.points.size() == 12);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            CHECK(c.points[i].x == expected[i].first + 0.5);
            CHECK(c.points[i].y == expected[i].second + 0.5);
        }
        std::set<std::pair<int, int>> oracle;
        for (int y = 0; y < 8; ++y)
            for (int x = 0; x < 8; ++x)
                if (m.get(x, y) && has_false_neighbor(m, x, y, true)) oracle.emplace(x, y);
        CHECK(pixels_of(c) == oracle);
    }
    SUBCASE("full frame traces the border") {
        const ClosedContour c = trace_boundary(BinaryMask(112, 112, true));
        CHECK(c.points.size() == 4 * 111);
        for (const Point2& p : c.points) {
            const bool border = p.x == 0.5 || p.y == 0.5 || p.x == 111.5 || p.y == 111.5;
            CHECK(border);
        }
        CHECK(c.points[1] == Point2{1.5, 0.5});  // heads right along the top edge
    }
    SUBCASE("random blobs: ordered 8-connected cycle of boundary pixels") {
        synth::Rng rng(11);
        for (int trial = 0; trial < 30; ++trial) {
            const BinaryMask m = synth::blob_mask(112, synth::random_blob(rng, 112));
            const ClosedContour c = trace_boundary(m);
            for (std::size_t i = 0; i < c.points.size(); ++i) {
                const Point2 a = c.points[i], b = c.points[(i + 1) % c.points.size()];
                CHECK(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)) == 1.0);
            }
            const auto traced = pixels_of(c);
            for (int y = 0; y < 112; ++y)
                for (int x = 0; x < 112; ++x) {
                    if (!m.get(x, y)) continue;
                    if (traced.count({x, y})) CHECK(has_false_neighbor(m, x, y, true));
                    if (has_false_neighbor(m, x, y, false)) CHECK(traced.count({x, y}) == 1);
                }
        }
    }
}

TEST_CASE("convex_hull") {
    SUBCASE("square corners plus center") {
        const std::vector<Point2> pts{{0, 0}, {10, 0}, {10, 10}, {0, 10}, {5, 5}, {5, 0}};
        const ConvexPolygon h = convex_hull(pts);
        const std::vector<Point2> expected{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
        CHECK(h.vertices == expected);
    }
    SUBCASE("triangle is its own hull") {
        const std::vector<Point2> pts{{3, 7}, {1, 1}, {9, 2}};
        const ConvexPolygon h = convex_hull(pts);
        CHECK(h.vertices.size() == 3);
        CHECK(h.vertices.front() == Point2{1, 1});  // topmost first
        CHECK(orient(h.vertices[0], h.vertices[1], h.vertices[2]) > 0);
    }
    SUBCASE("collinear input") {
        const std::vector<Point2> pts{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
        CHECK(kind_of([&] { convex_hull(pts); }) == ErrorKind::CollinearInput);
        const std::vector<Point2> two{{0, 0}, {1, 1}, {0, 0}};
        CHECK(kind_of([&] { convex_hull(two); }) == ErrorKind::CollinearInput);
    }
    SUBCASE("1000 random points in a disk") {
        synth::Rng rng(12);
        std::vector<Point2> pts;
        while (pts.size() < 1000) {
            const Point2 p{rng.uniform(-1, 1), rng.uniform(-1, 1)};
            if (p.x * p.x + p.y * p.y <= 1.0) pts.push_back(p);
        }
        const ConvexPolygon h = convex_hull(pts);
        const auto& v = h.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            // strictly convex, clockwise on screen
            CHECK(orient(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]) > kGeomEps);
            for (const Point2& p : pts) {
                const Point2 a = v[i], b = v[(i + 1) % v.size()];
                CHECK(orient(a, b, p) / distance(a, b) >= -kGeomEps);
            }
        }
        for (const Point2& p : v) CHECK(p.y >= v.front().y);
    }
}

TEST_CASE("resample_closed") {
    SUBCASE("square side 100 gives gaps of 2") {
        const ConvexPolygon sq{{{0, 0}, {100, 0}, {100, 100}, {0, 100}}};
        const auto s = resample_closed(sq, 200);
        REQUIRE(s.size() == 200);
        CHECK(s[0] == Point2{0, 0});
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(distance(s[i], s[(i + 1) % 200]) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("equilateral triangle gaps are 3s/200") {
        const double side = 60.0;
        const ConvexPolygon tri{{{0, 0}, {side, 0}, {side / 2, side * std::sqrt(3.0) / 2}}};
        const auto s = resample_closed(tri, 200);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double a = boundary_arc_position(tri, s[i]);
            const double b = i + 1 < s.size() ? boundary_arc_position(tri, s[i + 1]) : 3 * side;
            CHECK(b - a == doctest::Approx(3 * side / 200).epsilon(1e-9));
        }
    }
    SUBCASE("regular 200-gon reproduces its vertices") {
        const ConvexPolygon poly{regular_polygon(200, {56, 56}, 40)};
        const auto s = resample_closed(poly, 200);
        for (std::size_t i = 0; i < 200; ++i) CHECK(distance(s[i], poly.vertices[i]) < 1e-6);
    }
    SUBCASE("zero perimeter") {
        const ConvexPolygon dot{{{3, 3}, {3, 3}, {3, 3}}};
        CHECK(kind_of([&] { resample_closed(dot, 200); }) == ErrorKind::ZeroPerimeter);
    }
    SUBCASE("uniform arc spacing on random hulls") {
        synth::Rng rng(13);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<Point2> pts;
            for (int k = 0; k < 30; ++k) pts.push_back({rng.uniform(0, 112), rng.uniform(0, 112)});
            const ConvexPolygon h = convex_hull(pts);
            const auto s = resample_closed(h, 200);
            const double per = h.perimeter();
            double lo = 1e300, hi = -1e300;
            for (std::size_t i = 0; i < s.size(); ++i) {
                const double a = boundary_arc_position(h, s[i]);
                const double b = i + 1 < s.size() ? boundary_arc_position(h, s[i + 1]) : per;
                lo = std::min(lo, b - a), hi = std::max(hi, b - a);
            }
            CHECK(hi - lo <= 1e-6 * per);
        }
    }
}

TEST_CASE("canonical_reference") {
    std::vector<Point2> s(12, Point2{5, 9});
    s[7] = {4, 1};
    CHECK(canonical_reference(s) == 7);
    s[3] = {9, 0}, s[5] = {3, 0};
    CHECK(canonical_reference(s) == 5);
    CHECK(canonical_reference(std::vector<Point2>(8, Point2{2, 2})) == 0);
}

TEST_CASE("select_anchors") {
    SUBCASE("offsets round half away from zero") {
        const std::vector<std::size_t> expected{0, 13, 25, 38, 50, 63, 75, 88, 100, 113, 125, 138, 150, 163, 175, 188};
        for (int i = 0; i < 16; ++i) CHECK(anchor_offset(i, 200, 16) == expected[i]);
    }
    SUBCASE("circle spacing within 0.9 degrees") {
        const auto samples = regular_polygon(200, {0, 0}, 50);
        const auto anchors = select_anchors(samples, 0);
        REQUIRE(anchors.size() == 16);
        for (int i = 0; i < 16; ++i) {
            double deg = std::atan2(anchors[i].y, anchors[i].x) * 180.0 / std::numbers::pi;
            if (deg < -1e-9) deg += 360.0;
            CHECK(std::abs(deg - 22.5 * i) <= 0.9 + 1e-9);
        }
    }
    SUBCASE("reference shift") {
        const auto samples = regular_polygon(200, {0, 0}, 50);
        const auto a0 = select_anchors(samples, 0), a100 = select_anchors(samples, 100);
        for (int i = 0; i < 16; ++i) CHECK(a100[i] == samples[(100 + anchor_offset(i, 200, 16)) % 200]);
        CHECK(a100[0] == a0[8]);
    }
    SUBCASE("identical samples") {
        const auto anchors = select_anchors(std::vector<Point2>(200, Point2{4, 4}), 0);
        for (const auto& a : anchors) CHECK(a == Point2{4, 4});
    }
}

TEST_CASE("centroid and area") {
    const auto circle = regular_polygon(16, {56, 56}, 30, 0.1);
    const Point2 c = centroid(circle);
    CHECK(std::abs(c.x - 56) < 1e-9);
    CHECK(std::abs(c.y - 56) < 1e-9);
    CHECK(centroid(std::vector<Point2>(16, Point2{3, -2})) == Point2{3, -2});

    const ConvexPolygon sq{{{0, 0}, {100, 0}, {100, 100}, {0, 100}}};
    const auto anchors = select_anchors(resample_closed(sq, 200), 0);
    double sx = 0, sy = 0;
    for (const auto& a : anchors) sx += a.x, sy += a.y;
    CHECK(centroid(anchors).x == doctest::Approx(sx / 16));
    CHECK(centroid(anchors).y == doctest::Approx(sy / 16));

    const std::vector<Point2> unit{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(polygon_area(unit) == 1.0);
    const std::vector<Point2> tri{{0, 0}, {4, 0}, {0, 3}};
    CHECK(polygon_area(tri) == 6.0);

    synth::Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Point2> pts;
        for (int k = 0; k < 20; ++k) pts.push_back({rng.uniform(-50, 50), rng.uniform(-50, 50)});
        const ConvexPolygon h = convex_hull(pts);
        const Point2 inner = centroid(h.vertices);
        double fan = 0.0;
        for (std::size_t i = 0; i < h.vertices.size(); ++i)
            fan += 0.5 * std::abs(orient(inner, h.vertices[i], h.vertices[(i + 1) % h.vertices.size()]));
        CHECK(polygon_area(h.vertices) == doctest::Approx(fan).epsilon(1e-12));
        CHECK(signed_distance_inside(h, inner) > 0);
    }
}

TEST_CASE("anchors are deterministic for identical masks") {
    const auto masks = synth::suite_masks(6, 99);
    for (const auto& m : masks) {
        auto run = [&] {
            const ConvexPolygon h = convex_hull(trace_boundary(m).points);
            const auto s = resample_closed(h, 200);
            return select_anchors(s, canonical_reference(s));
        };
        CHECK(run() == run());
    }
}
