#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "paw/error.hpp"
#include "paw/fan.hpp"
#include "paw/geometry.hpp"
#include "paw/warp.hpp"
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

// Barycentric coordinates of p in triangle (a, b, c), solved independently of
// the affine solver.
std::array<double, 3> barycentric(Point2 p, Point2 a, Point2 b, Point2 c) {
    const double den = (b.y - c.y) * (a.x - c.x) + (c.x - b.x) * (a.y - c.y);
    const double l0 = ((b.y - c.y) * (p.x - c.x) + (c.x - b.x) * (p.y - c.y)) / den;
    const double l1 = ((c.y - a.y) * (p.x - c.x) + (a.x - c.x) * (p.y - c.y)) / den;
    return {l0, l1, 1.0 - l0 - l1};
}

std::vector<std::array<Point2, 4>> suite_quads(int masks) {
    std::vector<std::array<Point2, 4>> quads;
    for (const auto& m : synth::suite_masks(masks, 31)) {
        const ConvexPolygon h = convex_hull(trace_boundary(m).points);
        const auto s = resample_closed(h, 200);
        const auto a = select_anchors(s, canonical_reference(s));
        const Point2 c = centroid(a);
        FanPartition fan = build_triangles(order_anchors(a, c), c);
        for (const auto& q : pair_quadrilaterals(fan))
            quads.push_back({fan.vertex(q[0]), fan.vertex(q[1]), fan.vertex(q[2]), fan.vertex(q[3])});
    }
    return quads;
}

}  // namespace

TEST_CASE("solve_affine") {
    const std::array<Point2, 3> tri{Point2{3, 4}, Point2{20, 7}, Point2{9, 30}};
    SUBCASE("identity") {
        const AffineMap m = solve_affine(tri, tri);
        const std::array<double, 6> id{1, 0, 0, 0, 1, 0};
        for (int i = 0; i < 6; ++i) CHECK(std::abs(m.m[i] - id[i]) < 1e-12);
    }
    SUBCASE("translation") {
        std::array<Point2, 3> dst;
        for (int i = 0; i < 3; ++i) dst[i] = tri[i] + Point2{5, -3};
        const AffineMap m = solve_affine(tri, dst);
        const std::array<double, 6> expected{1, 0, 5, 0, 1, -3};
        for (int i = 0; i < 6; ++i) CHECK(std::abs(m.m[i] - expected[i]) < 1e-12);
    }
    SUBCASE("diagonal scaling") {
        const AffineMap m = solve_affine({Point2{0, 0}, Point2{1, 0}, Point2{0, 1}}, {Point2{0, 0}, Point2{2, 0}, Point2{0, 3}});
        const std::array<double, 6> expected{2, 0, 0, 0, 3, 0};
        for (int i = 0; i < 6; ++i) CHECK(m.m[i] == expected[i]);
    }
    SUBCASE("collinear source") {
        CHECK(kind_of([&] { solve_affine({Point2{0, 0}, Point2{1, 1}, Point2{2, 2}}, tri); }) == ErrorKind::CollinearSource);
    }
    SUBCASE("random correspondences are exact and invertible") {
        synth::Rng rng(41);
        for (int trial = 0; trial < 200; ++trial) {
            std::array<Point2, 3> s, d;
            for (int i = 0; i < 3; ++i) {
                s[i] = {rng.uniform(0, 112), rng.uniform(0, 112)};
                d[i] = {rng.uniform(0, 28), rng.uniform(0, 28)};
            }
            if (std::abs(orient(s[0], s[1], s[2])) < 1.0 || std::abs(orient(d[0], d[1], d[2])) < 1.0) continue;
            const AffineMap m = solve_affine(s, d);
            const AffineMap inv = m.inverse();
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(m.apply(s[i]).x - d[i].x) < 1e-9);
                CHECK(std::abs(m.apply(s[i]).y - d[i].y) < 1e-9);
                CHECK(distance(inv.apply(d[i]), s[i]) < 1e-8);
            }
        }
    }
}

TEST_CASE("warp_quad_to_patch") {
    SUBCASE("identity quad crops the square") {
        synth::Rng rng(42);
        Image img(40, 40, 3);
        for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.below(256));
        const std::array<Point2, 4> quad{Point2{0.5, 0.5}, Point2{27.5, 0.5}, Point2{27.5, 27.5}, Point2{0.5, 27.5}};
        const Image patch = warp_quad_to_patch(img, quad, 28);
        for (int y = 0; y < 28; ++y)
            for (int x = 0; x < 28; ++x)
                for (int c = 0; c < 3; ++c) CHECK(patch.at(x, y, c) == img.at(x, y, c));
    }
    SUBCASE("constant image") {
        const Image img(112, 112, 1, 77);
        for (const auto& q : suite_quads(2)) {
            const Image patch = warp_quad_to_patch(img, q);
            for (auto v : patch.data()) CHECK(v == 77);
        }
    }
    SUBCASE("linear ramp pulls back through the affine pair") {
        const Image ramp = synth::ramp_x(112);
        for (const auto& q : suite_quads(4)) {
            const QuadWarp w = make_quad_warp(q);
            const Image patch = warp_quad_to_patch(ramp, w);
            const auto t1 = w.first_target(), t2 = w.second_target();
            for (int y = 0; y < 28; ++y)
                for (int x = 0; x < 28; ++x) {
                    const Point2 center{x + 0.5, y + 0.5};
                    const bool first = x + y <= 27;
                    const auto& tgt = first ? t1 : t2;
                    const auto src = first ? w.first_source() : w.second_source();
                    const auto l = barycentric(center, tgt[0], tgt[1], tgt[2]);
                    const Point2 s = l[0] * src[0] + l[1] * src[1] + l[2] * src[2];
                    const double expected = std::clamp(s.x - 0.5, 0.0, 111.0);
                    CHECK(std::abs(patch.at(x, y) - expected) <= 0.5 + 1e-9);
                }
        }
    }
    SUBCASE("degenerate quad") {
        const std::array<Point2, 4> quad{Point2{1, 1}, Point2{2, 2}, Point2{9, 3}, Point2{3, 3}};
        CHECK(kind_of([&] { make_quad_warp(quad); }) == ErrorKind::DegenerateTriangle);
    }
}

TEST_CASE("quad warp invariants") {
    for (const auto& q : suite_quads(6)) {
        const QuadWarp w = make_quad_warp(q);
        const auto s1 = w.first_source(), s2 = w.second_source();
        const auto t1 = w.first_target(), t2 = w.second_target();
        for (int i = 0; i < 3; ++i) {
            CHECK(distance(w.first_forward.apply(s1[i]), t1[i]) < 1e-9);
            CHECK(distance(w.second_forward.apply(s2[i]), t2[i]) < 1e-9);
        }
        for (int y = 0; y < 28; ++y)
            for (int x = 0; x < 28; ++x) {
                const Point2 center{x + 0.5, y + 0.5};
                const auto b1 = barycentric(center, t1[0], t1[1], t1[2]);
                const auto b2 = barycentric(center, t2[0], t2[1], t2[2]);
                const bool inside1 = std::min({b1[0], b1[1], b1[2]}) >= -1e-9;
                const bool inside2 = std::min({b2[0], b2[1], b2[2]}) >= -1e-9;
                CHECK((inside1 || inside2));        // nothing left unassigned
                CHECK(w.in_first(x, y) == inside1);  // diagonal ties go to the first triangle
                if (x + y == 27) CHECK(distance(w.first_inverse.apply(center), w.second_inverse.apply(center)) < 1e-6);

                // the sample stays inside its source triangle
                const Point2 s = w.source_of(x, y);
                const auto& src = w.in_first(x, y) ? s1 : s2;
                const auto l = barycentric(s, src[0], src[1], src[2]);
                CHECK(std::min({l[0], l[1], l[2]}) >= -1e-9);
            }
    }
}

TEST_CASE("stitch and slice") {
    std::vector<Image> patches;
    for (int i = 0; i < 16; ++i) patches.emplace_back(28, 28, 1, static_cast<std::uint8_t>(i + 1));
    const Image canvas = stitch(patches);
    REQUIRE(canvas.width() == 112);
    REQUIRE(canvas.height() == 112);
    for (int r = 0; r < 112; ++r)
        for (int c = 0; c < 112; ++c) CHECK(canvas.at(c, r) == 4 * (r / 28) + (c / 28) + 1);

    synth::Rng rng(43);
    std::vector<Image> noisy;
    for (int i = 0; i < 16; ++i) {
        Image p(28, 28, 3);
        for (auto& v : p.data()) v = static_cast<std::uint8_t>(rng.below(256));
        noisy.push_back(std::move(p));
    }
    const Image stitched = stitch(noisy);
    CHECK(slice(stitched) == noisy);
    // borders are copied verbatim, no blending across patch seams
    for (int i = 0; i < 28; ++i) {
        CHECK(stitched.at(27, i, 0) == noisy[0].at(27, i, 0));
        CHECK(stitched.at(28, i, 0) == noisy[1].at(0, i, 0));
    }

    CHECK(kind_of([&] { stitch(std::span(patches).first(15)); }) == ErrorKind::WrongPatchCount);
    patches[7] = Image(27, 28, 1);
    CHECK(kind_of([&] { stitch(patches); }) == ErrorKind::WrongPatchSize);
}
