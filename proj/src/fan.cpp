#include "paw/fan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "paw/error.hpp"

namespace paw {

double FanPartition::triangle_area(int t) const {
    const auto& tri = triangles.at(t);
    return 0.5 * std::abs(orient(vertex(tri[0]), vertex(tri[1]), vertex(tri[2])));
}

std::vector<Point2> order_anchors(std::span<const Point2> anchors, Point2 centroid) {
    const std::size_t n = anchors.size();
    if (n < 3) throw PawError(ErrorKind::InvalidArgument, "need at least 3 anchors");

    for (std::size_t i = 0; i < n; ++i) {
        if (distance(anchors[i], centroid) <= kGeomEps)
            throw PawError(ErrorKind::DegenerateCentroid, "centroid coincides with anchor " + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(anchors[i], anchors[j]) <= kGeomEps)
                throw PawError(ErrorKind::DuplicateAnchors,
                               "anchors " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }

    auto upper_less = [](Point2 a, Point2 b) { return a.y != b.y ? a.y < b.y : a.x < b.x; };

    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) longest = std::max(longest, squared_distance(anchors[i], anchors[j]));

    // Diagonals equal up to rounding count as tied; the start is the upper
    // endpoint that is smallest by (y, x) over all tied pairs.
    const double tied = longest * (1.0 - 1e-12);
    bool found = false;
    Point2 start;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (squared_distance(anchors[i], anchors[j]) < tied) continue;
            const Point2 upper = upper_less(anchors[i], anchors[j]) ? anchors[i] : anchors[j];
            if (!found || upper_less(upper, start)) start = upper, found = true;
        }
    }

    const double start_angle = std::atan2(start.y - centroid.y, start.x - centroid.x);
    auto sweep = [&](Point2 p) {
        double a = std::atan2(p.y - centroid.y, p.x - centroid.x) - start_angle;
        while (a < 0.0) a += 2.0 * std::numbers::pi;
        while (a >= 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
        return a;
    };

    struct Keyed {
        double angle, radius;
        Point2 p;
    };
    std::vector<Keyed> rest;
    rest.reserve(n - 1);
    for (const Point2& p : anchors)
        if (!(p == start)) rest.push_back({sweep(p), distance(p, centroid), p});
    std::sort(rest.begin(), rest.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.angle, a.radius, a.p.y, a.p.x) < std::tie(b.angle, b.radius, b.p.y, b.p.x);
    });

    std::vector<Point2> ordered{start};
    for (const Keyed& k : rest) ordered.push_back(k.p);

    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = ordered[i], b = ordered[(i + 1) % n];
        if (orient(centroid, a, b) / distance(a, b) <= kGeomEps)
            throw PawError(ErrorKind::DegenerateCentroid, "centroid is not strictly inside the anchor polygon");
    }
    return ordered;
}

FanPartition build_triangles(std::span<const Point2> ordered_anchors, Point2 centroid) {
    const int k = static_cast<int>(ordered_anchors.size());
    if (k < 3) throw PawError(ErrorKind::InvalidArgument, "need at least 3 anchors");

    FanPartition fan;
    fan.ordered_anchors.assign(ordered_anchors.begin(), ordered_anchors.end());
    fan.centroid = centroid;
    fan.triangles.reserve(k);
    for (int i = 1; i <= k; ++i) {
        const int next = i % k + 1;
        const double twice_area = orient(centroid, fan.vertex(i), fan.vertex(next));
        if (twice_area <= kGeomEps)
            throw PawError(ErrorKind::DegenerateTriangle,
                           "triangle " + std::to_string(i) + " has twice-area " + std::to_string(twice_area) +
                               " (degenerate or counter-clockwise)");
        fan.triangles.push_back({0, i, next});
    }
    return fan;
}

std::vector<std::array<int, 4>> pair_quadrilaterals(FanPartition& partition) {
    const int k = partition.anchor_count();
    if (static_cast<int>(partition.triangles.size()) != k || k < 3)
        throw PawError(ErrorKind::DegenerateTriangle, "partition has no valid triangle set");
    partition.quads.clear();
    partition.quads.reserve(k);
    for (int i = 1; i <= k; ++i) partition.quads.push_back({i, i % k + 1, (i + 1) % k + 1, 0});
    return partition.quads;
}

}  // namespace paw
