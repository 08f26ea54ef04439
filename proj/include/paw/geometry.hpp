#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "paw/image.hpp"
#include "paw/point.hpp"

namespace paw {

inline constexpr int kBoundarySamples = 200;
inline constexpr int kAnchorCount = 16;

// Ordered cyclic boundary; the last point connects back to the first.
struct ClosedContour {
    std::vector<Point2> points;
};

// Strictly convex polygon, vertices clockwise on screen (y down), starting at
// the topmost vertex (min y, then min x).
struct ConvexPolygon {
    std::vector<Point2> vertices;

    double perimeter() const;
};

struct AnchorSet {
    std::vector<Point2> anchors;
    Point2 centroid;
    std::size_t reference_index = 0;
};

// Moore-neighbour tracing (8-connectivity) of the outer boundary of the
// component holding the first set pixel in raster order. Points are pixel
// centers, clockwise on screen.
ClosedContour trace_boundary(const BinaryMask& mask);

// Monotone chain hull. Collinear points are dropped.
ConvexPolygon convex_hull(std::span<const Point2> points);

// `count` points at equal arc-length spacing; sample 0 is the first vertex.
std::vector<Point2> resample_closed(const ConvexPolygon& polygon, int count = kBoundarySamples);

// Arc length from vertex 0 (clockwise) to the point on the boundary nearest `p`.
double boundary_arc_position(const ConvexPolygon& polygon, Point2 p);

// Topmost sample: min y, then min x, then smallest index.
std::size_t canonical_reference(std::span<const Point2> samples);

// Offset of anchor i from the reference: round(i * samples / anchors),
// halves away from zero.
std::size_t anchor_offset(int i, int sample_count, int anchor_count);

std::vector<Point2> select_anchors(std::span<const Point2> samples, std::size_t reference,
                                   int anchor_count = kAnchorCount);

Point2 centroid(std::span<const Point2> points);

// Absolute shoelace area.
double polygon_area(std::span<const Point2> vertices);

// Distance from `p` to the polygon boundary; positive inside, negative outside.
double signed_distance_inside(const ConvexPolygon& polygon, Point2 p);

}  // namespace paw
