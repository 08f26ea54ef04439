#pragma once

#include <array>
#include <span>
#include <vector>

#include "paw/point.hpp"

namespace paw {

// Triangular fan around the centroid. Vertex index 0 is the centroid and
// indices 1..k are the ordered anchors; every index triple and quad refers
// to `vertex(i)`.
struct FanPartition {
    std::vector<Point2> ordered_anchors;
    Point2 centroid;
    std::vector<std::array<int, 3>> triangles;  // (0, i, i+1), i = 1..k, wrapping
    std::vector<std::array<int, 4>> quads;      // (i, i+1, i+2, 0), wrapping

    int anchor_count() const { return static_cast<int>(ordered_anchors.size()); }
    Point2 vertex(int index) const { return index == 0 ? centroid : ordered_anchors[index - 1]; }
    double triangle_area(int t) const;
};

// Starts at the upper endpoint of the longest anchor pair and proceeds
// clockwise on screen around the centroid.
std::vector<Point2> order_anchors(std::span<const Point2> anchors, Point2 centroid);

FanPartition build_triangles(std::span<const Point2> ordered_anchors, Point2 centroid);

// Sliding-window pairing: quad i joins triangles i and i+1 across the shared
// edge P0-P(i+1), so each triangle belongs to two quads.
std::vector<std::array<int, 4>> pair_quadrilaterals(FanPartition& partition);

}  // namespace paw
