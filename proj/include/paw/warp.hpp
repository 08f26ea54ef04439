#pragma once

#include <array>
#include <span>
#include <vector>

#include "paw/image.hpp"
#include "paw/point.hpp"

namespace paw {

inline constexpr int kPatchSize = 28;
inline constexpr int kGridSize = 4;

// (x, y) -> (m[0] x + m[1] y + m[2], m[3] x + m[4] y + m[5])
struct AffineMap {
    std::array<double, 6> m{1.0, 0.0, 0.0, 0.0, 1.0, 0.0};

    Point2 apply(Point2 p) const { return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]}; }
    double determinant() const { return m[0] * m[4] - m[1] * m[3]; }
    AffineMap inverse() const;
};

// Unique affine map taking src[i] to dst[i]. Throws CollinearSource when the
// source triangle has twice-area <= 1e-9.
AffineMap solve_affine(const std::array<Point2, 3>& src, const std::array<Point2, 3>& dst);

// Two-triangle warp of quad (Pi, Pi+1, Pi+2, P0) onto a size x size square.
// Corners sit on pixel centers: A top-left, B top-right, C bottom-right,
// D bottom-left. (Pi, Pi+1, P0) -> (A, B, D) and (Pi+1, Pi+2, P0) -> (B, C, D),
// so the shared edge P0-Pi+1 lands on the diagonal D-B.
struct QuadWarp {
    std::array<Point2, 4> quad;
    int size = kPatchSize;
    AffineMap first_forward, second_forward;   // source -> patch
    AffineMap first_inverse, second_inverse;   // patch -> source

    std::array<Point2, 3> first_source() const { return {quad[0], quad[1], quad[3]}; }
    std::array<Point2, 3> second_source() const { return {quad[1], quad[2], quad[3]}; }
    std::array<Point2, 3> first_target() const;
    std::array<Point2, 3> second_target() const;

    // Pixel (x, y) of the patch belongs to the first triangle iff x + y <= size - 1.
    bool in_first(int x, int y) const;
    Point2 source_of(int x, int y) const;
};

QuadWarp make_quad_warp(const std::array<Point2, 4>& quad, int size = kPatchSize);

// Bilinear sample at continuous coordinates with clamp to edge; pixel (i, j)
// holds its value at (i + 0.5, j + 0.5).
double sample_bilinear(const Image& image, Point2 at, int channel = 0);

// Round half away from zero, saturated to [0, 255].
std::uint8_t quantize(double value);

Image warp_quad_to_patch(const Image& image, const std::array<Point2, 4>& quad, int size = kPatchSize);
Image warp_quad_to_patch(const Image& image, const QuadWarp& warp);

// Row-major placement of grid*grid equally sized square patches.
Image stitch(std::span<const Image> patches, int grid = kGridSize);

// Inverse of `stitch`.
std::vector<Image> slice(const Image& canvas, int grid = kGridSize);

}  // namespace paw
