#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paw/image.hpp"
#include "paw/point.hpp"

namespace paw {

inline constexpr int kCanvasSize = 112;
inline constexpr std::uint8_t kDefaultThreshold = 128;

// Bit set iff intensity >= threshold. Requires a single-channel image.
BinaryMask binarize(const Image& image, std::uint8_t threshold = kDefaultThreshold);

// Nearest-neighbour resampling to size x size. Throws EmptyMask when the
// input (or the resampled result) has no set bit.
BinaryMask normalize_mask(const BinaryMask& mask, int size = kCanvasSize);

// Bilinear resampling (pixel-center aligned, clamp to edge) to width x height.
Image normalize_image(const Image& image, int width = kCanvasSize, int height = kCanvasSize);

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
BinaryMask mask_intersect(const BinaryMask& a, const BinaryMask& b);

// Filled convex hull of landmark points. Landmark coordinates address pixels:
// the point (px, py) sits on the center of pixel (px, py), so a pixel is set
// when its index lies inside or on the hull of the raw coordinates.
BinaryMask landmarks_to_mask(std::span<const Point2> points, int width, int height);

// Keeps the largest 8-connected component. Equal sizes resolve to the
// component whose first pixel comes first in raster order.
BinaryMask largest_component(const BinaryMask& mask);

}  // namespace paw
