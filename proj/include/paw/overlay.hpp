#pragma once

#include <span>

#include "paw/fan.hpp"
#include "paw/geometry.hpp"
#include "paw/image.hpp"

// Annotation renderings for stage dumps. Never used as pipeline input.
namespace paw::overlay {

struct Rgb {
    std::uint8_t r, g, b;
};

Image to_rgb(const Image& image);
void draw_line(Image& canvas, Point2 a, Point2 b, Rgb color);
void draw_dot(Image& canvas, Point2 center, int radius, Rgb color);
void draw_polygon(Image& canvas, std::span<const Point2> vertices, Rgb color);

Image hull_overlay(const Image& image, const ClosedContour& contour, const ConvexPolygon& hull);
Image anchor_overlay(const Image& image, const ConvexPolygon& hull, std::span<const Point2> anchors, Point2 centroid);
Image fan_overlay(const Image& image, const FanPartition& fan);

}  // namespace paw::overlay
