#include "paw/overlay.hpp"

#include <cmath>
#include <cstdlib>

namespace paw::overlay {

namespace {

constexpr Rgb kContour{0, 160, 255};
constexpr Rgb kHull{255, 64, 64};
constexpr Rgb kAnchor{255, 220, 0};
constexpr Rgb kCentroid{0, 255, 0};
constexpr Rgb kFan{255, 0, 255};

void put(Image& canvas, int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= canvas.width() || y >= canvas.height()) return;
    canvas.at(x, y, 0) = c.r;
    canvas.at(x, y, 1) = c.g;
    canvas.at(x, y, 2) = c.b;
}

int pixel_of(double coord) { return static_cast<int>(std::floor(coord)); }

}  // namespace

Image to_rgb(const Image& image) {
    if (image.channels() == 3) return image;
    Image out(image.width(), image.height(), 3);
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = image.at(x, y);
    return out;
}

void draw_line(Image& canvas, Point2 a, Point2 b, Rgb color) {
    int x0 = pixel_of(a.x), y0 = pixel_of(a.y);
    const int x1 = pixel_of(b.x), y1 = pixel_of(b.y);
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        put(canvas, x0, y0, color);
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) err += dy, x0 += sx;
        if (e2 <= dx) err += dx, y0 += sy;
    }
}

void draw_dot(Image& canvas, Point2 center, int radius, Rgb color) {
    const int cx = pixel_of(center.x), cy = pixel_of(center.y);
    for (int y = cy - radius; y <= cy + radius; ++y)
        for (int x = cx - radius; x <= cx + radius; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius) put(canvas, x, y, color);
}

void draw_polygon(Image& canvas, std::span<const Point2> vertices, Rgb color) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        draw_line(canvas, vertices[i], vertices[(i + 1) % vertices.size()], color);
}

Image hull_overlay(const Image& image, const ClosedContour& contour, const ConvexPolygon& hull) {
    Image out = to_rgb(image);
    for (const Point2& p : contour.points) put(out, pixel_of(p.x), pixel_of(p.y), kContour);
    draw_polygon(out, hull.vertices, kHull);
    return out;
}

Image anchor_overlay(const Image& image, const ConvexPolygon& hull, std::span<const Point2> anchors, Point2 centroid) {
    Image out = to_rgb(image);
    draw_polygon(out, hull.vertices, kHull);
    for (const Point2& p : anchors) draw_dot(out, p, 1, kAnchor);
    draw_dot(out, centroid, 2, kCentroid);
    return out;
}

Image fan_overlay(const Image& image, const FanPartition& fan) {
    Image out = to_rgb(image);
    draw_polygon(out, fan.ordered_anchors, kFan);
    for (const Point2& p : fan.ordered_anchors) draw_line(out, fan.centroid, p, kFan);
    if (!fan.ordered_anchors.empty()) draw_dot(out, fan.ordered_anchors.front(), 2, kAnchor);
    draw_dot(out, fan.centroid, 2, kCentroid);
    return out;
}

}  // namespace paw::overlay
