#include "paw/maskops.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "paw/error.hpp"
#include "paw/geometry.hpp"
#include "paw/warp.hpp"

namespace paw {

namespace {

void require_same_size(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw PawError(ErrorKind::DimensionMismatch, "masks differ in size: " + std::to_string(a.width()) + "x" +
                                                         std::to_string(a.height()) + " vs " +
                                                         std::to_string(b.width()) + "x" + std::to_string(b.height()));
}

// Source index whose pixel contains the center of destination pixel `i`.
int nearest_source(int i, int src_extent, int dst_extent) {
    const double center = (i + 0.5) * static_cast<double>(src_extent) / dst_extent;
    return std::clamp(static_cast<int>(std::floor(center)), 0, src_extent - 1);
}

}  // namespace

BinaryMask binarize(const Image& image, std::uint8_t threshold) {
    if (image.empty()) throw PawError(ErrorKind::EmptyImage, "cannot binarize an empty image");
    if (image.channels() != 1) throw PawError(ErrorKind::InvalidArgument, "binarize expects a single-channel image");
    BinaryMask mask(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y)
        for (int x = 0; x < image.width(); ++x) mask.set(x, y, image.at(x, y) >= threshold);
    return mask;
}

BinaryMask normalize_mask(const BinaryMask& mask, int size) {
    if (mask.width() <= 0 || !mask.any()) throw PawError(ErrorKind::EmptyMask, "mask has no set pixel");
    if (mask.width() == size && mask.height() == size) return mask;

    BinaryMask out(size, size);
    std::vector<int> sx(size), sy(size);
    for (int i = 0; i < size; ++i) {
        sx[i] = nearest_source(i, mask.width(), size);
        sy[i] = nearest_source(i, mask.height(), size);
    }
    for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) out.set(x, y, mask.get(sx[x], sy[y]));
    if (!out.any()) throw PawError(ErrorKind::EmptyMask, "mask vanished when resampled to " + std::to_string(size));
    return out;
}

Image normalize_image(const Image& image, int width, int height) {
    if (image.empty()) throw PawError(ErrorKind::EmptyImage, "cannot resize an empty image");
    if (image.width() == width && image.height() == height) return image;

    Image out(width, height, image.channels());
    const double kx = static_cast<double>(image.width()) / width;
    const double ky = static_cast<double>(image.height()) / height;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Point2 at{(x + 0.5) * kx, (y + 0.5) * ky};
            for (int c = 0; c < image.channels(); ++c) out.at(x, y, c) = quantize(sample_bilinear(image, at, c));
        }
    }
    return out;
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
    require_same_size(a, b);
    BinaryMask out(a.width(), a.height());
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) out.set(x, y, a.get(x, y) || b.get(x, y));
    return out;
}

BinaryMask mask_intersect(const BinaryMask& a, const BinaryMask& b) {
    require_same_size(a, b);
    BinaryMask out(a.width(), a.height());
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) out.set(x, y, a.get(x, y) && b.get(x, y));
    return out;
}

BinaryMask landmarks_to_mask(std::span<const Point2> points, int width, int height) {
    std::vector<Point2> distinct(points.begin(), points.end());
    std::sort(distinct.begin(), distinct.end(),
              [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3)
        throw PawError(ErrorKind::DegenerateLandmarks, "need at least 3 distinct landmark points, got " +
                                                           std::to_string(distinct.size()));

    ConvexPolygon hull;
    try {
        hull = convex_hull(distinct);
    } catch (const PawError& e) {
        if (e.kind() == ErrorKind::CollinearInput)
            throw PawError(ErrorKind::DegenerateLandmarks, "landmark points are collinear");
        throw;
    }

    BinaryMask mask(width, height);
    const auto& v = hull.vertices;
    double min_x = v[0].x, max_x = v[0].x, min_y = v[0].y, max_y = v[0].y;
    for (const Point2& p : v) {
        min_x = std::min(min_x, p.x), max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y), max_y = std::max(max_y, p.y);
    }
    const int x0 = std::max(0, static_cast<int>(std::floor(min_x)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(max_x)));
    const int y0 = std::max(0, static_cast<int>(std::floor(min_y)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(max_y)));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const Point2 p{static_cast<double>(x), static_cast<double>(y)};
            bool inside = true;
            for (std::size_t i = 0; i < v.size() && inside; ++i)
                inside = orient(v[i], v[(i + 1) % v.size()], p) >= -kGeomEps;
            if (inside) mask.set(x, y);
        }
    }
    return mask;
}

BinaryMask largest_component(const BinaryMask& mask) {
    if (!mask.any()) throw PawError(ErrorKind::EmptyMask, "mask has no set pixel");
    const int w = mask.width(), h = mask.height();
    std::vector<int> label(static_cast<std::size_t>(w) * h, 0);
    int best_label = 0;
    std::size_t best_size = 0;
    int next_label = 0;
    std::deque<std::pair<int, int>> queue;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.get(x, y) || label[static_cast<std::size_t>(y) * w + x] != 0) continue;
            const int current = ++next_label;
            std::size_t size = 0;
            label[static_cast<std::size_t>(y) * w + x] = current;
            queue.emplace_back(x, y);
            while (!queue.empty()) {
                const auto [cx, cy] = queue.front();
                queue.pop_front();
                ++size;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx, ny = cy + dy;
                        if (!mask.get_or_false(nx, ny)) continue;
                        int& l = label[static_cast<std::size_t>(ny) * w + nx];
                        if (l != 0) continue;
                        l = current;
                        queue.emplace_back(nx, ny);
                    }
                }
            }
            // strict: earlier components (raster order) win ties
            if (size > best_size) {
                best_size = size;
                best_label = current;
            }
        }
    }

    BinaryMask out(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (label[static_cast<std::size_t>(y) * w + x] == best_label) out.set(x, y);
    return out;
}

}  // namespace paw
