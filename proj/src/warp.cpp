#include "paw/warp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "paw/error.hpp"

namespace paw {

AffineMap AffineMap::inverse() const {
    const double det = determinant();
    if (std::abs(det) <= 1e-12) throw PawError(ErrorKind::DegenerateTriangle, "affine map is not invertible");
    const double a = m[4] / det, b = -m[1] / det, c = -m[3] / det, d = m[0] / det;
    return AffineMap{{a, b, -(a * m[2] + b * m[5]), c, d, -(c * m[2] + d * m[5])}};
}

AffineMap solve_affine(const std::array<Point2, 3>& src, const std::array<Point2, 3>& dst) {
    const Point2 e1 = src[1] - src[0], e2 = src[2] - src[0];
    const double det = cross(e1, e2);
    if (std::abs(det) <= kGeomEps)
        throw PawError(ErrorKind::CollinearSource, "source triangle twice-area " + std::to_string(det));
    const Point2 f1 = dst[1] - dst[0], f2 = dst[2] - dst[0];

    AffineMap map;
    auto& m = map.m;
    m[0] = (f1.x * e2.y - f2.x * e1.y) / det;
    m[1] = (f2.x * e1.x - f1.x * e2.x) / det;
    m[3] = (f1.y * e2.y - f2.y * e1.y) / det;
    m[4] = (f2.y * e1.x - f1.y * e2.x) / det;
    m[2] = dst[0].x - (m[0] * src[0].x + m[1] * src[0].y);
    m[5] = dst[0].y - (m[3] * src[0].x + m[4] * src[0].y);
    return map;
}

namespace {

std::array<Point2, 4> square_corners(int size) {
    const double lo = 0.5, hi = size - 0.5;
    return {Point2{lo, lo}, Point2{hi, lo}, Point2{hi, hi}, Point2{lo, hi}};
}

AffineMap solve_or_degenerate(const std::array<Point2, 3>& src, const std::array<Point2, 3>& dst) {
    try {
        return solve_affine(src, dst);
    } catch (const PawError& e) {
        if (e.kind() == ErrorKind::CollinearSource) throw PawError(ErrorKind::DegenerateTriangle, e.detail());
        throw;
    }
}

}  // namespace

std::array<Point2, 3> QuadWarp::first_target() const {
    const auto c = square_corners(size);
    return {c[0], c[1], c[3]};
}

std::array<Point2, 3> QuadWarp::second_target() const {
    const auto c = square_corners(size);
    return {c[1], c[2], c[3]};
}

bool QuadWarp::in_first(int x, int y) const { return x + y <= size - 1 + kGeomEps; }

Point2 QuadWarp::source_of(int x, int y) const {
    const Point2 center{x + 0.5, y + 0.5};
    return in_first(x, y) ? first_inverse.apply(center) : second_inverse.apply(center);
}

QuadWarp make_quad_warp(const std::array<Point2, 4>& quad, int size) {
    if (size < 2) throw PawError(ErrorKind::InvalidArgument, "patch size must be at least 2");
    QuadWarp w;
    w.quad = quad;
    w.size = size;
    w.first_forward = solve_or_degenerate(w.first_source(), w.first_target());
    w.second_forward = solve_or_degenerate(w.second_source(), w.second_target());
    w.first_inverse = solve_affine(w.first_target(), w.first_source());
    w.second_inverse = solve_affine(w.second_target(), w.second_source());
    return w;
}

double sample_bilinear(const Image& image, Point2 at, int channel) {
    const double fx = std::clamp(at.x - 0.5, 0.0, static_cast<double>(image.width() - 1));
    const double fy = std::clamp(at.y - 0.5, 0.0, static_cast<double>(image.height() - 1));
    const int x0 = static_cast<int>(std::floor(fx)), y0 = static_cast<int>(std::floor(fy));
    const int x1 = std::min(x0 + 1, image.width() - 1), y1 = std::min(y0 + 1, image.height() - 1);
    const double tx = fx - x0, ty = fy - y0;

    const double a = image.at(x0, y0, channel), b = image.at(x1, y0, channel);
    const double c = image.at(x0, y1, channel), d = image.at(x1, y1, channel);
    const double top = a + tx * (b - a);
    const double bottom = c + tx * (d - c);
    return top + ty * (bottom - top);
}

std::uint8_t quantize(double value) {
    return static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
}

Image warp_quad_to_patch(const Image& image, const QuadWarp& warp) {
    if (image.empty()) throw PawError(ErrorKind::EmptyImage, "cannot warp an empty image");
    Image patch(warp.size, warp.size, image.channels());
    for (int y = 0; y < warp.size; ++y) {
        for (int x = 0; x < warp.size; ++x) {
            const Point2 src = warp.source_of(x, y);
            for (int c = 0; c < image.channels(); ++c) patch.at(x, y, c) = quantize(sample_bilinear(image, src, c));
        }
    }
    return patch;
}

Image warp_quad_to_patch(const Image& image, const std::array<Point2, 4>& quad, int size) {
    return warp_quad_to_patch(image, make_quad_warp(quad, size));
}

Image stitch(std::span<const Image> patches, int grid) {
    if (grid <= 0 || patches.size() != static_cast<std::size_t>(grid) * grid)
        throw PawError(ErrorKind::WrongPatchCount, "expected " + std::to_string(grid * grid) + " patches, got " +
                                                       std::to_string(patches.size()));
    const int size = patches.front().width();
    const int channels = patches.front().channels();
    for (std::size_t i = 0; i < patches.size(); ++i) {
        const Image& p = patches[i];
        if (p.width() != size || p.height() != size || p.channels() != channels || size <= 0)
            throw PawError(ErrorKind::WrongPatchSize, "patch " + std::to_string(i) + " is " + std::to_string(p.width()) +
                                                          "x" + std::to_string(p.height()) + ", expected " +
                                                          std::to_string(size) + "x" + std::to_string(size));
    }

    Image canvas(grid * size, grid * size, channels);
    for (int r = 0; r < canvas.height(); ++r) {
        for (int c = 0; c < canvas.width(); ++c) {
            const Image& p = patches[static_cast<std::size_t>(grid * (r / size) + c / size)];
            for (int ch = 0; ch < channels; ++ch) canvas.at(c, r, ch) = p.at(c % size, r % size, ch);
        }
    }
    return canvas;
}

std::vector<Image> slice(const Image& canvas, int grid) {
    if (grid <= 0 || canvas.width() != canvas.height() || canvas.width() % grid != 0)
        throw PawError(ErrorKind::WrongPatchSize, "canvas is not divisible into a square grid");
    const int size = canvas.width() / grid;
    std::vector<Image> patches;
    patches.reserve(static_cast<std::size_t>(grid) * grid);
    for (int gr = 0; gr < grid; ++gr) {
        for (int gc = 0; gc < grid; ++gc) {
            Image p(size, size, canvas.channels());
            for (int y = 0; y < size; ++y)
                for (int x = 0; x < size; ++x)
                    for (int ch = 0; ch < canvas.channels(); ++ch)
                        p.at(x, y, ch) = canvas.at(gc * size + x, gr * size + y, ch);
            patches.push_back(std::move(p));
        }
    }
    return patches;
}

}  // namespace paw
