#include "paw/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "paw/error.hpp"

namespace paw {

namespace {

// Clockwise on screen, starting east.
constexpr std::array<int, 8> kDx{1, 1, 0, -1, -1, -1, 0, 1};
constexpr std::array<int, 8> kDy{0, 1, 1, 1, 0, -1, -1, -1};
constexpr int kWest = 4;

Point2 pixel_center(int x, int y) { return {x + 0.5, y + 0.5}; }

bool lex_less(Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

}  // namespace

double ConvexPolygon::perimeter() const {
    double total = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        total += distance(vertices[i], vertices[(i + 1) % vertices.size()]);
    return total;
}

ClosedContour trace_boundary(const BinaryMask& mask) {
    int sx = -1, sy = -1;
    for (int y = 0; y < mask.height() && sx < 0; ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.get(x, y)) {
                sx = x, sy = y;
                break;
            }
    if (sx < 0) throw PawError(ErrorKind::EmptyMask, "no set pixel to trace");

    // Finds the next boundary pixel clockwise from `backtrack`; -1 if isolated.
    auto next_move = [&](int x, int y, int backtrack) {
        for (int k = 1; k <= 8; ++k) {
            const int d = (backtrack + k) % 8;
            if (mask.get_or_false(x + kDx[d], y + kDy[d])) return d;
        }
        return -1;
    };
    // The last background cell examined before moving in direction d, as seen
    // from the new pixel.
    auto backtrack_after = [](int d) { return (d % 2 == 0) ? (d + 6) % 8 : (d + 5) % 8; };

    std::vector<std::pair<int, int>> pixels{{sx, sy}};
    const int first_move = next_move(sx, sy, kWest);
    if (first_move >= 0) {
        int x = sx, y = sy, d = first_move;
        const std::size_t limit = 4 * static_cast<std::size_t>(mask.width()) * mask.height() + 8;
        for (std::size_t step = 0; step < limit; ++step) {
            x += kDx[d];
            y += kDy[d];
            const int nd = next_move(x, y, backtrack_after(d));
            // Jacob's criterion: stop on re-entering the start with the initial move.
            if (x == sx && y == sy && nd == first_move) break;
            pixels.emplace_back(x, y);
            d = nd;
        }
    }

    std::set<std::pair<int, int>> distinct(pixels.begin(), pixels.end());
    if (distinct.size() < 3)
        throw PawError(ErrorKind::DegenerateRegion,
                       "boundary has " + std::to_string(distinct.size()) + " pixel(s), need at least 3");

    ClosedContour contour;
    contour.points.reserve(pixels.size());
    for (const auto& [x, y] : pixels) contour.points.push_back(pixel_center(x, y));
    return contour;
}

ConvexPolygon convex_hull(std::span<const Point2> points) {
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw PawError(ErrorKind::CollinearInput, "fewer than 3 distinct points");

    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], pts[i]) <= kGeomEps) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient(hull[k - 2], hull[k - 1], pts[i]) <= kGeomEps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw PawError(ErrorKind::CollinearInput, "all points are collinear");

    // Left turns in y-down coordinates are clockwise on screen already; start
    // at the topmost vertex.
    const auto top = std::min_element(hull.begin(), hull.end(),
                                      [](Point2 a, Point2 b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });
    std::rotate(hull.begin(), top, hull.end());
    return ConvexPolygon{std::move(hull)};
}

std::vector<Point2> resample_closed(const ConvexPolygon& polygon, int count) {
    const auto& v = polygon.vertices;
    if (count <= 0) throw PawError(ErrorKind::InvalidArgument, "sample count must be positive");
    if (v.empty()) throw PawError(ErrorKind::ZeroPerimeter, "polygon has no vertices");

    const std::size_t n = v.size();
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) cumulative[i + 1] = cumulative[i] + distance(v[i], v[(i + 1) % n]);
    const double perimeter = cumulative[n];
    if (!(perimeter > 0.0)) throw PawError(ErrorKind::ZeroPerimeter, "polygon perimeter is zero");

    std::vector<Point2> samples;
    samples.reserve(count);
    std::size_t seg = 0;
    for (int k = 0; k < count; ++k) {
        const double s = perimeter * k / count;
        while (seg + 1 < n && cumulative[seg + 1] <= s) ++seg;
        const double len = cumulative[seg + 1] - cumulative[seg];
        const double t = len > 0.0 ? (s - cumulative[seg]) / len : 0.0;
        const Point2 a = v[seg], b = v[(seg + 1) % n];
        samples.push_back(a + t * (b - a));
    }
    return samples;
}

double boundary_arc_position(const ConvexPolygon& polygon, Point2 p) {
    const auto& v = polygon.vertices;
    double best = std::numeric_limits<double>::infinity();
    double position = 0.0, walked = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i], b = v[(i + 1) % v.size()];
        const double len = distance(a, b);
        double t = len > 0.0 ? dot(p - a, b - a) / (len * len) : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double d = distance(p, a + t * (b - a));
        if (d < best) {
            best = d;
            position = walked + t * len;
        }
        walked += len;
    }
    return position;
}

std::size_t canonical_reference(std::span<const Point2> samples) {
    if (samples.empty()) throw PawError(ErrorKind::InvalidArgument, "no samples");
    std::size_t best = 0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const Point2 p = samples[i], q = samples[best];
        if (p.y < q.y || (p.y == q.y && p.x < q.x)) best = i;
    }
    return best;
}

std::size_t anchor_offset(int i, int sample_count, int anchor_count) {
    return static_cast<std::size_t>(std::lround(static_cast<double>(i) * sample_count / anchor_count));
}

std::vector<Point2> select_anchors(std::span<const Point2> samples, std::size_t reference, int anchor_count) {
    if (anchor_count <= 0 || samples.size() < static_cast<std::size_t>(anchor_count))
        throw PawError(ErrorKind::InvalidArgument, "need at least as many samples as anchors");
    if (reference >= samples.size()) throw PawError(ErrorKind::InvalidArgument, "reference index out of range");
    const int n = static_cast<int>(samples.size());
    std::vector<Point2> anchors;
    anchors.reserve(anchor_count);
    for (int i = 0; i < anchor_count; ++i)
        anchors.push_back(samples[(reference + anchor_offset(i, n, anchor_count)) % samples.size()]);
    return anchors;
}

Point2 centroid(std::span<const Point2> points) {
    if (points.empty()) throw PawError(ErrorKind::InvalidArgument, "centroid of no points");
    double sx = 0.0, sy = 0.0;
    for (const Point2& p : points) sx += p.x, sy += p.y;
    const double n = static_cast<double>(points.size());
    return {sx / n, sy / n};
}

double polygon_area(std::span<const Point2> vertices) {
    if (vertices.size() < 3) throw PawError(ErrorKind::InvalidArgument, "polygon needs at least 3 vertices");
    double twice = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) twice += cross(vertices[i], vertices[(i + 1) % vertices.size()]);
    return std::abs(twice) * 0.5;
}

double signed_distance_inside(const ConvexPolygon& polygon, Point2 p) {
    const auto& v = polygon.vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2 a = v[i], b = v[(i + 1) % v.size()];
        best = std::min(best, orient(a, b, p) / distance(a, b));
    }
    return best;
}

}  // namespace paw
