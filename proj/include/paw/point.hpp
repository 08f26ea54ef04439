#pragma once

#include <cmath>

namespace paw {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

// Twice the signed area of (a, b, c). Positive when a -> b -> c turns
// clockwise on screen (image frame, y pointing down).
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double squared_distance(Point2 a, Point2 b) {
    const Point2 d = a - b;
    return d.x * d.x + d.y * d.y;
}

// Tolerance for collinearity and containment sign tests.
inline constexpr double kGeomEps = 1e-9;

}  // namespace paw
