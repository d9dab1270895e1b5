#pragma once

#include <algorithm>
#include <cmath>

namespace abiot {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;

    double norm() const { return std::sqrt(x * x + y * y); }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator-(Vec3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    bool operator==(const Vec3&) const = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Vec2 xy() const { return {x, y}; }
};

inline double dist2d(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Axis-aligned rectangle, [x_lo, x_hi] x [y_lo, y_hi].
struct Rect {
    double x_lo = 0.0, y_lo = 0.0;
    double x_hi = 0.0, y_hi = 0.0;

    double width() const { return x_hi - x_lo; }
    double height() const { return y_hi - y_lo; }
    double area() const { return std::max(0.0, width()) * std::max(0.0, height()); }

    bool contains(Vec2 p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }

    Rect intersect(const Rect& o) const {
        return {std::max(x_lo, o.x_lo), std::max(y_lo, o.y_lo),
                std::min(x_hi, o.x_hi), std::min(y_hi, o.y_hi)};
    }

    bool degenerate() const { return width() <= 0.0 || height() <= 0.0; }
};

// Distance from point p to segment [a, b].
inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0.0) return dist2d(p, a);
    double t = ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist2d(p, {a.x + t * ab.x, a.y + t * ab.y});
}

}  // namespace abiot
