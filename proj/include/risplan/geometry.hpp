#pragma once

#include <cmath>

namespace risplan {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x{0.0};
    double y{0.0};

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Azimuth convention: degrees clockwise from north, so 0 = +y, 90 = +x.
inline Vec2 azimuth_unit(double azimuth_deg) {
    const double a = deg_to_rad(azimuth_deg);
    return {std::sin(a), std::cos(a)};
}

inline double dist3d(const Vec2& a, double ha, const Vec2& b, double hb) {
    const double d2 = distance(a, b);
    const double dh = ha - hb;
    return std::sqrt(d2 * d2 + dh * dh);
}

} // namespace risplan
