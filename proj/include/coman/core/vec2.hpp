#pragma once

#include <cmath>

namespace coman {

/// Planar vector used for forces (N), velocities (m/s) and positions (m).
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double squared_norm() const { return x * x + y * y; }

    /// Unit vector; caller guarantees the vector is not (near-)zero.
    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }

    /// Counter-clockwise rotation by `angle_rad`.
    Vec2 rotated(double angle_rad) const {
        const double c = std::cos(angle_rad);
        const double s = std::sin(angle_rad);
        return {c * x - s * y, s * x + c * y};
    }
};

inline constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Direction of `v` in radians, in (-pi, pi].
inline double heading(const Vec2& v) { return std::atan2(v.y, v.x); }

}  // namespace coman
