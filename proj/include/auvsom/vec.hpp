#pragma once

#include <cmath>
#include <numbers>

namespace auvsom {

/// Plain 3-vector used for positions in the workspace. 2D quantities keep z = 0.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return s * a; }
    friend constexpr bool operator==(Vec3 a, Vec3 b) noexcept = default;

    [[nodiscard]] double norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }
    [[nodiscard]] double norm_xy() const noexcept { return std::hypot(x, y); }
};

[[nodiscard]] inline double distance(Vec3 a, Vec3 b) noexcept { return (a - b).norm(); }

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Wraps an angle into [0, 2π).
[[nodiscard]] inline double wrap_two_pi(double angle) noexcept {
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod of a tiny negative value can round back up to exactly 2π
    if (a >= kTwoPi || a == 0.0) a = 0.0;  // also folds -0.0
    return a;
}

/// Signed angular difference a - b mapped into (-π, π].
[[nodiscard]] inline double angle_diff(double a, double b) noexcept {
    double d = wrap_two_pi(a - b);
    if (d > std::numbers::pi) d -= kTwoPi;
    return d;
}

[[nodiscard]] constexpr double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
[[nodiscard]] constexpr double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

}  // namespace auvsom
