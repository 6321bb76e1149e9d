#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auvsom/dubins.hpp"
#include "auvsom/vec.hpp"

namespace auvsom {

/// Axis-aligned workspace box. The z extent is ignored for planar scenarios.
struct Bounds {
    Vec3 min;
    Vec3 max{30.0, 30.0, 0.0};

    [[nodiscard]] bool contains(Vec3 p, int dimensions) const noexcept;
    [[nodiscard]] Vec3 clamp(Vec3 p, int dimensions) const noexcept;
};

/// Disc (2D) or sphere (3D) that paths must keep clear of by at least d_safety.
struct Obstacle {
    Vec3 center;
    double radius = 1.0;
};

/// A target position; the approach heading is chosen by the planner unless pinned.
struct Target {
    Vec3 position;
    std::optional<double> heading;
};

struct Scenario {
    std::string name;
    int dimensions = 2;
    Bounds bounds;
    std::vector<Pose> auvs;
    std::vector<Target> targets;
    std::vector<Obstacle> obstacles;
    KinematicLimits limits;
    double d_safety = 1.5;
    double s_max = 1000.0;
    std::uint64_t seed = 0;
};

/// One violated scenario invariant. `code` is stable and machine-readable.
struct ValidationIssue {
    std::string code;
    std::string message;
};

/// True iff `p` is strictly farther than radius + d_safety from every obstacle center.
[[nodiscard]] bool point_clear(Vec3 p, const Scenario& scenario) noexcept;

/// Smallest (center distance - radius) over all obstacles and points; +inf without obstacles.
[[nodiscard]] double surface_clearance(std::span<const Pose> samples, const Scenario& scenario) noexcept;

/// True iff every pose passes point_clear.
[[nodiscard]] bool polyline_clear(std::span<const Pose> samples, const Scenario& scenario) noexcept;

/// Samples `path` every `step` and checks each sample. Throws std::invalid_argument
/// when step > d_safety / 2 (too coarse to bound misses) or step <= 0.
[[nodiscard]] bool path_clear(const DubinsPath& path, const Scenario& scenario, double step);
[[nodiscard]] bool path_clear(const Path3D& path, const Scenario& scenario, double step);

/// Checks every Scenario invariant, listing all violations (empty when valid).
[[nodiscard]] std::vector<ValidationIssue> check_scenario(const Scenario& scenario);

}  // namespace auvsom
