#include "auvsom/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace auvsom {

bool Bounds::contains(Vec3 p, int dimensions) const noexcept {
    const bool planar = p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    if (dimensions < 3) return planar;
    return planar && p.z >= min.z && p.z <= max.z;
}

Vec3 Bounds::clamp(Vec3 p, int dimensions) const noexcept {
    Vec3 out{std::clamp(p.x, min.x, max.x), std::clamp(p.y, min.y, max.y), p.z};
    if (dimensions >= 3) out.z = std::clamp(p.z, min.z, max.z);
    return out;
}

bool point_clear(Vec3 p, const Scenario& scenario) noexcept {
    return std::all_of(scenario.obstacles.begin(), scenario.obstacles.end(), [&](const Obstacle& ob) {
        return distance(p, ob.center) > ob.radius + scenario.d_safety;
    });
}

double surface_clearance(std::span<const Pose> samples, const Scenario& scenario) noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (const Obstacle& ob : scenario.obstacles) {
        for (const Pose& p : samples) best = std::min(best, distance(p.position(), ob.center) - ob.radius);
    }
    return best;
}

bool polyline_clear(std::span<const Pose> samples, const Scenario& scenario) noexcept {
    return std::all_of(samples.begin(), samples.end(),
                       [&](const Pose& p) { return point_clear(p.position(), scenario); });
}

namespace {

void check_step(const Scenario& scenario, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("collision step must be positive");
    if (step > scenario.d_safety / 2.0) {
        throw std::invalid_argument(
            fmt::format("collision step {} exceeds d_safety/2 = {}", step, scenario.d_safety / 2.0));
    }
}

}  // namespace

bool path_clear(const DubinsPath& path, const Scenario& scenario, double step) {
    check_step(scenario, step);
    if (scenario.obstacles.empty()) return true;
    const auto samples = sample_path(path, step);
    return polyline_clear(samples, scenario);
}

bool path_clear(const Path3D& path, const Scenario& scenario, double step) {
    check_step(scenario, step);
    if (scenario.obstacles.empty()) return true;
    const auto samples = sample_path(path, step);
    return polyline_clear(samples, scenario);
}

std::vector<ValidationIssue> check_scenario(const Scenario& s) {
    std::vector<ValidationIssue> issues;
    auto add = [&](std::string code, std::string message) { issues.push_back({std::move(code), std::move(message)}); };

    if (s.dimensions != 2 && s.dimensions != 3) add("invalid_dimensions", "dimensions must be 2 or 3");
    const bool bad_box = !(s.bounds.max.x > s.bounds.min.x) || !(s.bounds.max.y > s.bounds.min.y) ||
                         (s.dimensions == 3 && !(s.bounds.max.z > s.bounds.min.z));
    if (bad_box) add("invalid_bounds", "bounds max must exceed min on every axis");

    try {
        s.limits.validate();
    } catch (const std::invalid_argument& e) {
        add("invalid_limits", e.what());
    }
    if (!(s.d_safety > 0.0)) add("invalid_d_safety", "d_safety must be positive");
    if (!(s.s_max > 0.0)) add("invalid_s_max", "s_max must be positive");
    if (s.auvs.empty()) add("no_auvs", "scenario needs at least one AUV");
    if (s.targets.empty()) add("no_targets", "scenario needs at least one target");

    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        const Obstacle& ob = s.obstacles[i];
        if (!(ob.radius > 0.0)) {
            add("non_positive_radius", fmt::format("obstacle {} has radius {}", i, ob.radius));
            continue;
        }
        const Vec3 r{ob.radius, ob.radius, s.dimensions == 3 ? ob.radius : 0.0};
        if (!s.bounds.contains(ob.center - r, s.dimensions) || !s.bounds.contains(ob.center + r, s.dimensions)) {
            add("obstacle_out_of_bounds", fmt::format("obstacle {} extends outside the workspace", i));
        }
    }

    for (std::size_t i = 0; i < s.auvs.size(); ++i) {
        const Vec3 p = s.auvs[i].position();
        if (!s.bounds.contains(p, s.dimensions)) {
            add("auv_out_of_bounds", fmt::format("auv {} lies outside the workspace", i));
        } else if (!point_clear(p, s)) {
            add("auv_in_obstacle", fmt::format("auv {} lies inside an obstacle safety envelope", i));
        }
        if (s.dimensions == 3 && std::abs(s.auvs[i].pitch) > s.limits.max_pitch) {
            add("auv_pitch_out_of_range", fmt::format("auv {} pitch exceeds max_pitch", i));
        }
    }
    for (std::size_t i = 0; i < s.targets.size(); ++i) {
        const Vec3 p = s.targets[i].position;
        if (!s.bounds.contains(p, s.dimensions)) {
            add("target_out_of_bounds", fmt::format("target {} lies outside the workspace", i));
        } else if (!point_clear(p, s)) {
            add("target_in_obstacle", fmt::format("target {} lies inside an obstacle safety envelope", i));
        }
    }
    return issues;
}

}  // namespace auvsom
