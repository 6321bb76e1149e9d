#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "auvsom/vec.hpp"

namespace auvsom {

/// Position plus heading (yaw, radians in [0, 2π)) and pitch (radians, 0 in 2D).
struct Pose {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double heading = 0.0;
    double pitch = 0.0;

    /// Builds a pose with the heading wrapped into [0, 2π).
    [[nodiscard]] static Pose make(double x, double y, double heading, double z = 0.0, double pitch = 0.0) noexcept {
        return Pose{x, y, z, wrap_two_pi(heading), pitch};
    }

    [[nodiscard]] Vec3 position() const noexcept { return {x, y, z}; }
};

/// Turning and climbing limits of a vehicle.
///
/// `max_yaw_rate` and `max_pitch_rate` bound the path-curvature controls (rad per
/// unit arc length); by construction 1 / max_yaw_rate == r_min.
struct KinematicLimits {
    double r_min = 1.0;
    double max_pitch = deg_to_rad(15.0);
    double max_yaw_rate = 1.0;
    double max_pitch_rate = 0.0;

    /// Limits for a vehicle with turning radius `r_min` and pitch bound `max_pitch`.
    [[nodiscard]] static KinematicLimits make(double r_min, double max_pitch = deg_to_rad(15.0));

    /// Throws std::invalid_argument unless r_min > 0 and 0 < max_pitch < π/2.
    void validate() const;
};

/// Curvature radius of the path produced by controls (yaw rate, pitch rate) at pitch `pitch`.
/// Returns std::nullopt when both effective rates vanish (straight segment, infinite radius).
[[nodiscard]] std::optional<double> curvature_radius(double yaw_rate, double pitch_rate, double pitch) noexcept;

/// The six Dubins words. Declaration order is the tie-break order used by shortest_path.
enum class DubinsWord : std::uint8_t { LSL, RSR, LSR, RSL, RLR, LRL };

inline constexpr std::array<DubinsWord, 6> kAllWords = {DubinsWord::LSL, DubinsWord::RSR, DubinsWord::LSR,
                                                        DubinsWord::RSL, DubinsWord::RLR, DubinsWord::LRL};

[[nodiscard]] std::string_view to_string(DubinsWord word) noexcept;
[[nodiscard]] std::optional<DubinsWord> parse_word(std::string_view text) noexcept;
[[nodiscard]] bool is_ccc(DubinsWord word) noexcept;

/// Rotation sense of one path segment: +1 left (counter-clockwise), -1 right, 0 straight.
[[nodiscard]] std::array<int, 3> segment_turns(DubinsWord word) noexcept;

/// A three-segment Dubins path. Segment lengths are non-negative arc lengths; arcs
/// have radius exactly `radius`.
struct DubinsPath {
    DubinsWord word = DubinsWord::LSL;
    std::array<double, 3> segments{0.0, 0.0, 0.0};
    Pose start;
    Pose goal;
    double radius = 1.0;

    [[nodiscard]] double total_length() const noexcept { return segments[0] + segments[1] + segments[2]; }
};

/// Three-circle construction behind an RLR / LRL path.
struct CccGeometry {
    Vec3 p1;   ///< start turning circle center
    Vec3 p2;   ///< middle circle center
    Vec3 p3;   ///< goal turning circle center
    Vec3 pt1;  ///< tangency of the first and middle circles
    Vec3 pt2;  ///< tangency of the middle and last circles
    double theta = 0.0;
    double d = 0.0;
};

/// Center of the turning circle of radius `radius` on side `turn` (+1 left, -1 right) of `pose`.
[[nodiscard]] Vec3 turning_center(const Pose& pose, int turn, double radius) noexcept;

/// Two arcs joined by a tangent line. std::nullopt for an inner tangent between overlapping circles.
[[nodiscard]] std::optional<DubinsPath> solve_csc(const Pose& start, const Pose& goal, const KinematicLimits& limits,
                                                  DubinsWord word);

/// Middle-circle construction for RLR / LRL, std::nullopt unless 0 < d < 4 r_min.
[[nodiscard]] std::optional<CccGeometry> ccc_geometry(const Pose& start, const Pose& goal, double radius,
                                                      DubinsWord word);

/// Three tangent arcs. std::nullopt when the turning circles are too far apart or coincide.
[[nodiscard]] std::optional<DubinsPath> solve_ccc(const Pose& start, const Pose& goal, const KinematicLimits& limits,
                                                  DubinsWord word);

/// Dispatches to solve_csc / solve_ccc.
[[nodiscard]] std::optional<DubinsPath> solve_word(const Pose& start, const Pose& goal, const KinematicLimits& limits,
                                                   DubinsWord word);

/// Minimum-length path over the six words; equal lengths resolve to the earlier word.
[[nodiscard]] DubinsPath shortest_path(const Pose& start, const Pose& goal, const KinematicLimits& limits);

/// Pose reached after travelling arc length `s` (clamped to [0, total_length]).
[[nodiscard]] Pose sample_at(const DubinsPath& path, double s) noexcept;

/// Poses at 0, step, 2*step, ... plus the final point. Throws std::invalid_argument if step <= 0.
[[nodiscard]] std::vector<Pose> sample_path(const DubinsPath& path, double step);

/// A 2D Dubins path with depth interpolated linearly along its arc length.
///
/// `horizontal` already contains any helix loops (added to its first arc), so its
/// projection is still a valid Dubins word between the same poses.
struct Path3D {
    DubinsPath horizontal;
    double z0 = 0.0;
    double z1 = 0.0;
    int loops = 0;

    [[nodiscard]] double horizontal_length() const noexcept { return horizontal.total_length(); }
    /// Signed climb angle; constant along the path.
    [[nodiscard]] double pitch() const noexcept;
    [[nodiscard]] double length() const noexcept;
};

struct PitchOverflow {
    double required_pitch = 0.0;
};

/// Adds depth to `path2d`. Returns PitchOverflow when |climb| would exceed limits.max_pitch.
[[nodiscard]] std::variant<Path3D, PitchOverflow> lift_to_3d(const DubinsPath& path2d, double z0, double z1,
                                                             const KinematicLimits& limits);

/// Adds whole turns on the start circle until the climb fits, then lifts.
[[nodiscard]] Path3D extend_for_pitch(const DubinsPath& path2d, double z0, double z1, const KinematicLimits& limits);

/// lift_to_3d, falling back to extend_for_pitch on overflow.
[[nodiscard]] Path3D plan_3d(const DubinsPath& path2d, double z0, double z1, const KinematicLimits& limits);

/// Pose at horizontal arc length `s`, with z and pitch filled in.
[[nodiscard]] Pose sample_at(const Path3D& path, double s) noexcept;

/// Samples spaced `step` apart in horizontal arc length, final point included.
[[nodiscard]] std::vector<Pose> sample_path(const Path3D& path, double step);

}  // namespace auvsom
