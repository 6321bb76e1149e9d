#include "auvsom/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace auvsom {

namespace {

// Arc sweeps within this of a full turn are a rounding artefact of a zero sweep.
constexpr double kFullTurnSnap = 1e-10;

double arc_sweep(double raw) noexcept {
    const double a = wrap_two_pi(raw);
    return (kTwoPi - a < kFullTurnSnap) ? 0.0 : a;
}

// Heading of a vehicle on the circle centered at `center`, currently at `point`, turning `turn`.
double heading_on_circle(Vec3 center, Vec3 point, int turn) noexcept {
    const double bearing = std::atan2(point.y - center.y, point.x - center.x);
    return bearing + turn * (std::numbers::pi / 2.0);
}

Pose advance(const Pose& from, int turn, double length, double radius) noexcept {
    Pose p = from;
    if (turn == 0) {
        p.x += length * std::cos(from.heading);
        p.y += length * std::sin(from.heading);
        return p;
    }
    const double sigma = static_cast<double>(turn);
    const double heading = from.heading + sigma * length / radius;
    p.x += sigma * radius * (std::sin(heading) - std::sin(from.heading));
    p.y -= sigma * radius * (std::cos(heading) - std::cos(from.heading));
    p.heading = wrap_two_pi(heading);
    return p;
}

}  // namespace

KinematicLimits KinematicLimits::make(double r_min, double max_pitch) {
    KinematicLimits limits;
    limits.r_min = r_min;
    limits.max_pitch = max_pitch;
    limits.max_yaw_rate = r_min > 0.0 ? 1.0 / r_min : 0.0;
    limits.max_pitch_rate = 0.0;
    limits.validate();
    return limits;
}

void KinematicLimits::validate() const {
    if (!(r_min > 0.0) || !std::isfinite(r_min)) {
        throw std::invalid_argument("r_min must be positive and finite");
    }
    if (!(max_pitch > 0.0) || !(max_pitch < std::numbers::pi / 2.0)) {
        throw std::invalid_argument("max_pitch must lie in (0, pi/2)");
    }
}

std::optional<double> curvature_radius(double yaw_rate, double pitch_rate, double pitch) noexcept {
    const double c = std::cos(pitch);
    const double denom = yaw_rate * yaw_rate * c * c + pitch_rate * pitch_rate;
    if (denom == 0.0) return std::nullopt;
    return 1.0 / std::sqrt(denom);
}

std::string_view to_string(DubinsWord word) noexcept {
    switch (word) {
        case DubinsWord::LSL: return "LSL";
        case DubinsWord::RSR: return "RSR";
        case DubinsWord::LSR: return "LSR";
        case DubinsWord::RSL: return "RSL";
        case DubinsWord::RLR: return "RLR";
        case DubinsWord::LRL: return "LRL";
    }
    return "???";
}

std::optional<DubinsWord> parse_word(std::string_view text) noexcept {
    for (const DubinsWord w : kAllWords) {
        if (to_string(w) == text) return w;
    }
    return std::nullopt;
}

bool is_ccc(DubinsWord word) noexcept { return word == DubinsWord::RLR || word == DubinsWord::LRL; }

std::array<int, 3> segment_turns(DubinsWord word) noexcept {
    switch (word) {
        case DubinsWord::LSL: return {1, 0, 1};
        case DubinsWord::RSR: return {-1, 0, -1};
        case DubinsWord::LSR: return {1, 0, -1};
        case DubinsWord::RSL: return {-1, 0, 1};
        case DubinsWord::RLR: return {-1, 1, -1};
        case DubinsWord::LRL: return {1, -1, 1};
    }
    return {0, 0, 0};
}

Vec3 turning_center(const Pose& pose, int turn, double radius) noexcept {
    const double s = static_cast<double>(turn);
    return {pose.x - s * radius * std::sin(pose.heading), pose.y + s * radius * std::cos(pose.heading), 0.0};
}

std::optional<DubinsPath> solve_csc(const Pose& start, const Pose& goal, const KinematicLimits& limits,
                                    DubinsWord word) {
    if (is_ccc(word)) throw std::invalid_argument("solve_csc called with a CCC word");
    limits.validate();
    const double r = limits.r_min;
    const auto turns = segment_turns(word);
    const int first = turns[0];
    const int last = turns[2];

    const Vec3 c1 = turning_center(start, first, r);
    const Vec3 c2 = turning_center(goal, last, r);
    const double dx = c2.x - c1.x;
    const double dy = c2.y - c1.y;
    const double d = std::hypot(dx, dy);

    double line_heading = 0.0;
    double straight = 0.0;
    if (first == last) {
        // outer tangent, parallel to the center line
        straight = d;
        line_heading = d > 0.0 ? std::atan2(dy, dx) : start.heading;
    } else {
        // inner tangent crosses between the circles
        if (d < 2.0 * r) return std::nullopt;
        straight = std::sqrt(std::max(0.0, d * d - 4.0 * r * r));
        line_heading = std::atan2(dy, dx) + first * std::atan2(2.0 * r, straight);
    }

    DubinsPath path;
    path.word = word;
    path.start = start;
    path.goal = goal;
    path.radius = r;
    path.segments[0] = r * arc_sweep(first * (line_heading - start.heading));
    path.segments[1] = straight;
    path.segments[2] = r * arc_sweep(last * (goal.heading - line_heading));
    return path;
}

std::optional<CccGeometry> ccc_geometry(const Pose& start, const Pose& goal, double radius, DubinsWord word) {
    if (!is_ccc(word)) throw std::invalid_argument("ccc_geometry called with a CSC word");
    const int outer = segment_turns(word)[0];

    CccGeometry g;
    g.p1 = turning_center(start, outer, radius);
    g.p3 = turning_center(goal, outer, radius);
    const Vec3 v1 = g.p3 - g.p1;
    g.d = v1.norm_xy();
    if (!(g.d > 0.0) || !(g.d < 4.0 * radius)) return std::nullopt;

    g.theta = std::acos(g.d / (4.0 * radius));
    // LRL rotates the center line counter-clockwise by theta, RLR clockwise
    const double direction = std::atan2(v1.y, v1.x) + (word == DubinsWord::LRL ? g.theta : -g.theta);
    g.p2 = {g.p1.x + 2.0 * radius * std::cos(direction), g.p1.y + 2.0 * radius * std::sin(direction), 0.0};

    const Vec3 to_p1 = g.p1 - g.p2;
    const Vec3 to_p3 = g.p3 - g.p2;
    g.pt1 = g.p2 + (radius / to_p1.norm_xy()) * to_p1;
    g.pt2 = g.p2 + (radius / to_p3.norm_xy()) * to_p3;
    return g;
}

std::optional<DubinsPath> solve_ccc(const Pose& start, const Pose& goal, const KinematicLimits& limits,
                                    DubinsWord word) {
    limits.validate();
    const double r = limits.r_min;
    const auto geometry = ccc_geometry(start, goal, r, word);
    if (!geometry) return std::nullopt;

    const int outer = segment_turns(word)[0];
    const double h1 = heading_on_circle(geometry->p1, geometry->pt1, outer);
    const double h2 = heading_on_circle(geometry->p3, geometry->pt2, outer);

    DubinsPath path;
    path.word = word;
    path.start = start;
    path.goal = goal;
    path.radius = r;
    path.segments[0] = r * arc_sweep(outer * (h1 - start.heading));
    path.segments[1] = r * arc_sweep(-outer * (h2 - h1));
    path.segments[2] = r * arc_sweep(outer * (goal.heading - h2));
    return path;
}

std::optional<DubinsPath> solve_word(const Pose& start, const Pose& goal, const KinematicLimits& limits,
                                     DubinsWord word) {
    return is_ccc(word) ? solve_ccc(start, goal, limits, word) : solve_csc(start, goal, limits, word);
}

DubinsPath shortest_path(const Pose& start, const Pose& goal, const KinematicLimits& limits) {
    std::optional<DubinsPath> best;
    for (const DubinsWord word : kAllWords) {
        auto candidate = solve_word(start, goal, limits, word);
        if (!candidate) continue;
        // words earlier in kAllWords win exact and round-off ties
        if (!best || candidate->total_length() < best->total_length() - 1e-12) best = *candidate;
    }
    if (!best) throw std::logic_error("no feasible Dubins word");
    return *best;
}

Pose sample_at(const DubinsPath& path, double s) noexcept {
    const auto turns = segment_turns(path.word);
    double remaining = std::clamp(s, 0.0, path.total_length());
    Pose p = path.start;
    p.heading = wrap_two_pi(p.heading);
    p.pitch = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const double l = std::min(remaining, path.segments[i]);
        p = advance(p, turns[i], l, path.radius);
        remaining -= l;
        if (remaining <= 0.0) break;
    }
    return p;
}

namespace {

template <typename Path>
std::vector<Pose> sample_uniform(const Path& path, double length, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("sample step must be positive");
    std::vector<Pose> out;
    out.reserve(static_cast<std::size_t>(length / step) + 2);
    // parameters are i * step (not accumulated) so halving the step nests the sample sets
    for (std::size_t i = 0;; ++i) {
        const double s = static_cast<double>(i) * step;
        if (s >= length) break;
        out.push_back(sample_at(path, s));
    }
    out.push_back(sample_at(path, length));
    return out;
}

}  // namespace

std::vector<Pose> sample_path(const DubinsPath& path, double step) {
    return sample_uniform(path, path.total_length(), step);
}

double Path3D::pitch() const noexcept {
    const double l = horizontal_length();
    if (l <= 0.0) return 0.0;
    return std::atan2(z1 - z0, l);
}

double Path3D::length() const noexcept { return std::hypot(horizontal_length(), z1 - z0); }

std::variant<Path3D, PitchOverflow> lift_to_3d(const DubinsPath& path2d, double z0, double z1,
                                               const KinematicLimits& limits) {
    limits.validate();
    const double climb = std::abs(z1 - z0);
    const double l = path2d.total_length();
    double required = 0.0;
    if (climb > 0.0) required = l > 0.0 ? std::atan(climb / l) : std::numbers::pi / 2.0;
    if (required > limits.max_pitch) return PitchOverflow{required};
    return Path3D{path2d, z0, z1, 0};
}

Path3D extend_for_pitch(const DubinsPath& path2d, double z0, double z1, const KinematicLimits& limits) {
    limits.validate();
    const double climb = std::abs(z1 - z0);
    const double loop = kTwoPi * path2d.radius;
    const double base = path2d.total_length();

    int loops = 0;
    if (climb > 0.0) {
        const double needed = climb / std::tan(limits.max_pitch);
        if (needed > base) loops = static_cast<int>(std::ceil((needed - base) / loop));
        auto fits = [&](int n) { return std::atan(climb / (base + n * loop)) <= limits.max_pitch; };
        while (loops > 0 && fits(loops - 1)) --loops;
        while (!fits(loops)) ++loops;
    }

    Path3D out{path2d, z0, z1, loops};
    out.horizontal.segments[0] += loops * loop;
    return out;
}

Path3D plan_3d(const DubinsPath& path2d, double z0, double z1, const KinematicLimits& limits) {
    auto lifted = lift_to_3d(path2d, z0, z1, limits);
    if (auto* path = std::get_if<Path3D>(&lifted)) return *path;
    return extend_for_pitch(path2d, z0, z1, limits);
}

Pose sample_at(const Path3D& path, double s) noexcept {
    const double l = path.horizontal_length();
    const double clamped = std::clamp(s, 0.0, l);
    Pose p = sample_at(path.horizontal, clamped);
    const double fraction = l > 0.0 ? clamped / l : 0.0;
    p.z = path.z0 + fraction * (path.z1 - path.z0);
    p.pitch = path.pitch();
    return p;
}

std::vector<Pose> sample_path(const Path3D& path, double step) {
    return sample_uniform(path, path.horizontal_length(), step);
}

}  // namespace auvsom
