#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "auvsom/dubins.hpp"
#include "auvsom/metrics.hpp"

namespace auvsom {

/// Event-trigger flags. u1 tracks workload / range, u2 obstacles, u = u1 AND u2.
struct TriggerState {
    int u1 = 1;
    int u2 = 1;
    int u = 1;

    friend bool operator==(const TriggerState&, const TriggerState&) = default;
};

/// One planned move of an AUV from its previous stop to an assigned target.
struct Leg {
    std::size_t auv = 0;
    std::size_t target = 0;
    Path3D path;                 ///< z0 == z1 == 0 for planar runs
    double length = 0.0;         ///< path.length()
    std::vector<Pose> polyline;  ///< path sampled at the run's collision step
};

/// A winner that was turned down after planning, forcing the target to be re-competed.
struct ReassignmentEvent {
    std::size_t epoch = 0;
    std::size_t target = 0;
    std::size_t auv = 0;
    std::string reason;  ///< "path_blocked" or "range_exceeded"
    TriggerState trigger;
};

struct AssignmentResult {
    std::string scenario_name;
    int dimensions = 2;
    bool balanced = true;
    std::optional<std::size_t> n_max;                      ///< unset when the task cap is disabled
    std::vector<std::optional<std::size_t>> target_to_auv;
    std::vector<std::vector<std::size_t>> tours;           ///< per AUV, targets in visiting order
    std::vector<Leg> legs;
    std::vector<ReassignmentEvent> events;
    std::vector<std::size_t> unassigned;
    RunMetrics metrics;
};

}  // namespace auvsom
