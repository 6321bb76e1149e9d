#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "auvsom/assignment.hpp"
#include "auvsom/dubins.hpp"
#include "auvsom/environment.hpp"

namespace auvsom {

/// Hyperparameters of the competitive network.
struct SomParams {
    double learning_rate = 0.5;        ///< step size toward the presented target, (0, 1]
    double decay = 0.05;               ///< neighborhood shrink per iteration, (0, 1)
    double initial_gain = 10.0;        ///< neighborhood width at iteration 0
    double neighborhood_radius = 10.0; ///< neurons farther than this from the winner do not move
    double snap_distance = 0.05;       ///< neurons with a weighted distance below this jump onto the target
    int max_iterations = 500;
    int neurons_per_auv = 1;

    void validate() const;
};

/// Per-AUV state: neuron weights, committed travel and the ordered tour.
struct AuvState {
    std::vector<Vec3> neurons;       ///< neurons[0] represents the vehicle itself
    Pose anchor;                     ///< last committed stop (start pose before any task)
    double path_length = 0.0;        ///< P_j
    std::vector<std::size_t> tour;
};

struct SomNetwork {
    int dimensions = 2;
    Bounds bounds;
    double neuron_spacing = 1.0;
    std::vector<AuvState> auvs;

    [[nodiscard]] static SomNetwork initialize(const Scenario& scenario, const SomParams& params);

    /// Team-average committed path length.
    [[nodiscard]] double mean_path_length() const noexcept;

    /// Re-lays the neuron chain of `auv` behind its anchor.
    void reset_neurons(std::size_t auv);
};

/// Per-round inputs shared by every distance evaluation.
struct CompetitionContext {
    double s_max = std::numeric_limits<double>::infinity();
    double mean_path_length = 0.0;     ///< v̄, frozen for the round
    bool balanced = true;              ///< false forces V = 0 and ignores the cap
    std::optional<std::size_t> n_max;
    std::vector<bool> excluded;        ///< AUVs already rejected for the current target
};

struct Winner {
    std::size_t auv = 0;
    std::size_t neuron = 0;
    double distance = 0.0;
};

/// Per-AUV task cap: N_T / N_R when that divides exactly, otherwise floor + 1.
[[nodiscard]] std::size_t compute_nmax(std::size_t n_targets, std::size_t n_auvs);

/// Relative load V = (P_j - v̄) / (1 + v̄).
[[nodiscard]] double load_balance_term(double path_length, double mean_path_length) noexcept;

/// Load-weighted distance |T - R|(1 + V), or +inf once the AUV has used up its range.
[[nodiscard]] double competition_distance(Vec3 target, Vec3 neuron, double load_term, double path_length,
                                          double s_max) noexcept;

/// Weighted distance of one neuron under `ctx`, including cap and exclusion rules.
[[nodiscard]] double neuron_distance(const SomNetwork& network, std::size_t auv, std::size_t neuron, Vec3 target,
                                     const CompetitionContext& ctx) noexcept;

/// Argmin of the weighted distance; ties go to the lowest AUV then neuron index.
/// std::nullopt when every distance is infinite.
[[nodiscard]] std::optional<Winner> select_winner(Vec3 target, const SomNetwork& network,
                                                  const CompetitionContext& ctx);

/// Gaussian neighborhood exp(-d²/G(t)²) inside the radius, 0 outside, G(t) = (1 - m)^t G0.
[[nodiscard]] double neighborhood(double d, int iteration, const SomParams& params) noexcept;

/// One weight update toward `target`. Moves the winner and its neighbors, snapping those
/// already within snap_distance, and adds the lead-neuron displacement to P_j.
void update_weights(SomNetwork& network, const Winner& winner, Vec3 target, int iteration,
                    const SomParams& params, const CompetitionContext& ctx);

/// Distance from `obstacle` to the closest neuron in the network.
[[nodiscard]] double obstacle_weight(Vec3 obstacle, const SomNetwork& network) noexcept;

/// Trigger flags with the obstacle branch exactly as tabulated:
/// u1 = 0 iff distance is infinite, u2 = 0 iff obstacle_weight > d_safety, u = u1 AND u2.
///
/// run_allocation does not route obstacle decisions through this table; it treats a
/// planned path that comes within d_safety of an obstacle as the u = 0 (re-assign) case.
[[nodiscard]] TriggerState evaluate_trigger(double distance, double obstacle_weight, double d_safety) noexcept;

struct AllocationOptions {
    bool balanced = true;
    double sample_step = 0.0;        ///< collision/polyline step; 0 picks min(0.1, d_safety / 2)
    int heading_candidates = 16;
};

/// Step actually used for a scenario given the requested one.
[[nodiscard]] double effective_step(const Scenario& scenario, double requested);

/// Shortest path from `from` to `target`, trying evenly spaced approach headings unless pinned.
[[nodiscard]] Path3D plan_leg(const Pose& from, const Target& target, const KinematicLimits& limits, int dimensions,
                              int heading_candidates);

/// Competes every target across the fleet and plans a Dubins leg for each assignment.
/// Throws std::invalid_argument if the scenario or parameters are invalid.
[[nodiscard]] AssignmentResult run_allocation(const Scenario& scenario, const SomParams& params,
                                              const AllocationOptions& options = {});

}  // namespace auvsom
