#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace auvsom {

struct AssignmentResult;

/// Evaluation statistics for one allocation run.
struct RunMetrics {
    std::vector<double> path_lengths;       ///< per AUV, sum of its planned legs
    std::vector<std::size_t> task_counts;   ///< per AUV
    double total = 0.0;
    double max = 0.0;
    double deviation = 0.0;                 ///< sample standard deviation of path_lengths
    std::size_t unassigned = 0;
    double wall_ms = 0.0;                   ///< time spent inside run_allocation
};

/// Sample standard deviation with the n - 1 denominator; 0 for fewer than two values.
[[nodiscard]] double sample_deviation(std::span<const double> values) noexcept;

/// Recomputes totals and spread from the legs of `result`. Copies result.metrics.wall_ms.
[[nodiscard]] RunMetrics compute_metrics(const AssignmentResult& result);

}  // namespace auvsom
