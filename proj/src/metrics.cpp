#include "auvsom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "auvsom/assignment.hpp"

namespace auvsom {

double sample_deviation(std::span<const double> values) noexcept {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi) return 0.0;
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

RunMetrics compute_metrics(const AssignmentResult& result) {
    RunMetrics m;
    const std::size_t n = result.tours.size();
    m.path_lengths.assign(n, 0.0);
    m.task_counts.assign(n, 0);
    for (const Leg& leg : result.legs) {
        if (leg.auv >= n) continue;
        m.path_lengths[leg.auv] += leg.length;
        ++m.task_counts[leg.auv];
    }
    m.total = std::accumulate(m.path_lengths.begin(), m.path_lengths.end(), 0.0);
    m.max = m.path_lengths.empty() ? 0.0 : *std::max_element(m.path_lengths.begin(), m.path_lengths.end());
    m.deviation = sample_deviation(m.path_lengths);
    m.unassigned = result.unassigned.size();
    m.wall_ms = result.metrics.wall_ms;
    return m;
}

}  // namespace auvsom
