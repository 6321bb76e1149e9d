#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "auvsom/assignment.hpp"
#include "auvsom/environment.hpp"

namespace auvsom {

/// Serializes a result with a fixed key order. Wall time is written only when asked,
/// so that repeated runs produce identical files.
[[nodiscard]] nlohmann::ordered_json result_to_json(const AssignmentResult& result, bool include_timing);

/// Inverse of result_to_json. Throws nlohmann::json::exception or std::invalid_argument
/// on malformed input. Metrics are read back as written; call compute_metrics to recheck.
[[nodiscard]] AssignmentResult result_from_json(const nlohmann::json& j);

/// Checks a result against its scenario: each target mapped once or listed unassignable,
/// tours consistent with legs and within the cap, every polyline clear, range respected.
[[nodiscard]] std::vector<ValidationIssue> check_result(const AssignmentResult& result, const Scenario& scenario);

/// Single-run metrics in the campaign CSV layout.
void write_metrics_csv(std::ostream& out, const AssignmentResult& result, std::uint64_t seed, bool include_timing);

}  // namespace auvsom
