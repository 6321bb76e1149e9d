#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "auvsom/environment.hpp"
#include "auvsom/som.hpp"

namespace auvsom {

inline constexpr int kFormatVersion = 1;

/// A scenario file: the workspace plus optional network hyperparameter overrides.
struct ScenarioDocument {
    Scenario scenario;
    SomParams som;
};

struct ScenarioParse {
    std::optional<ScenarioDocument> document;
    std::vector<ValidationIssue> issues;

    [[nodiscard]] bool ok() const noexcept { return document.has_value(); }
};

/// Reads a scenario document, checking structure first and then every Scenario invariant.
/// Angles are degrees in the document and radians in the returned Scenario.
[[nodiscard]] ScenarioParse validate_scenario(const nlohmann::json& raw);

/// validate_scenario on a file; unreadable or malformed JSON is reported as an issue.
[[nodiscard]] ScenarioParse load_scenario_file(const std::filesystem::path& path);

[[nodiscard]] nlohmann::ordered_json scenario_to_json(const Scenario& scenario, const SomParams& som);

}  // namespace auvsom
