#pragma once

#include <string>

#include "auvsom/assignment.hpp"
#include "auvsom/environment.hpp"

namespace auvsom {

/// Static plot of a run: targets as circles, AUVs as diamonds, shaded obstacles and one
/// <polyline> per planned leg. 3D runs get an XY view and an XZ depth profile side by
/// side; the profile draws legs as <path> so the polyline count still equals the leg count.
[[nodiscard]] std::string render_svg(const Scenario& scenario, const AssignmentResult& result);

}  // namespace auvsom
