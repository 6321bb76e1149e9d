#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "auvsom/metrics.hpp"
#include "auvsom/result_io.hpp"
#include "auvsom/scenario_io.hpp"
#include "auvsom/svg.hpp"

using namespace auvsom;
using nlohmann::json;

namespace {

const std::string kData = AUVSOM_DATA_DIR;

json minimal_doc() {
    return json::parse(R"({
        "format_version": 1,
        "name": "mini",
        "dimensions": 2,
        "bounds": {"min": [0, 0], "max": [30, 30]},
        "auvs": [{"x": 2, "y": 3, "heading_deg": 90}],
        "targets": [{"x": 12, "y": 14}, {"x": 20, "y": 5, "heading_deg": -90}],
        "obstacles": [{"x": 15, "y": 20, "radius": 1.0}]
    })");
}

bool has_code(const ScenarioParse& p, const std::string& code) {
    return std::any_of(p.issues.begin(), p.issues.end(), [&](const ValidationIssue& i) { return i.code == code; });
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(ScenarioIo, ParsesMinimalDocument) {
    const ScenarioParse p = validate_scenario(minimal_doc());
    ASSERT_TRUE(p.ok()) << (p.issues.empty() ? "" : p.issues.front().message);
    const Scenario& s = p.document->scenario;
    EXPECT_EQ(s.name, "mini");
    EXPECT_NEAR(s.auvs[0].heading, deg_to_rad(90.0), 1e-15);
    EXPECT_FALSE(s.targets[0].heading.has_value());
    EXPECT_NEAR(*s.targets[1].heading, deg_to_rad(270.0), 1e-12);
    EXPECT_DOUBLE_EQ(s.d_safety, 1.5);
    EXPECT_DOUBLE_EQ(s.limits.r_min, 1.0);
    EXPECT_NEAR(s.limits.max_pitch, deg_to_rad(15.0), 1e-15);
    EXPECT_DOUBLE_EQ(p.document->som.learning_rate, 0.5);
}

TEST(ScenarioIo, SafetyDefaultFollowsRadius) {
    json doc = minimal_doc();
    doc["limits"] = {{"r_min", 0.8}};
    const ScenarioParse p = validate_scenario(doc);
    ASSERT_TRUE(p.ok());
    EXPECT_DOUBLE_EQ(p.document->scenario.d_safety, 1.2);
}

TEST(ScenarioIo, StructuralErrors) {
    json doc = minimal_doc();
    doc.erase("targets");
    EXPECT_TRUE(has_code(validate_scenario(doc), "missing_field"));

    doc = minimal_doc();
    doc["auvs"][0]["x"] = "two";
    EXPECT_TRUE(has_code(validate_scenario(doc), "invalid_type"));

    doc = minimal_doc();
    doc["format_version"] = 2;
    EXPECT_TRUE(has_code(validate_scenario(doc), "bad_format_version"));

    doc = minimal_doc();
    doc["som"] = {{"learning_rate", 3.0}};
    EXPECT_TRUE(has_code(validate_scenario(doc), "invalid_som_params"));

    doc = minimal_doc();
    doc["targets"] = json::array();
    const ScenarioParse p = validate_scenario(doc);
    EXPECT_FALSE(p.ok());
    EXPECT_TRUE(has_code(p, "no_targets"));

    doc = minimal_doc();
    doc["auvs"][0] = {{"x", 15}, {"y", 19.5}, {"heading_deg", 0}};
    EXPECT_TRUE(has_code(validate_scenario(doc), "auv_in_obstacle"));

    EXPECT_TRUE(has_code(validate_scenario(json::array()), "invalid_type"));
}

TEST(ScenarioIo, ThreeDimensionalNeedsDepth) {
    json doc = minimal_doc();
    doc["dimensions"] = 3;
    EXPECT_TRUE(has_code(validate_scenario(doc), "invalid_type"));  // 2-element bounds
    doc["bounds"] = {{"min", {0, 0, -10}}, {"max", {30, 30, 0}}};
    EXPECT_TRUE(has_code(validate_scenario(doc), "missing_field"));  // points without z
}

TEST(ScenarioIo, FileErrors) {
    EXPECT_TRUE(has_code(load_scenario_file("/nonexistent/scenario.json"), "io_error"));
    const std::string bad = testing::TempDir() + "broken.json";
    std::ofstream(bad) << "{ not json";
    EXPECT_TRUE(has_code(load_scenario_file(bad), "parse_error"));
}

TEST(ScenarioIo, ShippedFixturesValidate) {
    for (const char* name : {"open_water", "obstacle_detour", "balance_2x6", "depth_3d", "bench_4x8", "desk_6x10"}) {
        const ScenarioParse p = load_scenario_file(kData + "/" + name + ".json");
        EXPECT_TRUE(p.ok()) << name << ": " << (p.issues.empty() ? "" : p.issues.front().code);
    }
}

TEST(ScenarioIo, RoundTrip) {
    const ScenarioParse p = load_scenario_file(kData + "/depth_3d.json");
    ASSERT_TRUE(p.ok());
    const auto written = scenario_to_json(p.document->scenario, p.document->som);
    const ScenarioParse again = validate_scenario(json::parse(written.dump()));
    ASSERT_TRUE(again.ok());
    EXPECT_EQ(scenario_to_json(again.document->scenario, again.document->som).dump(), written.dump());
}

TEST(ResultIo, RoundTripReproducesMetrics) {
    for (const char* name : {"obstacle_detour", "depth_3d"}) {
        const ScenarioParse p = load_scenario_file(kData + "/" + std::string(name) + ".json");
        ASSERT_TRUE(p.ok());
        const AssignmentResult r = run_allocation(p.document->scenario, p.document->som);
        const json j = json::parse(result_to_json(r, false).dump(2));
        const AssignmentResult back = result_from_json(j);
        EXPECT_TRUE(check_result(back, p.document->scenario).empty());
        const RunMetrics m = compute_metrics(back);
        EXPECT_EQ(m.path_lengths, r.metrics.path_lengths);
        EXPECT_EQ(m.total, r.metrics.total);
        EXPECT_EQ(m.deviation, r.metrics.deviation);
        EXPECT_EQ(m.task_counts, r.metrics.task_counts);
        EXPECT_EQ(back.tours, r.tours);
        EXPECT_EQ(back.events.size(), r.events.size());
        EXPECT_EQ(result_to_json(back, false).dump(), result_to_json(r, false).dump());
    }
}

TEST(ResultIo, TimingOnlyWhenAsked) {
    const ScenarioParse p = load_scenario_file(kData + "/open_water.json");
    ASSERT_TRUE(p.ok());
    const AssignmentResult r = run_allocation(p.document->scenario, p.document->som);
    EXPECT_TRUE(result_to_json(r, false)["metrics"]["wall_ms"].is_null());
    EXPECT_TRUE(result_to_json(r, true)["metrics"]["wall_ms"].is_number());
}

TEST(ResultIo, RejectsOtherVersions) {
    const ScenarioParse p = load_scenario_file(kData + "/open_water.json");
    const AssignmentResult r = run_allocation(p.document->scenario, p.document->som);
    json j = result_to_json(r, false);
    j["format_version"] = 9;
    EXPECT_THROW((void)result_from_json(j), std::invalid_argument);
}

TEST(CheckResult, FlagsInconsistencies) {
    const ScenarioParse p = load_scenario_file(kData + "/open_water.json");
    const Scenario& s = p.document->scenario;
    AssignmentResult r = run_allocation(s, p.document->som);
    ASSERT_TRUE(check_result(r, s).empty());

    AssignmentResult dup = r;
    dup.legs.push_back(dup.legs.front());
    auto has = [](const std::vector<ValidationIssue>& v, const char* code) {
        return std::any_of(v.begin(), v.end(), [&](const ValidationIssue& i) { return i.code == code; });
    };
    EXPECT_TRUE(has(check_result(dup, s), "target_not_exactly_once"));

    AssignmentResult capped = r;
    capped.n_max = 0;
    EXPECT_TRUE(has(check_result(capped, s), "cap_exceeded"));

    Scenario tight = s;
    tight.s_max = 1.0;
    EXPECT_TRUE(has(check_result(r, tight), "range_exceeded"));

    Scenario blocked = s;
    const Pose& mid = r.legs.front().polyline[r.legs.front().polyline.size() / 2];
    blocked.obstacles.push_back({{mid.x, mid.y, 0}, 0.5});
    EXPECT_TRUE(has(check_result(r, blocked), "leg_not_clear"));
}

TEST(MetricsCsv, SingleRow) {
    const ScenarioParse p = load_scenario_file(kData + "/open_water.json");
    const AssignmentResult r = run_allocation(p.document->scenario, p.document->som);
    std::ostringstream out;
    write_metrics_csv(out, r, 7, false);
    const std::string text = out.str();
    EXPECT_EQ(count(text, "\n"), 2u);
    EXPECT_NE(text.find("\n1,0,7,1,4,6,1,"), std::string::npos);
}

TEST(Svg, OnePolylinePerLeg) {
    for (const char* name : {"open_water", "obstacle_detour", "depth_3d"}) {
        const ScenarioParse p = load_scenario_file(kData + "/" + std::string(name) + ".json");
        ASSERT_TRUE(p.ok());
        const AssignmentResult r = run_allocation(p.document->scenario, p.document->som);
        const std::string svg = render_svg(p.document->scenario, r);
        EXPECT_EQ(count(svg, "<polyline"), r.legs.size()) << name;
        EXPECT_EQ(count(svg, "class=\"auv\""), p.document->scenario.auvs.size() * (r.dimensions == 3 ? 2 : 1));
        EXPECT_EQ(count(svg, "class=\"obstacle\""), p.document->scenario.obstacles.size() * (r.dimensions == 3 ? 2 : 1));
        EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
        EXPECT_NE(svg.find("</svg>"), std::string::npos);
        if (r.dimensions == 3) EXPECT_NE(svg.find("XZ projection"), std::string::npos);
    }
}

TEST(Svg, EscapesTitle) {
    const ScenarioParse p = load_scenario_file(kData + "/open_water.json");
    Scenario s = p.document->scenario;
    s.name = "a<b & \"c\"";
    const AssignmentResult r = run_allocation(s, p.document->som);
    const std::string svg = render_svg(s, r);
    EXPECT_NE(svg.find("<title>a&lt;b &amp; &quot;c&quot;</title>"), std::string::npos);
}
