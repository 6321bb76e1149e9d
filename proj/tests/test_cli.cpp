#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli_runner.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(testing::TempDir()) / ("auvsom_cli_" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t count(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(CliDubins, StraightLine) {
    const auto r = cli::run(cli::binary() + " dubins --start 0,0,0 --goal 10,0,0 --r 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "LSL 0 10 0 total=10\n");
}

TEST(CliDubins, Identity) {
    const auto r = cli::run(cli::binary() + " dubins --start 0,0,0 --goal 0,0,0 --r 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "LSL 0 0 0 total=0\n");
}

TEST(CliDubins, AllWordsMarksCccFeasible) {
    const auto r = cli::run(cli::binary() + " dubins --start 0,0,90 --goal 1,0,270 --r 1 --all-words");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("RLR feasible"), std::string::npos);
    EXPECT_NE(r.out.find("LRL feasible"), std::string::npos);
    EXPECT_EQ(count(r.out, "\n"), 7u);
}

TEST(CliDubins, SamplesAppended) {
    const auto r = cli::run(cli::binary() + " dubins --start 0,0,0 --goal 10,0,0 --r 1 --samples 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\n5.000000 0.000000 0.000000\n"), std::string::npos);
    EXPECT_EQ(count(r.out, "\n"), 4u);
}

TEST(CliDubins, ForcedInfeasibleWordAndBadSyntax) {
    EXPECT_EQ(cli::run(cli::binary() + " dubins --start 0,0,0 --goal 0.5,0.5,0 --r 1 --word LSR").code, 2);
    EXPECT_EQ(cli::run(cli::binary() + " dubins --start 0,0 --goal 1,1,0 --r 1 2>/dev/null").code, 1);
    EXPECT_EQ(cli::run(cli::binary() + " dubins --start a,0,0 --goal 1,1,0 --r 1 2>/dev/null").code, 1);
    EXPECT_EQ(cli::run(cli::binary() + " dubins --start 0,0,0 --goal 1,1,0 --r 0 2>/dev/null").code, 1);
}

TEST(CliPlan, OpenWater) {
    const fs::path dir = fresh_dir("open");
    const auto r = cli::run(cli::binary() + " plan " + cli::data("open_water.json") + " --svg --out " + cli::quote(dir));
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(cli::slurp(dir / "result.json"));
    EXPECT_EQ(j["legs"].size(), 6u);
    EXPECT_TRUE(j["events"].empty());
    EXPECT_EQ(j["format_version"], 1);
    EXPECT_TRUE(fs::exists(dir / "metrics.csv"));
    EXPECT_EQ(count(cli::slurp(dir / "plot.svg"), "<polyline"), 6u);
}

TEST(CliPlan, ObstacleForcesReassignment) {
    const fs::path dir = fresh_dir("obstacle");
    const auto r = cli::run(cli::binary() + " plan " + cli::data("obstacle_detour.json") + " --out " + cli::quote(dir));
    ASSERT_EQ(r.code, 0);
    const json j = json::parse(cli::slurp(dir / "result.json"));
    EXPECT_GE(j["events"].size(), 1u);
    EXPECT_FALSE(fs::exists(dir / "plot.svg"));
}

TEST(CliPlan, TinyRangeExitsTwo) {
    const fs::path dir = fresh_dir("tiny");
    fs::create_directories(dir);
    json doc = json::parse(cli::slurp(std::string(AUVSOM_DATA_DIR) + "/open_water.json"));
    doc["s_max"] = 0.001;
    const fs::path scenario = dir / "tiny.json";
    std::ofstream(scenario) << doc.dump();
    const auto r = cli::run(cli::binary() + " plan " + cli::quote(scenario) + " --out " + cli::quote(dir / "out"));
    EXPECT_EQ(r.code, 2);
    const json j = json::parse(cli::slurp(dir / "out" / "result.json"));
    EXPECT_EQ(j["unassigned"].size(), 6u);
}

TEST(CliPlan, InvalidScenarioExitsOne) {
    const fs::path dir = fresh_dir("invalid");
    fs::create_directories(dir);
    json doc = json::parse(cli::slurp(std::string(AUVSOM_DATA_DIR) + "/open_water.json"));
    doc["targets"] = json::array();
    const fs::path scenario = dir / "bad.json";
    std::ofstream(scenario) << doc.dump();
    const auto r = cli::run(cli::binary() + " plan " + cli::quote(scenario) + " --out " + cli::quote(dir / "out") +
                            " 2>&1");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("error: no_targets"), std::string::npos);
    EXPECT_EQ(cli::run(cli::binary() + " plan /nonexistent.json 2>/dev/null").code, 1);
}

TEST(CliPlan, StepTooCoarseExitsOne) {
    const fs::path dir = fresh_dir("coarse");
    EXPECT_EQ(cli::run(cli::binary() + " plan " + cli::data("open_water.json") + " --step 1 --out " +
                       cli::quote(dir) + " 2>/dev/null")
                  .code,
              1);
}

TEST(CliPlan, OutputDirectoryFromEnvironment) {
    const fs::path dir = fresh_dir("env");
    const auto r = cli::run("AUVSOM_OUT_DIR=" + cli::quote(dir) + " " + cli::binary() + " plan " +
                            cli::data("open_water.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(fs::exists(dir / "result.json"));
}

TEST(CliPlan, NoBalancingDropsCap) {
    const fs::path dir = fresh_dir("nobal");
    ASSERT_EQ(cli::run(cli::binary() + " plan " + cli::data("open_water.json") + " --no-balancing --out " +
                       cli::quote(dir)).code,
              0);
    const json j = json::parse(cli::slurp(dir / "result.json"));
    EXPECT_FALSE(j["balanced"].get<bool>());
    EXPECT_TRUE(j["n_max"].is_null());
}

TEST(CliPlan, TimingFlagFillsWallTime) {
    const fs::path dir = fresh_dir("timing");
    ASSERT_EQ(cli::run(cli::binary() + " plan " + cli::data("open_water.json") + " --timing --out " +
                       cli::quote(dir)).code,
              0);
    const json j = json::parse(cli::slurp(dir / "result.json"));
    EXPECT_TRUE(j["metrics"]["wall_ms"].is_number());
}

TEST(CliBench, CompareLayout) {
    const auto r = cli::run(cli::binary() + " bench " + cli::data("bench_4x8.json") +
                            " --trials 30 --seed 7 --compare-balancing");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(count(r.out, "\n"), 1u + 60u + 2u);
    EXPECT_EQ(count(r.out, ",mean,"), 2u);
}

TEST(CliBench, SingleTrialSingleRow) {
    const auto r = cli::run(cli::binary() + " bench " + cli::data("bench_4x8.json") + " --trials 1 --seed 3");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(count(r.out, "\n"), 2u);
}

TEST(CliBench, RepeatableAndJobIndependent) {
    const std::string cmd = cli::binary() + " bench " + cli::data("bench_4x8.json") + " --trials 8 --seed 11 --compare-balancing";
    const auto a = cli::run(cmd);
    const auto b = cli::run(cmd + " --jobs 3");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(CliBench, WritesFile) {
    const fs::path dir = fresh_dir("benchfile");
    fs::create_directories(dir);
    const auto r = cli::run(cli::binary() + " bench " + cli::data("bench_4x8.json") + " --trials 2 --seed 1 --out " +
                            cli::quote(dir / "c.csv"));
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(count(cli::slurp(dir / "c.csv"), "\n"), 4u);
}

TEST(Cli, MissingSubcommandFails) { EXPECT_EQ(cli::run(cli::binary() + " >/dev/null 2>&1").code, 1); }
