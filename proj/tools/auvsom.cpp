// auvsom command-line front end: plan, bench and dubins subcommands.

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "auvsom/campaign.hpp"
#include "auvsom/dubins.hpp"
#include "auvsom/result_io.hpp"
#include "auvsom/scenario_io.hpp"
#include "auvsom/som.hpp"
#include "auvsom/svg.hpp"

namespace fs = std::filesystem;
using namespace auvsom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitIncomplete = 2;

void report_issues(const std::vector<ValidationIssue>& issues) {
    for (const auto& issue : issues) std::cerr << "error: " << issue.code << ": " << issue.message << '\n';
}

std::optional<Pose> parse_pose(const std::string& text) {
    std::vector<double> values;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t end = std::min(text.find(',', begin), text.size());
        double v = 0.0;
        const char* first = text.data() + begin;
        const char* last = text.data() + end;
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(v)) return std::nullopt;
        values.push_back(v);
        begin = end + 1;
    }
    if (values.size() != 3) return std::nullopt;
    return Pose::make(values[0], values[1], deg_to_rad(values[2]));
}

std::string describe(const DubinsPath& p) {
    return fmt::format("{} {:g} {:g} {:g} total={:g}", to_string(p.word), p.segments[0], p.segments[1], p.segments[2],
                       p.total_length());
}

bool write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

struct PlanArgs {
    std::string scenario;
    std::string out_dir;
    bool svg = false;
    double step = 0.0;
    bool no_balancing = false;
    bool timing = false;
};

int cmd_plan(const PlanArgs& args) {
    const ScenarioParse parsed = load_scenario_file(args.scenario);
    if (!parsed.ok()) {
        report_issues(parsed.issues);
        return kExitError;
    }
    const Scenario& scenario = parsed.document->scenario;
    if (args.step > 0.0 && args.step > scenario.d_safety / 2.0) {
        std::cerr << fmt::format("error: --step {} exceeds d_safety/2 = {}\n", args.step, scenario.d_safety / 2.0);
        return kExitError;
    }

    AllocationOptions options;
    options.balanced = !args.no_balancing;
    options.sample_step = args.step;
    const AssignmentResult result = run_allocation(scenario, parsed.document->som, options);

    std::string out_dir = args.out_dir;
    if (out_dir.empty()) {
        const char* env = std::getenv("AUVSOM_OUT_DIR");
        out_dir = env && *env ? env : "auvsom_out";
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << '\n';
        return kExitError;
    }

    bool written = write_file(fs::path(out_dir) / "result.json", result_to_json(result, args.timing).dump(2) + "\n");
    std::ostringstream csv;
    write_metrics_csv(csv, result, scenario.seed, args.timing);
    written = written && write_file(fs::path(out_dir) / "metrics.csv", csv.str());
    if (args.svg) written = written && write_file(fs::path(out_dir) / "plot.svg", render_svg(scenario, result));
    if (!written) {
        std::cerr << "error: failed writing artifacts to " << out_dir << '\n';
        return kExitError;
    }

    std::cout << fmt::format("{}: {} legs, {} reassignment events, {} unassigned, total length {:.3f}\n",
                             scenario.name.empty() ? args.scenario : scenario.name, result.legs.size(),
                             result.events.size(), result.unassigned.size(), result.metrics.total);
    return result.unassigned.empty() ? kExitOk : kExitIncomplete;
}

struct BenchArgs {
    std::string scenario;
    std::size_t trials = 30;
    std::uint64_t seed = 1;
    bool compare = false;
    bool no_balancing = false;
    bool timing = false;
    std::size_t jobs = 1;
    std::string out;
};

int cmd_bench(const BenchArgs& args) {
    const ScenarioParse parsed = load_scenario_file(args.scenario);
    if (!parsed.ok()) {
        report_issues(parsed.issues);
        return kExitError;
    }
    CampaignOptions options;
    options.mode = args.compare ? BalancingMode::Compare
                                : (args.no_balancing ? BalancingMode::UnbalancedOnly : BalancingMode::BalancedOnly);
    options.jobs = args.jobs;

    CampaignReport report;
    try {
        report = run_campaign(parsed.document->scenario, args.trials, args.seed, parsed.document->som, options);
    } catch (const GenerationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }

    std::ostringstream csv;
    write_campaign_csv(csv, report, args.timing);
    if (args.out.empty()) {
        std::cout << csv.str();
    } else if (!write_file(args.out, csv.str())) {
        std::cerr << "error: cannot write " << args.out << '\n';
        return kExitError;
    }
    return kExitOk;
}

struct DubinsArgs {
    std::string start;
    std::string goal;
    double radius = 1.0;
    bool all_words = false;
    std::size_t samples = 0;
    std::string word;
};

int cmd_dubins(const DubinsArgs& args) {
    const auto start = parse_pose(args.start);
    const auto goal = parse_pose(args.goal);
    if (!start || !goal) {
        std::cerr << "error: poses must be given as x,y,heading_deg\n";
        return kExitError;
    }
    KinematicLimits limits;
    try {
        limits = KinematicLimits::make(args.radius);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }

    if (args.all_words) {
        for (const DubinsWord w : kAllWords) {
            const auto p = solve_word(*start, *goal, limits, w);
            if (p) {
                std::cout << fmt::format("{} feasible {:g} {:g} {:g} total={:g}\n", to_string(w), p->segments[0],
                                         p->segments[1], p->segments[2], p->total_length());
            } else {
                std::cout << to_string(w) << " infeasible\n";
            }
        }
    }

    std::optional<DubinsPath> path;
    if (!args.word.empty()) {
        const auto w = parse_word(args.word);
        if (!w) {
            std::cerr << "error: unknown word " << args.word << '\n';
            return kExitError;
        }
        path = solve_word(*start, *goal, limits, *w);
        if (!path) {
            std::cout << args.word << " infeasible\n";
            return kExitIncomplete;
        }
    } else {
        path = shortest_path(*start, *goal, limits);
    }
    std::cout << describe(*path) << '\n';

    if (args.samples > 0) {
        const double length = path->total_length();
        const std::size_t n = length > 0.0 ? std::max<std::size_t>(args.samples, 2) : 1;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = n > 1 ? length * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
            const Pose p = sample_at(*path, s);
            std::cout << fmt::format("{:.6f} {:.6f} {:.6f}\n", p.x, p.y, rad_to_deg(p.heading));
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-triggered SOM task allocation with Dubins path planning for AUV fleets"};
    app.require_subcommand(1);

    PlanArgs plan;
    auto* plan_cmd = app.add_subcommand("plan", "allocate targets and plan paths for one scenario");
    plan_cmd->add_option("scenario", plan.scenario, "scenario JSON file")->required();
    plan_cmd->add_option("--out", plan.out_dir, "output directory (default $AUVSOM_OUT_DIR or ./auvsom_out)");
    plan_cmd->add_flag("--svg", plan.svg, "also write plot.svg");
    plan_cmd->add_option("--step", plan.step, "sampling step for polylines and collision checks")
        ->check(CLI::PositiveNumber);
    plan_cmd->add_flag("--no-balancing", plan.no_balancing, "disable the load term and task cap");
    plan_cmd->add_flag("--timing", plan.timing, "record wall time in the artifacts");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "seeded Monte Carlo campaign over random placements");
    bench_cmd->add_option("scenario", bench.scenario, "template scenario JSON file")->required();
    bench_cmd->add_option("--trials", bench.trials, "number of trials")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench.seed, "campaign seed")->required();
    bench_cmd->add_flag("--compare-balancing", bench.compare, "run balanced and unbalanced on the same draws");
    bench_cmd->add_flag("--no-balancing", bench.no_balancing, "run only the unbalanced variant");
    bench_cmd->add_flag("--timing", bench.timing, "fill the wall_ms column");
    bench_cmd->add_option("--jobs", bench.jobs, "worker threads")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", bench.out, "write CSV here instead of stdout");

    DubinsArgs dubins;
    auto* dubins_cmd = app.add_subcommand("dubins", "shortest Dubins path between two poses");
    dubins_cmd->add_option("--start", dubins.start, "x,y,heading_deg")->required();
    dubins_cmd->add_option("--goal", dubins.goal, "x,y,heading_deg")->required();
    dubins_cmd->add_option("--r", dubins.radius, "minimum turning radius")->required();
    dubins_cmd->add_flag("--all-words", dubins.all_words, "list all six words with feasibility");
    dubins_cmd->add_option("--samples", dubins.samples, "append N evenly spaced samples");
    dubins_cmd->add_option("--word", dubins.word, "force one word (LSL, RSR, LSR, RSL, RLR, LRL)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (*plan_cmd) return cmd_plan(plan);
        if (*bench_cmd) return cmd_bench(bench);
        if (*dubins_cmd) return cmd_dubins(dubins);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
