#include "auvsom/result_io.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "auvsom/campaign.hpp"
#include "auvsom/scenario_io.hpp"

namespace auvsom {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json pose_json(const Pose& p, bool three) {
    ordered_json o;
    o["x"] = p.x;
    o["y"] = p.y;
    if (three) o["z"] = p.z;
    o["heading_deg"] = rad_to_deg(p.heading);
    if (three) o["pitch_deg"] = rad_to_deg(p.pitch);
    return o;
}

Pose pose_from(const json& o) {
    return Pose::make(o.at("x").get<double>(), o.at("y").get<double>(), deg_to_rad(o.at("heading_deg").get<double>()),
                      o.value("z", 0.0), deg_to_rad(o.value("pitch_deg", 0.0)));
}

}  // namespace

ordered_json result_to_json(const AssignmentResult& r, bool include_timing) {
    const bool three = r.dimensions == 3;
    ordered_json j;
    j["format_version"] = kFormatVersion;
    j["scenario"] = r.scenario_name;
    j["dimensions"] = r.dimensions;
    j["balanced"] = r.balanced;
    j["n_max"] = r.n_max ? ordered_json(*r.n_max) : ordered_json(nullptr);

    j["assignment"] = ordered_json::array();
    for (std::size_t t = 0; t < r.target_to_auv.size(); ++t) {
        const auto& a = r.target_to_auv[t];
        j["assignment"].push_back({{"target", t}, {"auv", a ? ordered_json(*a) : ordered_json(nullptr)}});
    }
    j["tours"] = r.tours;

    j["legs"] = ordered_json::array();
    for (const Leg& leg : r.legs) {
        ordered_json l;
        l["auv"] = leg.auv;
        l["target"] = leg.target;
        l["word"] = std::string(to_string(leg.path.horizontal.word));
        l["segments"] = leg.path.horizontal.segments;
        l["radius"] = leg.path.horizontal.radius;
        l["from"] = pose_json(leg.path.horizontal.start, false);
        l["to"] = pose_json(leg.path.horizontal.goal, false);
        l["z0"] = leg.path.z0;
        l["z1"] = leg.path.z1;
        l["loops"] = leg.path.loops;
        l["pitch_deg"] = rad_to_deg(leg.path.pitch());
        l["length"] = leg.length;
        ordered_json poly = ordered_json::array();
        for (const Pose& p : leg.polyline) {
            ordered_json pt = ordered_json::array({p.x, p.y});
            if (three) pt.push_back(p.z);
            poly.push_back(std::move(pt));
        }
        l["polyline"] = std::move(poly);
        j["legs"].push_back(std::move(l));
    }

    j["unassigned"] = r.unassigned;
    j["events"] = ordered_json::array();
    for (const ReassignmentEvent& e : r.events) {
        j["events"].push_back({{"epoch", e.epoch},
                               {"target", e.target},
                               {"auv", e.auv},
                               {"reason", e.reason},
                               {"u1", e.trigger.u1},
                               {"u2", e.trigger.u2},
                               {"u", e.trigger.u}});
    }

    const RunMetrics& m = r.metrics;
    ordered_json mj;
    mj["path_lengths"] = m.path_lengths;
    mj["task_counts"] = m.task_counts;
    mj["total"] = m.total;
    mj["max"] = m.max;
    mj["deviation"] = m.deviation;
    mj["unassigned"] = m.unassigned;
    mj["wall_ms"] = include_timing ? ordered_json(m.wall_ms) : ordered_json(nullptr);
    j["metrics"] = std::move(mj);
    return j;
}

AssignmentResult result_from_json(const json& j) {
    if (j.at("format_version").get<int>() != kFormatVersion) throw std::invalid_argument("unsupported format_version");
    AssignmentResult r;
    r.scenario_name = j.at("scenario").get<std::string>();
    r.dimensions = j.at("dimensions").get<int>();
    r.balanced = j.at("balanced").get<bool>();
    if (!j.at("n_max").is_null()) r.n_max = j.at("n_max").get<std::size_t>();

    for (const json& a : j.at("assignment")) {
        const auto t = a.at("target").get<std::size_t>();
        if (t >= r.target_to_auv.size()) r.target_to_auv.resize(t + 1);
        if (!a.at("auv").is_null()) r.target_to_auv[t] = a.at("auv").get<std::size_t>();
    }
    r.tours = j.at("tours").get<std::vector<std::vector<std::size_t>>>();

    for (const json& l : j.at("legs")) {
        Leg leg;
        leg.auv = l.at("auv").get<std::size_t>();
        leg.target = l.at("target").get<std::size_t>();
        const auto word = parse_word(l.at("word").get<std::string>());
        if (!word) throw std::invalid_argument("unknown Dubins word in result");
        leg.path.horizontal.word = *word;
        leg.path.horizontal.segments = l.at("segments").get<std::array<double, 3>>();
        leg.path.horizontal.radius = l.at("radius").get<double>();
        leg.path.horizontal.start = pose_from(l.at("from"));
        leg.path.horizontal.goal = pose_from(l.at("to"));
        leg.path.z0 = l.at("z0").get<double>();
        leg.path.z1 = l.at("z1").get<double>();
        leg.path.loops = l.at("loops").get<int>();
        leg.length = l.at("length").get<double>();
        for (const json& pt : l.at("polyline")) {
            Pose p;
            p.x = pt.at(0).get<double>();
            p.y = pt.at(1).get<double>();
            if (pt.size() > 2) p.z = pt.at(2).get<double>();
            leg.polyline.push_back(p);
        }
        r.legs.push_back(std::move(leg));
    }

    r.unassigned = j.at("unassigned").get<std::vector<std::size_t>>();
    for (const json& e : j.at("events")) {
        ReassignmentEvent ev;
        ev.epoch = e.at("epoch").get<std::size_t>();
        ev.target = e.at("target").get<std::size_t>();
        ev.auv = e.at("auv").get<std::size_t>();
        ev.reason = e.at("reason").get<std::string>();
        ev.trigger = TriggerState{e.at("u1").get<int>(), e.at("u2").get<int>(), e.at("u").get<int>()};
        r.events.push_back(std::move(ev));
    }

    const json& mj = j.at("metrics");
    RunMetrics& m = r.metrics;
    m.path_lengths = mj.at("path_lengths").get<std::vector<double>>();
    m.task_counts = mj.at("task_counts").get<std::vector<std::size_t>>();
    m.total = mj.at("total").get<double>();
    m.max = mj.at("max").get<double>();
    m.deviation = mj.at("deviation").get<double>();
    m.unassigned = mj.at("unassigned").get<std::size_t>();
    if (!mj.at("wall_ms").is_null()) m.wall_ms = mj.at("wall_ms").get<double>();
    return r;
}

std::vector<ValidationIssue> check_result(const AssignmentResult& r, const Scenario& scenario) {
    std::vector<ValidationIssue> issues;
    auto add = [&](std::string code, std::string msg) { issues.push_back({std::move(code), std::move(msg)}); };

    const std::size_t n_targets = scenario.targets.size();
    const std::size_t n_auvs = scenario.auvs.size();
    if (r.target_to_auv.size() != n_targets) add("target_count_mismatch", "assignment does not cover every target");
    if (r.tours.size() != n_auvs) add("auv_count_mismatch", "one tour per AUV expected");

    std::vector<int> seen(n_targets, 0);
    for (const Leg& leg : r.legs) {
        if (leg.target >= n_targets || leg.auv >= n_auvs) {
            add("leg_out_of_range", "leg references an unknown target or AUV");
            continue;
        }
        ++seen[leg.target];
        if (leg.target < r.target_to_auv.size() && r.target_to_auv[leg.target] != leg.auv) {
            add("leg_mapping_mismatch", fmt::format("leg for target {} disagrees with the mapping", leg.target));
        }
        if (!polyline_clear(leg.polyline, scenario)) {
            add("leg_not_clear", fmt::format("leg to target {} violates an obstacle envelope", leg.target));
        }
    }
    for (const std::size_t t : r.unassigned) {
        if (t < n_targets) ++seen[t];
        if (t < r.target_to_auv.size() && r.target_to_auv[t]) {
            add("unassigned_but_mapped", fmt::format("target {} is both mapped and unassignable", t));
        }
    }
    for (std::size_t t = 0; t < n_targets; ++t) {
        if (seen[t] != 1) add("target_not_exactly_once", fmt::format("target {} appears {} times", t, seen[t]));
    }

    std::vector<double> travelled(n_auvs, 0.0);
    for (const Leg& leg : r.legs) {
        if (leg.auv < n_auvs) travelled[leg.auv] += leg.length;
    }
    for (std::size_t j = 0; j < r.tours.size() && j < n_auvs; ++j) {
        if (r.n_max && r.tours[j].size() > *r.n_max) add("cap_exceeded", fmt::format("auv {} exceeds N_MAX", j));
        if (travelled[j] > scenario.s_max) add("range_exceeded", fmt::format("auv {} exceeds s_max", j));
    }
    return issues;
}

void write_metrics_csv(std::ostream& out, const AssignmentResult& result, std::uint64_t seed, bool include_timing) {
    CampaignReport report;
    report.seed = seed;
    report.n_trials = 1;
    report.rows.push_back(
        CampaignRow{0, seed, result.balanced, result.tours.size(), result.target_to_auv.size(), result.metrics});
    write_campaign_csv(out, report, include_timing);
}

}  // namespace auvsom
