#include "auvsom/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include <fmt/format.h>

namespace auvsom {

namespace {

using nlohmann::json;

// Collects structural problems instead of stopping at the first one.
class Reader {
public:
    explicit Reader(std::vector<ValidationIssue>& issues) : issues_(issues) {}

    void fail(std::string code, std::string message) { issues_.push_back({std::move(code), std::move(message)}); }

    std::optional<double> number(const json& obj, const char* key, const std::string& where, bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail("missing_field", fmt::format("{}.{} is required", where, key));
            return std::nullopt;
        }
        if (!it->is_number()) {
            fail("invalid_type", fmt::format("{}.{} must be a number", where, key));
            return std::nullopt;
        }
        return it->get<double>();
    }

    double number_or(const json& obj, const char* key, const std::string& where, double fallback) {
        return number(obj, key, where, false).value_or(fallback);
    }

    const json* array(const json& obj, const char* key, bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail("missing_field", fmt::format("{} is required", key));
            return nullptr;
        }
        if (!it->is_array()) {
            fail("invalid_type", fmt::format("{} must be an array", key));
            return nullptr;
        }
        return &*it;
    }

    const json* object(const json& obj, const char* key, bool required) {
        const auto it = obj.find(key);
        if (it == obj.end()) {
            if (required) fail("missing_field", fmt::format("{} is required", key));
            return nullptr;
        }
        if (!it->is_object()) {
            fail("invalid_type", fmt::format("{} must be an object", key));
            return nullptr;
        }
        return &*it;
    }

    std::optional<Vec3> corner(const json& bounds, const char* key, int dims) {
        const auto it = bounds.find(key);
        if (it == bounds.end()) {
            fail("missing_field", fmt::format("bounds.{} is required", key));
            return std::nullopt;
        }
        const std::size_t want = dims == 3 ? 3 : 2;
        if (!it->is_array() || it->size() != want ||
            !std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_number(); })) {
            fail("invalid_type", fmt::format("bounds.{} must be an array of {} numbers", key, want));
            return std::nullopt;
        }
        Vec3 v{(*it)[0].get<double>(), (*it)[1].get<double>(), 0.0};
        if (want == 3) v.z = (*it)[2].get<double>();
        return v;
    }

    std::optional<Vec3> point(const json& obj, const std::string& where, int dims) {
        if (!obj.is_object()) {
            fail("invalid_type", fmt::format("{} must be an object", where));
            return std::nullopt;
        }
        const auto x = number(obj, "x", where, true);
        const auto y = number(obj, "y", where, true);
        double z = 0.0;
        if (dims == 3) {
            const auto zv = number(obj, "z", where, true);
            if (!zv) return std::nullopt;
            z = *zv;
        }
        if (!x || !y) return std::nullopt;
        return Vec3{*x, *y, z};
    }

private:
    std::vector<ValidationIssue>& issues_;
};

}  // namespace

ScenarioParse validate_scenario(const nlohmann::json& raw) {
    ScenarioParse out;
    Reader rd(out.issues);
    if (!raw.is_object()) {
        rd.fail("invalid_type", "scenario document must be a JSON object");
        return out;
    }

    if (const auto v = rd.number(raw, "format_version", "scenario", true); v && *v != kFormatVersion) {
        rd.fail("bad_format_version", fmt::format("unsupported format_version {}", *v));
    }

    ScenarioDocument doc;
    Scenario& s = doc.scenario;
    if (const auto it = raw.find("name"); it != raw.end()) {
        if (it->is_string()) {
            s.name = it->get<std::string>();
        } else {
            rd.fail("invalid_type", "name must be a string");
        }
    }
    s.dimensions = static_cast<int>(rd.number_or(raw, "dimensions", "scenario", 2));
    if (s.dimensions != 2 && s.dimensions != 3) {
        rd.fail("invalid_dimensions", "dimensions must be 2 or 3");
        return out;
    }
    const int dims = s.dimensions;

    if (const json* b = rd.object(raw, "bounds", true)) {
        const auto lo = rd.corner(*b, "min", dims);
        const auto hi = rd.corner(*b, "max", dims);
        if (lo) s.bounds.min = *lo;
        if (hi) s.bounds.max = *hi;
    }

    double r_min = 1.0;
    double max_pitch_deg = 15.0;
    if (const json* lim = rd.object(raw, "limits", false)) {
        r_min = rd.number_or(*lim, "r_min", "limits", r_min);
        max_pitch_deg = rd.number_or(*lim, "max_pitch_deg", "limits", max_pitch_deg);
    }
    s.limits.r_min = r_min;
    s.limits.max_pitch = deg_to_rad(max_pitch_deg);
    s.limits.max_yaw_rate = r_min > 0.0 ? 1.0 / r_min : 0.0;
    s.d_safety = rd.number_or(raw, "d_safety", "scenario", 1.5 * r_min);
    s.s_max = rd.number_or(raw, "s_max", "scenario", 1000.0);
    if (const auto it = raw.find("seed"); it != raw.end()) {
        if (it->is_number_unsigned()) {
            s.seed = it->get<std::uint64_t>();
        } else {
            rd.fail("invalid_type", "seed must be a non-negative integer");
        }
    }

    if (const json* auvs = rd.array(raw, "auvs", true)) {
        for (std::size_t i = 0; i < auvs->size(); ++i) {
            const std::string where = fmt::format("auvs[{}]", i);
            const auto p = rd.point((*auvs)[i], where, dims);
            if (!p) continue;
            const double heading = deg_to_rad(rd.number_or((*auvs)[i], "heading_deg", where, 0.0));
            const double pitch = dims == 3 ? deg_to_rad(rd.number_or((*auvs)[i], "pitch_deg", where, 0.0)) : 0.0;
            s.auvs.push_back(Pose::make(p->x, p->y, heading, p->z, pitch));
        }
    }
    if (const json* targets = rd.array(raw, "targets", true)) {
        for (std::size_t i = 0; i < targets->size(); ++i) {
            const std::string where = fmt::format("targets[{}]", i);
            const auto p = rd.point((*targets)[i], where, dims);
            if (!p) continue;
            Target t{*p, std::nullopt};
            if (const auto h = rd.number((*targets)[i], "heading_deg", where, false)) t.heading = wrap_two_pi(deg_to_rad(*h));
            s.targets.push_back(t);
        }
    }
    if (const json* obstacles = rd.array(raw, "obstacles", false)) {
        for (std::size_t i = 0; i < obstacles->size(); ++i) {
            const std::string where = fmt::format("obstacles[{}]", i);
            const auto p = rd.point((*obstacles)[i], where, dims);
            const auto r = (*obstacles)[i].is_object() ? rd.number((*obstacles)[i], "radius", where, true) : std::nullopt;
            if (p && r) s.obstacles.push_back(Obstacle{*p, *r});
        }
    }

    if (const json* som = rd.object(raw, "som", false)) {
        SomParams& sp = doc.som;
        sp.learning_rate = rd.number_or(*som, "learning_rate", "som", sp.learning_rate);
        sp.decay = rd.number_or(*som, "decay", "som", sp.decay);
        sp.initial_gain = rd.number_or(*som, "initial_gain", "som", sp.initial_gain);
        sp.neighborhood_radius = rd.number_or(*som, "neighborhood_radius", "som", sp.neighborhood_radius);
        sp.snap_distance = rd.number_or(*som, "snap_distance", "som", sp.snap_distance);
        sp.max_iterations = static_cast<int>(rd.number_or(*som, "max_iterations", "som", sp.max_iterations));
        sp.neurons_per_auv = static_cast<int>(rd.number_or(*som, "neurons_per_auv", "som", sp.neurons_per_auv));
        try {
            sp.validate();
        } catch (const std::invalid_argument& e) {
            rd.fail("invalid_som_params", e.what());
        }
    }

    if (!out.issues.empty()) return out;
    out.issues = check_scenario(s);
    if (out.issues.empty()) out.document = std::move(doc);
    return out;
}

ScenarioParse load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        ScenarioParse out;
        out.issues.push_back({"io_error", fmt::format("cannot open {}", path.string())});
        return out;
    }
    json raw = json::parse(in, nullptr, false);
    if (raw.is_discarded()) {
        ScenarioParse out;
        out.issues.push_back({"parse_error", fmt::format("{} is not valid JSON", path.string())});
        return out;
    }
    return validate_scenario(raw);
}

nlohmann::ordered_json scenario_to_json(const Scenario& s, const SomParams& som) {
    using nlohmann::ordered_json;
    const bool three = s.dimensions == 3;
    auto corner = [&](Vec3 v) {
        ordered_json a = ordered_json::array({v.x, v.y});
        if (three) a.push_back(v.z);
        return a;
    };
    auto point = [&](Vec3 v) {
        ordered_json o;
        o["x"] = v.x;
        o["y"] = v.y;
        if (three) o["z"] = v.z;
        return o;
    };

    ordered_json j;
    j["format_version"] = kFormatVersion;
    j["name"] = s.name;
    j["dimensions"] = s.dimensions;
    j["bounds"] = {{"min", corner(s.bounds.min)}, {"max", corner(s.bounds.max)}};
    j["limits"] = {{"r_min", s.limits.r_min}, {"max_pitch_deg", rad_to_deg(s.limits.max_pitch)}};
    j["d_safety"] = s.d_safety;
    j["s_max"] = s.s_max;
    j["seed"] = s.seed;
    j["auvs"] = ordered_json::array();
    for (const Pose& p : s.auvs) {
        ordered_json o = point(p.position());
        o["heading_deg"] = rad_to_deg(p.heading);
        if (three) o["pitch_deg"] = rad_to_deg(p.pitch);
        j["auvs"].push_back(o);
    }
    j["targets"] = ordered_json::array();
    for (const Target& t : s.targets) {
        ordered_json o = point(t.position);
        if (t.heading) o["heading_deg"] = rad_to_deg(*t.heading);
        j["targets"].push_back(o);
    }
    j["obstacles"] = ordered_json::array();
    for (const Obstacle& ob : s.obstacles) {
        ordered_json o = point(ob.center);
        o["radius"] = ob.radius;
        j["obstacles"].push_back(o);
    }
    j["som"] = {{"learning_rate", som.learning_rate},         {"decay", som.decay},
                {"initial_gain", som.initial_gain},           {"neighborhood_radius", som.neighborhood_radius},
                {"snap_distance", som.snap_distance},         {"max_iterations", som.max_iterations},
                {"neurons_per_auv", som.neurons_per_auv}};
    return j;
}

}  // namespace auvsom
