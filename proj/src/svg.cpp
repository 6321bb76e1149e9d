#include "auvsom/svg.hpp"

#include <array>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace auvsom {

namespace {

constexpr double kScale = 20.0;
constexpr double kMargin = 40.0;
constexpr double kGap = 60.0;

constexpr std::array<std::string_view, 8> kPalette = {"#d62728", "#1f77b4", "#ff7f0e", "#9467bd",
                                                      "#8c564b", "#e377c2", "#17becf", "#bcbd22"};

std::string_view colour(std::size_t auv) { return kPalette[auv % kPalette.size()]; }

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

// Maps workspace coordinates of one view onto SVG pixels (y axis flipped).
struct View {
    double left;   // pixel x of the view's origin corner
    double h_min;  // workspace coordinate at the left edge
    double v_min;  // workspace coordinate at the bottom edge
    double v_max;

    [[nodiscard]] double px(double h) const { return left + (h - h_min) * kScale; }
    [[nodiscard]] double py(double v) const { return kMargin + (v_max - v) * kScale; }
};

void diamond(std::string& out, double cx, double cy, std::string_view fill) {
    constexpr double s = 7.0;
    out += fmt::format(R"(<polygon class="auv" points="{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}" )"
                       R"(fill="{}" stroke="black" stroke-width="1"/>)"
                       "\n",
                       cx, cy - s, cx + s, cy, cx, cy + s, cx - s, cy, fill);
}

void frame(std::string& out, const View& v, double width_units, double height_units, std::string_view label) {
    out += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="#eef5fb" stroke="#333"/>)"
                       "\n",
                       v.left, kMargin, width_units * kScale, height_units * kScale);
    out += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-family="sans-serif" font-size="14">{}</text>)"
                       "\n",
                       v.left, kMargin - 12.0, label);
}

}  // namespace

std::string render_svg(const Scenario& scenario, const AssignmentResult& result) {
    const Bounds& b = scenario.bounds;
    const bool three = scenario.dimensions == 3;
    const double w = b.max.x - b.min.x;
    const double h = b.max.y - b.min.y;
    const double depth = three ? b.max.z - b.min.z : 0.0;

    const View top{kMargin, b.min.x, b.min.y, b.max.y};
    const View side{kMargin + w * kScale + kGap, b.min.x, b.min.z, b.max.z};
    const double width = three ? side.left + w * kScale + kMargin : kMargin * 2.0 + w * kScale;
    const double height = kMargin * 2.0 + std::max(h, depth) * kScale;

    std::string out;
    out += R"(<?xml version="1.0" encoding="UTF-8"?>)"
           "\n";
    out += fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{:.0f}" height="{:.0f}" viewBox="0 0 {:.0f} {:.0f}">)"
                       "\n",
                       width, height, width, height);
    out += fmt::format("<title>{}</title>\n", result.scenario_name.empty() ? "auvsom plan" : xml_escape(result.scenario_name));
    frame(out, top, w, h, three ? "XY projection" : "top view");
    if (three) frame(out, side, w, depth, "XZ projection");

    for (const Obstacle& ob : scenario.obstacles) {
        out += fmt::format(R"(<circle class="obstacle" cx="{:.2f}" cy="{:.2f}" r="{:.2f}" fill="#7f7f7f" fill-opacity="0.6"/>)"
                           "\n",
                           top.px(ob.center.x), top.py(ob.center.y), ob.radius * kScale);
        out += fmt::format(R"(<circle class="envelope" cx="{:.2f}" cy="{:.2f}" r="{:.2f}" fill="none" stroke="#7f7f7f" stroke-dasharray="4 3"/>)"
                           "\n",
                           top.px(ob.center.x), top.py(ob.center.y), (ob.radius + scenario.d_safety) * kScale);
        if (three) {
            out += fmt::format(R"(<circle class="obstacle" cx="{:.2f}" cy="{:.2f}" r="{:.2f}" fill="#7f7f7f" fill-opacity="0.6"/>)"
                               "\n",
                               side.px(ob.center.x), side.py(ob.center.z), ob.radius * kScale);
        }
    }

    for (const Leg& leg : result.legs) {
        std::string points;
        for (const Pose& p : leg.polyline) {
            if (!points.empty()) points += ' ';
            points += fmt::format("{:.2f},{:.2f}", top.px(p.x), top.py(p.y));
        }
        out += fmt::format(R"(<polyline class="leg" data-auv="{}" data-target="{}" points="{}" fill="none" stroke="{}" stroke-width="2"/>)"
                           "\n",
                           leg.auv, leg.target, points, colour(leg.auv));
        if (three) {
            std::string d;
            for (const Pose& p : leg.polyline) {
                d += fmt::format("{}{:.2f} {:.2f}", d.empty() ? "M" : " L", side.px(p.x), side.py(p.z));
            }
            out += fmt::format(R"(<path class="leg-profile" data-auv="{}" d="{}" fill="none" stroke="{}" stroke-width="2"/>)"
                               "\n",
                               leg.auv, d, colour(leg.auv));
        }
    }

    for (std::size_t t = 0; t < scenario.targets.size(); ++t) {
        const Vec3 p = scenario.targets[t].position;
        const bool missed = t < result.target_to_auv.size() && !result.target_to_auv[t];
        out += fmt::format(R"(<circle class="target" cx="{:.2f}" cy="{:.2f}" r="6" fill="none" stroke="{}" stroke-width="2"/>)"
                           "\n",
                           top.px(p.x), top.py(p.y), missed ? "#000000" : "#2ca02c");
        if (three) {
            out += fmt::format(R"(<circle class="target" cx="{:.2f}" cy="{:.2f}" r="6" fill="none" stroke="#2ca02c" stroke-width="2"/>)"
                               "\n",
                               side.px(p.x), side.py(p.z));
        }
    }
    for (std::size_t j = 0; j < scenario.auvs.size(); ++j) {
        const Pose& a = scenario.auvs[j];
        diamond(out, top.px(a.x), top.py(a.y), colour(j));
        if (three) diamond(out, side.px(a.x), side.py(a.z), colour(j));
    }
    out += "</svg>\n";
    return out;
}

}  // namespace auvsom
