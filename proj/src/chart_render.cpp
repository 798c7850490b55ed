#include "cohost/chart_render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cohost {

namespace {

constexpr double kPlotWidth = 320.0;
constexpr int kBarHeight = 20;
constexpr int kRowGap = 8;
constexpr int kLeftGutter = 140;
constexpr int kTopMargin = 36;
constexpr int kTextBarWidth = 40;

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// Whole numbers print without decimals, fractional values with three.
std::string fmt_seconds(double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        return std::to_string(static_cast<long long>(v));
    }
    return fmt(v, "%.3f");
}

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string chart_title(const VisualizationSpec& spec) {
    std::string title = spec.kind == ChartKind::PerMember
                            ? "Speaking time by member (s)"
                            : "Your speaking time vs. the average of others (s)";
    return title + ", as of " + std::to_string(spec.as_of_t) + "s";
}

std::string render_svg(const VisualizationSpec& spec) {
    double max_seconds = 0.0;
    for (const auto& bar : spec.bars) max_seconds = std::max(max_seconds, bar.seconds);
    if (max_seconds <= 0.0) max_seconds = 1.0;

    const int height = kTopMargin + static_cast<int>(spec.bars.size()) * (kBarHeight + kRowGap);
    const int width = kLeftGutter + static_cast<int>(kPlotWidth) + 80;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
           "\" height=\"" + std::to_string(height) + "\" font-family=\"monospace\" font-size=\"13\">\n";
    svg += "<text x=\"8\" y=\"20\">" + escape_xml(chart_title(spec)) + "</text>\n";

    int y = kTopMargin;
    for (const auto& bar : spec.bars) {
        const double w = bar.seconds / max_seconds * kPlotWidth;
        const char* fill = bar.highlight ? "#d1495b" : "#4f7cac";
        svg += "<text x=\"8\" y=\"" + std::to_string(y + 15) + "\">" + escape_xml(bar.label) +
               "</text>\n";
        svg += "<rect x=\"" + std::to_string(kLeftGutter) + "\" y=\"" + std::to_string(y) +
               "\" width=\"" + fmt(w, "%.2f") + "\" height=\"" + std::to_string(kBarHeight) +
               "\" fill=\"" + fill + "\"/>\n";
        svg += "<text x=\"" + fmt(kLeftGutter + w + 6.0, "%.2f") + "\" y=\"" +
               std::to_string(y + 15) + "\">" + fmt_seconds(bar.seconds) + "</text>\n";
        y += kBarHeight + kRowGap;
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_text(const VisualizationSpec& spec) {
    double max_seconds = 0.0;
    std::size_t label_width = 0;
    for (const auto& bar : spec.bars) {
        max_seconds = std::max(max_seconds, bar.seconds);
        label_width = std::max(label_width, bar.label.size());
    }
    if (max_seconds <= 0.0) max_seconds = 1.0;

    std::string out = chart_title(spec) + "\n";
    for (const auto& bar : spec.bars) {
        std::string label = bar.label;
        label.resize(label_width, ' ');
        std::string value = fmt_seconds(bar.seconds);
        if (value.size() < 9) value.insert(0, 9 - value.size(), ' ');
        const int len =
            static_cast<int>(std::lround(bar.seconds / max_seconds * kTextBarWidth));
        out += "  " + label + " " + value + "  " + std::string(len, '#');
        if (bar.highlight) out += " *";
        out += "\n";
    }
    return out;
}

}  // namespace

std::string render_chart(const VisualizationSpec& spec, ChartFormat format) {
    if (spec.bars.empty()) {
        throw MeetingError(MeetingError::Kind::validation, "chart has no bars");
    }
    return format == ChartFormat::Svg ? render_svg(spec) : render_text(spec);
}

ChartFormat chart_format_from_name(const std::string& name) {
    if (name == "svg") return ChartFormat::Svg;
    if (name == "text") return ChartFormat::Text;
    throw MeetingError(MeetingError::Kind::validation, "unsupported chart format '" + name + "'");
}

}  // namespace cohost
