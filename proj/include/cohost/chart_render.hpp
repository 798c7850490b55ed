#pragma once

#include <string>

#include "cohost/intervene.hpp"

namespace cohost {

enum class ChartFormat { Svg, Text };

// Deterministic rendering of a chart payload: the same spec always yields
// byte-identical output, with bar lengths proportional to seconds. Throws
// MeetingError{validation} on an empty spec.
std::string render_chart(const VisualizationSpec& spec, ChartFormat format);

ChartFormat chart_format_from_name(const std::string& name);  // "svg" | "text"

}  // namespace cohost
