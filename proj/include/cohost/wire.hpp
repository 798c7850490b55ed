#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cohost/engine.hpp"

namespace cohost::wire {

inline constexpr int kProtocolVersion = 1;

// Raised when a record cannot be decoded; names the offending field.
struct WireError : std::runtime_error {
    std::string field;

    WireError(std::string f, const std::string& reason)
        : std::runtime_error(reason), field(std::move(f)) {}
};

// One newline-delimited record per event/action. Encoding is canonical:
// fixed field order {v, type, t_ms, payload}, no whitespace, so logs diff
// cleanly and decode(encode(x)) == x.
std::string encode_event(const InputEvent& event);
InputEvent decode_event(const std::string& line);  // throws WireError

std::string encode_action(const OutputAction& action);
OutputAction decode_action(const std::string& line);  // throws WireError

// The error record written to the action stream when an input line is
// rejected.
std::string error_record(millis_t t, const std::string& field, const std::string& reason);

nlohmann::ordered_json chart_to_json(const VisualizationSpec& spec);
VisualizationSpec chart_from_json(const nlohmann::json& j);

nlohmann::ordered_json config_to_json(const MeetingConfig& config);
MeetingConfig config_from_json(const nlohmann::json& j);

std::string role_name(Role role);
Role role_from_name(const std::string& name);

nlohmann::ordered_json report_to_json(const MeetingReport& report);

}  // namespace cohost::wire
