#include "cohost/wire.hpp"

#include "cohost/ask.hpp"

namespace cohost::wire {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const json& require_field(const json& j, const std::string& name, const std::string& where) {
    auto it = j.find(name);
    if (it == j.end()) {
        throw WireError(where.empty() ? name : where + "." + name, "missing field");
    }
    return *it;
}

millis_t require_ms(const json& j, const std::string& name, const std::string& where = {}) {
    const json& v = require_field(j, name, where);
    if (!v.is_number_integer() || v.get<millis_t>() < 0) {
        throw WireError(where.empty() ? name : where + "." + name,
                        "must be a non-negative integer");
    }
    return v.get<millis_t>();
}

std::string require_string(const json& j, const std::string& name, const std::string& where = {}) {
    const json& v = require_field(j, name, where);
    if (!v.is_string()) {
        throw WireError(where.empty() ? name : where + "." + name, "must be a string");
    }
    return v.get<std::string>();
}

bool require_bool(const json& j, const std::string& name, const std::string& where = {}) {
    const json& v = require_field(j, name, where);
    if (!v.is_boolean()) {
        throw WireError(where.empty() ? name : where + "." + name, "must be a boolean");
    }
    return v.get<bool>();
}

double require_number(const json& j, const std::string& name, const std::string& where = {}) {
    const json& v = require_field(j, name, where);
    if (!v.is_number()) {
        throw WireError(where.empty() ? name : where + "." + name, "must be a number");
    }
    return v.get<double>();
}

json parse_line(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw WireError("record", "not a JSON object");
    }
    const json& v = require_field(j, "v", {});
    if (!v.is_number_integer() || v.get<int>() != kProtocolVersion) {
        throw WireError("v", "unsupported protocol version");
    }
    return j;
}

ordered_json record_shell(const std::string& type, millis_t t) {
    ordered_json rec;
    rec["v"] = kProtocolVersion;
    rec["type"] = type;
    rec["t_ms"] = t;
    rec["payload"] = ordered_json::object();
    return rec;
}

}  // namespace

std::string role_name(Role role) {
    switch (role) {
        case Role::Host: return "host";
        case Role::CoHost: return "cohost";
        default: return "member";
    }
}

Role role_from_name(const std::string& name) {
    if (name == "host") return Role::Host;
    if (name == "member") return Role::Member;
    if (name == "cohost") return Role::CoHost;
    throw WireError("role", "unknown role '" + name + "'");
}

nlohmann::ordered_json config_to_json(const MeetingConfig& config) {
    ordered_json j;
    j["scheduled_duration_s"] = config.scheduled_duration;
    j["ratio_min_elapsed_s"] = config.ratio_min_elapsed;
    j["ratio_high"] = config.ratio_high;
    j["ratio_low"] = config.ratio_low;
    j["half_time_fraction"] = config.half_time_fraction;
    j["refresh_interval_s"] = config.refresh_interval;
    j["mic_quiet_gate_s"] = config.mic_quiet_gate;
    j["tick_s"] = config.tick;
    return j;
}

MeetingConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw WireError("config", "must be an object");
    MeetingConfig config;
    if (j.contains("scheduled_duration_s"))
        config.scheduled_duration = require_ms(j, "scheduled_duration_s", "config");
    if (j.contains("ratio_min_elapsed_s"))
        config.ratio_min_elapsed = require_ms(j, "ratio_min_elapsed_s", "config");
    if (j.contains("ratio_high")) config.ratio_high = require_number(j, "ratio_high", "config");
    if (j.contains("ratio_low")) config.ratio_low = require_number(j, "ratio_low", "config");
    if (j.contains("half_time_fraction"))
        config.half_time_fraction = require_number(j, "half_time_fraction", "config");
    if (j.contains("refresh_interval_s"))
        config.refresh_interval = require_ms(j, "refresh_interval_s", "config");
    if (j.contains("mic_quiet_gate_s"))
        config.mic_quiet_gate = require_ms(j, "mic_quiet_gate_s", "config");
    if (j.contains("tick_s")) config.tick = require_ms(j, "tick_s", "config");
    return config;
}

nlohmann::ordered_json chart_to_json(const VisualizationSpec& spec) {
    ordered_json j;
    j["kind"] = spec.kind == ChartKind::PerMember ? "per_member" : "self_vs_average";
    j["as_of_s"] = spec.as_of_t;
    ordered_json bars = ordered_json::array();
    for (const auto& bar : spec.bars) {
        ordered_json b;
        b["label"] = bar.label;
        b["seconds"] = bar.seconds;
        b["highlight"] = bar.highlight;
        bars.push_back(std::move(b));
    }
    j["bars"] = std::move(bars);
    return j;
}

VisualizationSpec chart_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw WireError("chart", "must be an object");
    VisualizationSpec spec;
    const auto kind = require_string(j, "kind", "chart");
    if (kind == "per_member") {
        spec.kind = ChartKind::PerMember;
    } else if (kind == "self_vs_average") {
        spec.kind = ChartKind::SelfVsAverage;
    } else {
        throw WireError("chart.kind", "unknown chart kind '" + kind + "'");
    }
    spec.as_of_t = require_ms(j, "as_of_s", "chart");
    const json& bars = require_field(j, "bars", "chart");
    if (!bars.is_array()) throw WireError("chart.bars", "must be an array");
    for (const auto& b : bars) {
        Bar bar;
        bar.label = require_string(b, "label", "chart.bars");
        bar.seconds = require_number(b, "seconds", "chart.bars");
        bar.highlight = require_bool(b, "highlight", "chart.bars");
        spec.bars.push_back(std::move(bar));
    }
    return spec;
}

std::string encode_event(const InputEvent& event) {
    ordered_json rec;
    std::visit(
        [&](const auto& ev) {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, MeetingStart>) {
                rec = record_shell("meeting_start", ev.t);
                rec["payload"]["config"] = config_to_json(ev.config);
                ordered_json roster = ordered_json::array();
                for (const auto& entry : ev.roster) {
                    ordered_json e;
                    e["id"] = entry.id;
                    e["role"] = role_name(entry.role);
                    roster.push_back(std::move(e));
                }
                rec["payload"]["roster"] = std::move(roster);
            } else if constexpr (std::is_same_v<T, VoiceEvent>) {
                rec = record_shell("voice", ev.t);
                rec["payload"]["participant"] = ev.participant;
                rec["payload"]["active"] = ev.active;
            } else if constexpr (std::is_same_v<T, ChatEvent>) {
                rec = record_shell("chat", ev.t);
                rec["payload"]["from"] = ev.from;
                rec["payload"]["text"] = ev.text;
            } else if constexpr (std::is_same_v<T, TickEvent>) {
                rec = record_shell("tick", ev.t * 1000);
            } else {
                rec = record_shell("meeting_end", ev.t);
            }
        },
        event);
    return rec.dump();
}

InputEvent decode_event(const std::string& line) {
    const json rec = parse_line(line);
    const auto type = require_string(rec, "type");
    const millis_t t = require_ms(rec, "t_ms");
    const json& payload = require_field(rec, "payload", {});
    if (!payload.is_object()) throw WireError("payload", "must be an object");

    if (type == "meeting_start") {
        MeetingStart ev;
        ev.t = t;
        ev.config = config_from_json(require_field(payload, "config", "payload"));
        const json& roster = require_field(payload, "roster", "payload");
        if (!roster.is_array()) throw WireError("payload.roster", "must be an array");
        for (const auto& e : roster) {
            RosterEntry entry;
            entry.id = require_string(e, "id", "payload.roster");
            entry.role = role_from_name(require_string(e, "role", "payload.roster"));
            ev.roster.push_back(std::move(entry));
        }
        return ev;
    }
    if (type == "voice") {
        VoiceEvent ev;
        ev.t = t;
        ev.participant = require_string(payload, "participant", "payload");
        ev.active = require_bool(payload, "active", "payload");
        return ev;
    }
    if (type == "chat") {
        ChatEvent ev;
        ev.t = t;
        ev.from = require_string(payload, "from", "payload");
        ev.text = require_string(payload, "text", "payload");
        if (trim(ev.text).empty()) {
            throw WireError("payload.text", "must be non-empty");
        }
        return ev;
    }
    if (type == "tick") {
        if (t % 1000 != 0) throw WireError("t_ms", "tick must fall on a whole second");
        return TickEvent{t / 1000};
    }
    if (type == "meeting_end") {
        return MeetingEnd{t};
    }
    throw WireError("type", "unknown event type '" + type + "'");
}

std::string encode_action(const OutputAction& action) {
    ordered_json rec;
    std::visit(
        [&](const auto& body) {
            using T = std::decay_t<decltype(body)>;
            if constexpr (std::is_same_v<T, DirectMessage>) {
                rec = record_shell("dm", action.t);
                rec["payload"]["to"] = body.to;
                rec["payload"]["text"] = body.text;
                if (body.chart) rec["payload"]["chart"] = chart_to_json(*body.chart);
            } else if constexpr (std::is_same_v<T, LogEntry>) {
                rec = record_shell("log", action.t);
                rec["payload"]["text"] = body.text;
            } else {
                rec = record_shell("error", action.t);
                rec["payload"]["field"] = body.field;
                rec["payload"]["reason"] = body.reason;
            }
        },
        action.body);
    return rec.dump();
}

OutputAction decode_action(const std::string& line) {
    const json rec = parse_line(line);
    const auto type = require_string(rec, "type");
    const millis_t t = require_ms(rec, "t_ms");
    const json& payload = require_field(rec, "payload", {});
    if (!payload.is_object()) throw WireError("payload", "must be an object");

    if (type == "dm") {
        DirectMessage body;
        body.to = require_string(payload, "to", "payload");
        body.text = require_string(payload, "text", "payload");
        if (payload.contains("chart")) {
            body.chart = chart_from_json(payload.at("chart"));
        }
        return OutputAction{t, std::move(body)};
    }
    if (type == "log") {
        return OutputAction{t, LogEntry{require_string(payload, "text", "payload")}};
    }
    if (type == "error") {
        ErrorNote body;
        body.field = require_string(payload, "field", "payload");
        body.reason = require_string(payload, "reason", "payload");
        return OutputAction{t, std::move(body)};
    }
    throw WireError("type", "unknown action type '" + type + "'");
}

std::string error_record(millis_t t, const std::string& field, const std::string& reason) {
    return encode_action(OutputAction{t, ErrorNote{field, reason}});
}

nlohmann::ordered_json report_to_json(const MeetingReport& report) {
    ordered_json j;
    j["v"] = 1;
    j["config"] = config_to_json(report.config);
    ordered_json participants = ordered_json::array();
    for (size_t i = 0; i < report.roster.size(); ++i) {
        ordered_json p;
        p["id"] = report.roster[i].id;
        p["role"] = role_name(report.roster[i].role);
        p["cumulative_s"] = report.cumulative[i].second;
        participants.push_back(std::move(p));
    }
    j["participants"] = std::move(participants);
    j["elapsed_s"] = report.elapsed;
    j["ended_t_ms"] = report.ended_t;

    if (report.trigger) {
        ordered_json trig;
        trig["t_s"] = report.trigger->t;
        if (report.trigger->reason.kind == TriggerKind::RatioImbalance) {
            trig["reason"] = "ratio_imbalance";
            trig["participant"] = report.trigger->reason.participant;
            trig["ratio"] = report.trigger->reason.ratio;
        } else {
            trig["reason"] = "half_time";
        }
        j["trigger"] = std::move(trig);
    } else {
        j["trigger"] = nullptr;
    }
    j["under_at_trigger"] = report.under_at_trigger;
    j["over_at_trigger"] = report.over_at_trigger;
    j["over_at_activation"] = report.over_at_activation;

    ordered_json sessions = ordered_json::array();
    for (const auto& session : report.sessions) {
        ordered_json s;
        s["participant"] = session.participant;
        switch (session.stage) {
            case AskStage::Done: s["stage"] = "done"; break;
            case AskStage::Silent: s["stage"] = "silent"; break;
            case AskStage::AwaitingQ1: s["stage"] = "awaiting_q1"; break;
            case AskStage::AwaitingQ2: s["stage"] = "awaiting_q2"; break;
            case AskStage::AwaitingQ3: s["stage"] = "awaiting_q3"; break;
        }
        ordered_json answers = ordered_json::object();
        for (const auto& [index, answer] : session.answers) {
            const std::string key = std::to_string(index);
            switch (answer.kind) {
                case Answer::Kind::Yes: answers[key] = "yes"; break;
                case Answer::Kind::No: answers[key] = "no"; break;
                case Answer::Kind::FreeText: answers[key] = {{"feedback", answer.text}}; break;
            }
        }
        s["answers"] = std::move(answers);
        sessions.push_back(std::move(s));
    }
    j["sessions"] = std::move(sessions);

    ordered_json activation;
    activation["host_intervention"] = report.activation.host_intervention;
    switch (report.activation.host_reason) {
        case HostReason::None: activation["host_reason"] = "none"; break;
        case HostReason::Expression: activation["host_reason"] = "expression"; break;
        case HostReason::Inhibition: activation["host_reason"] = "inhibition"; break;
        case HostReason::Both: activation["host_reason"] = "both"; break;
    }
    activation["over_participator_intervention"] = report.activation.over_participator_intervention;
    activation["feedback_notes"] = report.activation.feedback_notes;
    j["activation"] = std::move(activation);

    ordered_json interventions = ordered_json::array();
    for (const auto& record : report.interventions) {
        ordered_json r;
        switch (record.kind) {
            case InterventionKind::HostExpression: r["kind"] = "host_expression"; break;
            case InterventionKind::HostInhibition: r["kind"] = "host_inhibition"; break;
            case InterventionKind::OverParticipator: r["kind"] = "over_participator"; break;
        }
        r["receiver"] = record.receiver;
        r["activated_t_s"] = record.activated_t;
        r["stopped"] = record.stopped;
        interventions.push_back(std::move(r));
    }
    j["interventions"] = std::move(interventions);

    ordered_json msgs = ordered_json::array();
    for (const auto& msg : report.messages) {
        ordered_json m;
        m["to"] = msg.to;
        switch (msg.kind) {
            case MessageKind::HostIntervention: m["kind"] = "host_intervention"; break;
            case MessageKind::OverIntervention: m["kind"] = "over_intervention"; break;
            case MessageKind::Refresh: m["kind"] = "refresh"; break;
            case MessageKind::Feedback: m["kind"] = "feedback"; break;
        }
        m["enqueued_t_ms"] = msg.enqueued_t;
        if (msg.delivered_t) {
            m["delivered_t_ms"] = *msg.delivered_t;
        } else {
            m["delivered_t_ms"] = nullptr;
        }
        m["dropped"] = msg.dropped;
        msgs.push_back(std::move(m));
    }
    j["messages"] = std::move(msgs);
    return j;
}

}  // namespace cohost::wire
