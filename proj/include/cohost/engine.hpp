#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cohost/ask.hpp"
#include "cohost/intervene.hpp"
#include "cohost/meeting_model.hpp"
#include "cohost/observe.hpp"

namespace cohost {

enum class EnginePhase { Observing, Asking, Intervening, Ended };

struct DirectMessage {
    ParticipantId to;
    std::string text;
    std::optional<VisualizationSpec> chart;

    bool operator==(const DirectMessage&) const = default;
};

struct LogEntry {
    std::string text;

    bool operator==(const LogEntry&) const = default;
};

// Produced by the gateway when an input record is rejected; the engine
// itself never emits one.
struct ErrorNote {
    std::string field;
    std::string reason;

    bool operator==(const ErrorNote&) const = default;
};

struct OutputAction {
    millis_t t = 0;
    std::variant<DirectMessage, LogEntry, ErrorNote> body;

    bool operator==(const OutputAction&) const = default;
};

struct MeetingStart {
    MeetingConfig config;
    Roster roster;
    millis_t t = 0;

    bool operator==(const MeetingStart&) const = default;
};

struct TickEvent {
    seconds_t t = 0;

    bool operator==(const TickEvent&) const = default;
};

struct MeetingEnd {
    millis_t t = 0;

    bool operator==(const MeetingEnd&) const = default;
};

using InputEvent = std::variant<MeetingStart, VoiceEvent, ChatEvent, TickEvent, MeetingEnd>;

struct TriggerRecord {
    seconds_t t = 0;
    TriggerReason reason;

    bool operator==(const TriggerRecord&) const = default;
};

struct InterventionRecord {
    InterventionKind kind = InterventionKind::HostExpression;
    ParticipantId receiver;
    seconds_t activated_t = 0;
    bool stopped = false;

    bool operator==(const InterventionRecord&) const = default;
};

struct MeetingReport {
    MeetingConfig config;
    Roster roster;
    std::vector<std::pair<ParticipantId, seconds_t>> cumulative;  // roster order
    std::optional<TriggerRecord> trigger;
    std::vector<ParticipantId> under_at_trigger;
    std::vector<ParticipantId> over_at_trigger;
    std::vector<ParticipantId> over_at_activation;
    std::vector<DialogueSession> sessions;
    InterventionActivation activation;
    std::vector<InterventionRecord> interventions;
    std::vector<QueuedMessage> messages;  // gated messages, enqueue order
    seconds_t elapsed = 0;
    millis_t ended_t = 0;
};

// The whole loop as a single-threaded fold: (state, event) -> actions.
// Wall-clock time is never read, so two runs over the same event sequence
// produce identical action logs. Engines are plain values; copying one
// snapshots the meeting.
class Engine {
public:
    Engine() = default;

    // Folds one event into the state and returns the actions it caused.
    // Throws MeetingError on protocol violations (bad roster, out-of-order
    // clock, events before the meeting starts); the state is unchanged when
    // it throws. Events after the meeting ends are ignored with a log entry.
    std::vector<OutputAction> step(const InputEvent& event);

    // Only valid once the meeting has ended.
    MeetingReport finalize() const;

    bool started() const { return started_; }
    EnginePhase phase() const { return phase_; }
    const MeetingConfig& config() const { return config_; }
    const SpeakingLedger& ledger() const { return ledger_; }
    const std::vector<DialogueSession>& sessions() const { return sessions_; }
    const std::vector<InterventionState>& interventions() const { return states_; }
    const std::vector<QueuedMessage>& message_queue() const { return messages_; }
    const std::vector<OutputAction>& action_log() const { return log_; }
    const std::optional<TriggerRecord>& trigger() const { return trigger_; }
    const std::vector<ParticipantId>& under_at_trigger() const { return under_at_trigger_; }
    const std::vector<ParticipantId>& over_at_trigger() const { return over_at_trigger_; }

private:
    std::vector<OutputAction> on_start(const MeetingStart& ev);
    std::vector<OutputAction> on_voice(const VoiceEvent& ev);
    std::vector<OutputAction> on_chat(const ChatEvent& ev);
    std::vector<OutputAction> on_tick(const TickEvent& ev);
    std::vector<OutputAction> on_end(const MeetingEnd& ev);

    void require_started() const;
    void require_clock(millis_t t) const;
    void enqueue(QueuedMessage msg, millis_t t, std::vector<OutputAction>& actions);
    InterventionActivation aggregate_sessions() const;
    void apply_activations(millis_t t_ms, std::vector<OutputAction>& actions);

    bool started_ = false;
    MeetingConfig config_;
    SpeakingLedger ledger_;
    EnginePhase phase_ = EnginePhase::Observing;
    bool asked_ = false;
    std::optional<TriggerRecord> trigger_;
    std::vector<ParticipantId> under_at_trigger_;
    std::vector<ParticipantId> over_at_trigger_;
    std::vector<ParticipantId> over_at_activation_;
    std::vector<DialogueSession> sessions_;
    std::vector<InterventionState> states_;
    std::vector<InterventionRecord> records_;
    std::vector<QueuedMessage> messages_;
    std::set<ParticipantId> stopped_receivers_;
    bool host_activated_ = false;
    bool over_activated_ = false;
    millis_t last_t_ms_ = 0;
    millis_t ended_t_ = 0;
    std::vector<OutputAction> log_;
};

// Convenience wrapper: starts a meeting and returns the intro actions.
std::pair<Engine, std::vector<OutputAction>> init(const MeetingConfig& config, const Roster& roster);

}  // namespace cohost
