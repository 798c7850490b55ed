#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cohost/ask.hpp"
#include "cohost/meeting_model.hpp"

namespace cohost {

enum class InterventionKind { HostExpression, HostInhibition, OverParticipator };

struct InterventionState {
    InterventionKind kind = InterventionKind::HostExpression;
    ParticipantId receiver;
    bool active = true;
    bool stopped = false;
    seconds_t next_refresh_t = 0;

    bool operator==(const InterventionState&) const = default;
};

enum class ChartKind { PerMember, SelfVsAverage };

struct Bar {
    std::string label;
    // Whole seconds for per-member bars; the self-vs-average chart carries
    // the exact fractional mean in its second bar.
    double seconds = 0.0;
    bool highlight = false;

    bool operator==(const Bar&) const = default;
};

struct VisualizationSpec {
    ChartKind kind = ChartKind::PerMember;
    std::vector<Bar> bars;
    seconds_t as_of_t = 0;

    bool operator==(const VisualizationSpec&) const = default;
};

enum class MessageKind { HostIntervention, OverIntervention, Refresh, Feedback };

// A gated outgoing message: enqueued immediately, delivered once the
// receiver's microphone has been quiet long enough.
struct QueuedMessage {
    ParticipantId to;
    std::string text;
    std::optional<VisualizationSpec> chart;
    millis_t enqueued_t = 0;
    std::optional<millis_t> delivered_t;
    bool dropped = false;
    MessageKind kind = MessageKind::HostIntervention;

    bool operator==(const QueuedMessage&) const = default;
};

// Per-member speaking time excluding the host and co-host, bars ascending by
// seconds (ties by id), members strictly below the member average
// highlighted.
VisualizationSpec build_host_chart(const SpeakingLedger& ledger);

// Two bars: p's time (highlighted) and the mean over the other members.
// Throws MeetingError{validation} with fewer than two members.
VisualizationSpec build_self_vs_avg_chart(const SpeakingLedger& ledger, const ParticipantId& p);

struct ActivationResult {
    std::vector<InterventionState> states;
    std::vector<QueuedMessage> messages;
    std::vector<std::string> logs;  // e.g. a skipped over-participator state
};

// Turn an aggregated activation into intervention states and their initial
// queued messages. t is the activation instant in seconds; each state's
// first refresh lands at t + refresh_interval.
ActivationResult activate(const InterventionActivation& activation, const SpeakingLedger& ledger,
                          const std::vector<ParticipantId>& over_list, const ParticipantId& host,
                          seconds_t t, const MeetingConfig& config);

// Enqueue an updated chart for every active, non-stopped state whose refresh
// time has arrived, advancing it by refresh_interval.
std::vector<QueuedMessage> refresh_due(std::vector<InterventionState>& states,
                                       const SpeakingLedger& ledger, seconds_t t,
                                       const MeetingConfig& config);

// Deliver, in enqueue order, every pending message whose receiver has been
// quiet for at least mic_quiet_gate seconds at time t. Delivered entries get
// their delivered_t stamped; copies of them are returned.
std::vector<QueuedMessage> gate_and_deliver(std::vector<QueuedMessage>& queue,
                                            const SpeakingLedger& ledger, millis_t t,
                                            const MeetingConfig& config);

// "stop" (after trimming and lowercasing) from a participant with active
// states stops all of them and drops their undelivered messages. Returns
// whether a stop was applied.
bool handle_stop(std::vector<InterventionState>& states, std::vector<QueuedMessage>& queue,
                 const ParticipantId& from, std::string_view text);

// One anonymous relayed message to the host per note.
std::vector<QueuedMessage> forward_feedback(const ParticipantId& host,
                                            const std::vector<std::string>& notes, millis_t t);

}  // namespace cohost
