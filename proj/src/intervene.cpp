#include "cohost/intervene.hpp"

#include <algorithm>

#include "cohost/messages.hpp"

namespace cohost {

VisualizationSpec build_host_chart(const SpeakingLedger& ledger) {
    const auto members = ledger.member_ids();
    VisualizationSpec spec;
    spec.kind = ChartKind::PerMember;
    spec.as_of_t = ledger.elapsed();
    if (members.empty()) return spec;

    const double avg = ledger.average_nonhost();
    for (const auto& m : members) {
        const auto cum = ledger.cumulative(m);
        spec.bars.push_back(Bar{m, static_cast<double>(cum), static_cast<double>(cum) < avg});
    }
    std::stable_sort(spec.bars.begin(), spec.bars.end(), [](const Bar& a, const Bar& b) {
        return a.seconds != b.seconds ? a.seconds < b.seconds : a.label < b.label;
    });
    return spec;
}

VisualizationSpec build_self_vs_avg_chart(const SpeakingLedger& ledger, const ParticipantId& p) {
    const auto members = ledger.member_ids();
    if (members.size() < 2) {
        throw MeetingError(MeetingError::Kind::validation,
                           "self-vs-average chart needs at least two non-host participants");
    }
    seconds_t others_total = 0;
    int others = 0;
    for (const auto& m : members) {
        if (m == p) continue;
        others_total += ledger.cumulative(m);
        ++others;
    }
    VisualizationSpec spec;
    spec.kind = ChartKind::SelfVsAverage;
    spec.as_of_t = ledger.elapsed();
    spec.bars.push_back(Bar{"you", static_cast<double>(ledger.cumulative(p)), true});
    spec.bars.push_back(Bar{"others (avg)", static_cast<double>(others_total) / others, false});
    return spec;
}

ActivationResult activate(const InterventionActivation& activation, const SpeakingLedger& ledger,
                          const std::vector<ParticipantId>& over_list, const ParticipantId& host,
                          seconds_t t, const MeetingConfig& config) {
    ActivationResult result;
    const millis_t now_ms = t * 1000;

    if (activation.host_intervention) {
        InterventionState state;
        state.kind = activation.host_reason == HostReason::Expression
                         ? InterventionKind::HostExpression
                         : InterventionKind::HostInhibition;
        state.receiver = host;
        state.next_refresh_t = t + config.refresh_interval;
        result.states.push_back(state);

        int reason = 1;
        if (activation.host_reason == HostReason::Inhibition) reason = 2;
        if (activation.host_reason == HostReason::Both) reason = 3;
        result.messages.push_back(QueuedMessage{host, messages::host_intervention(reason),
                                                build_host_chart(ledger), now_ms, std::nullopt,
                                                false, MessageKind::HostIntervention});
    }

    if (activation.over_participator_intervention) {
        for (const auto& receiver : over_list) {
            std::optional<VisualizationSpec> chart;
            try {
                chart = build_self_vs_avg_chart(ledger, receiver);
            } catch (const MeetingError&) {
                result.logs.push_back("over-participator intervention skipped for '" + receiver +
                                      "': fewer than two non-host participants");
                continue;
            }
            InterventionState state;
            state.kind = InterventionKind::OverParticipator;
            state.receiver = receiver;
            state.next_refresh_t = t + config.refresh_interval;
            result.states.push_back(state);
            result.messages.push_back(QueuedMessage{receiver,
                                                    messages::over_participator_intervention(),
                                                    std::move(chart), now_ms, std::nullopt, false,
                                                    MessageKind::OverIntervention});
        }
    }
    return result;
}

std::vector<QueuedMessage> refresh_due(std::vector<InterventionState>& states,
                                       const SpeakingLedger& ledger, seconds_t t,
                                       const MeetingConfig& config) {
    std::vector<QueuedMessage> out;
    for (auto& state : states) {
        if (!state.active || state.stopped || t < state.next_refresh_t) continue;
        QueuedMessage msg;
        msg.to = state.receiver;
        msg.enqueued_t = t * 1000;
        msg.kind = MessageKind::Refresh;
        if (state.kind == InterventionKind::OverParticipator) {
            msg.text = messages::over_participator_refresh();
            msg.chart = build_self_vs_avg_chart(ledger, state.receiver);
        } else {
            msg.text = messages::host_refresh();
            msg.chart = build_host_chart(ledger);
        }
        out.push_back(std::move(msg));
        state.next_refresh_t += config.refresh_interval;
    }
    return out;
}

std::vector<QueuedMessage> gate_and_deliver(std::vector<QueuedMessage>& queue,
                                            const SpeakingLedger& ledger, millis_t t,
                                            const MeetingConfig& config) {
    std::vector<QueuedMessage> delivered;
    for (auto& msg : queue) {
        if (msg.delivered_t || msg.dropped) continue;
        if (ledger.quiet_duration(msg.to, t) >= config.mic_quiet_gate * 1000) {
            msg.delivered_t = t;
            delivered.push_back(msg);
        }
    }
    return delivered;
}

bool handle_stop(std::vector<InterventionState>& states, std::vector<QueuedMessage>& queue,
                 const ParticipantId& from, std::string_view text) {
    if (to_lower(trim(text)) != messages::kStopCommand) return false;

    bool any = false;
    for (auto& state : states) {
        if (state.receiver == from && state.active && !state.stopped) {
            state.stopped = true;
            any = true;
        }
    }
    if (!any) return false;

    for (auto& msg : queue) {
        if (msg.to == from && !msg.delivered_t && !msg.dropped) msg.dropped = true;
    }
    return true;
}

std::vector<QueuedMessage> forward_feedback(const ParticipantId& host,
                                            const std::vector<std::string>& notes, millis_t t) {
    std::vector<QueuedMessage> out;
    out.reserve(notes.size());
    for (const auto& note : notes) {
        out.push_back(QueuedMessage{host, messages::anonymous_feedback(note), std::nullopt, t,
                                    std::nullopt, false, MessageKind::Feedback});
    }
    return out;
}

}  // namespace cohost
