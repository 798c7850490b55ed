#include "cohost/engine.hpp"

#include <algorithm>

#include "cohost/messages.hpp"

namespace cohost {

namespace {

OutputAction dm(millis_t t, ParticipantId to, std::string text,
                std::optional<VisualizationSpec> chart = std::nullopt) {
    return OutputAction{t, DirectMessage{std::move(to), std::move(text), std::move(chart)}};
}

OutputAction log_entry(millis_t t, std::string text) {
    return OutputAction{t, LogEntry{std::move(text)}};
}

}  // namespace

std::vector<OutputAction> Engine::step(const InputEvent& event) {
    auto actions = std::visit(
        [this](const auto& ev) -> std::vector<OutputAction> {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, MeetingStart>) {
                return on_start(ev);
            } else if constexpr (std::is_same_v<T, VoiceEvent>) {
                return on_voice(ev);
            } else if constexpr (std::is_same_v<T, ChatEvent>) {
                return on_chat(ev);
            } else if constexpr (std::is_same_v<T, TickEvent>) {
                return on_tick(ev);
            } else {
                return on_end(ev);
            }
        },
        event);
    log_.insert(log_.end(), actions.begin(), actions.end());
    return actions;
}

void Engine::require_started() const {
    if (!started_) {
        throw MeetingError(MeetingError::Kind::validation, "meeting not started");
    }
}

void Engine::require_clock(millis_t t) const {
    if (t < last_t_ms_) {
        throw MeetingError(MeetingError::Kind::clock, "event at " + std::to_string(t) +
                                                          "ms behind clock at " +
                                                          std::to_string(last_t_ms_) + "ms");
    }
}

std::vector<OutputAction> Engine::on_start(const MeetingStart& ev) {
    if (started_) {
        throw MeetingError(MeetingError::Kind::validation, "meeting already started");
    }
    ev.config.validate();
    validate_roster(ev.roster);

    config_ = ev.config;
    ledger_ = SpeakingLedger(ev.roster);
    started_ = true;
    phase_ = EnginePhase::Observing;
    last_t_ms_ = ev.t;

    std::vector<OutputAction> actions;
    const auto intro = messages::intro(ledger_.host());
    for (const auto& entry : ev.roster) {
        if (entry.role == Role::CoHost) continue;
        actions.push_back(dm(ev.t, entry.id, intro));
    }
    return actions;
}

std::vector<OutputAction> Engine::on_voice(const VoiceEvent& ev) {
    require_started();
    if (phase_ == EnginePhase::Ended) {
        return {log_entry(ev.t, "voice event after meeting end ignored")};
    }
    require_clock(ev.t);
    ledger_.ingest_voice(ev);
    last_t_ms_ = ev.t;
    return {};
}

InterventionActivation Engine::aggregate_sessions() const {
    std::vector<InterventionActivation> partials;
    partials.reserve(sessions_.size());
    for (const auto& session : sessions_) partials.push_back(session_activation(session));
    return aggregate(partials);
}

void Engine::enqueue(QueuedMessage msg, millis_t t, std::vector<OutputAction>& actions) {
    if (stopped_receivers_.count(msg.to)) {
        actions.push_back(
            log_entry(t, "message to '" + msg.to + "' suppressed: receiver stopped co-host messages"));
        return;
    }
    messages_.push_back(std::move(msg));
}

void Engine::apply_activations(millis_t t_ms, std::vector<OutputAction>& actions) {
    const auto agg = aggregate_sessions();
    const seconds_t now_s = ledger_.elapsed();

    if (agg.host_intervention && !host_activated_) {
        host_activated_ = true;
        InterventionActivation host_only;
        host_only.host_intervention = true;
        host_only.host_reason = agg.host_reason;
        auto result = activate(host_only, ledger_, {}, ledger_.host(), now_s, config_);
        for (const auto& state : result.states) {
            records_.push_back(InterventionRecord{state.kind, state.receiver, now_s, false});
            states_.push_back(state);
        }
        for (auto& msg : result.messages) enqueue(std::move(msg), t_ms, actions);
        for (const auto& text : result.logs) actions.push_back(log_entry(t_ms, text));
        phase_ = EnginePhase::Intervening;
    }

    if (agg.over_participator_intervention && !over_activated_) {
        over_activated_ = true;
        over_at_activation_ = over_participators(ledger_);
        InterventionActivation over_only;
        over_only.over_participator_intervention = true;
        auto result = activate(over_only, ledger_, over_at_activation_, ledger_.host(), now_s, config_);
        for (const auto& state : result.states) {
            records_.push_back(InterventionRecord{state.kind, state.receiver, now_s, false});
            states_.push_back(state);
        }
        for (auto& msg : result.messages) enqueue(std::move(msg), t_ms, actions);
        for (const auto& text : result.logs) actions.push_back(log_entry(t_ms, text));
        phase_ = EnginePhase::Intervening;
    }
}

std::vector<OutputAction> Engine::on_chat(const ChatEvent& ev) {
    require_started();
    if (phase_ == EnginePhase::Ended) {
        return {log_entry(ev.t, "chat after meeting end ignored")};
    }
    require_clock(ev.t);
    if (!ledger_.in_roster(ev.from)) {
        throw MeetingError(MeetingError::Kind::roster, "chat from unknown participant '" + ev.from + "'");
    }
    last_t_ms_ = ev.t;

    std::vector<OutputAction> actions;
    auto session = std::find_if(sessions_.begin(), sessions_.end(), [&](const DialogueSession& s) {
        return s.participant == ev.from &&
               (s.stage == AskStage::AwaitingQ1 || s.stage == AskStage::AwaitingQ2 ||
                s.stage == AskStage::AwaitingQ3);
    });

    if (session != sessions_.end()) {
        const bool had_note = session->answers.count(3) &&
                              session->answers.at(3).kind == Answer::Kind::FreeText;
        const auto parsed = parse_reply(session->stage, ev.text);
        for (auto& out : advance(*session, parsed)) {
            actions.push_back(dm(ev.t, out.to, std::move(out.text)));
        }
        const bool has_note = session->answers.count(3) &&
                              session->answers.at(3).kind == Answer::Kind::FreeText;
        if (!had_note && has_note) {
            for (auto& msg :
                 forward_feedback(ledger_.host(), {session->answers.at(3).text}, ev.t)) {
                enqueue(std::move(msg), ev.t, actions);
            }
        }
        apply_activations(ev.t, actions);
        return actions;
    }

    if (handle_stop(states_, messages_, ev.from, ev.text)) {
        stopped_receivers_.insert(ev.from);
        actions.push_back(
            log_entry(ev.t, "'" + ev.from + "' stopped co-host messages; pending messages dropped"));
        return actions;
    }

    actions.push_back(log_entry(ev.t, "chat from '" + ev.from + "' ignored: no open session"));
    return actions;
}

std::vector<OutputAction> Engine::on_tick(const TickEvent& ev) {
    require_started();
    const millis_t t_ms = ev.t * 1000;
    if (phase_ == EnginePhase::Ended) {
        return {log_entry(t_ms, "tick after meeting end ignored")};
    }
    require_clock(t_ms);
    ledger_.sample_tick(ev.t);
    last_t_ms_ = t_ms;

    std::vector<OutputAction> actions;
    if (!asked_) {
        if (auto reason = evaluate_trigger(ledger_, ev.t, config_, asked_)) {
            asked_ = true;
            trigger_ = TriggerRecord{ev.t, *reason};
            under_at_trigger_ = under_participators(ledger_);
            over_at_trigger_ = over_participators(ledger_);
            phase_ = EnginePhase::Asking;
            if (under_at_trigger_.empty()) {
                actions.push_back(
                    log_entry(t_ms, "ask: no eligible under-participators; no sessions opened"));
            } else {
                std::vector<OutgoingText> outgoing;
                sessions_ = open_sessions(under_at_trigger_, outgoing);
                for (auto& out : outgoing) {
                    actions.push_back(dm(t_ms, out.to, std::move(out.text)));
                }
            }
        }
    }

    for (auto& msg : refresh_due(states_, ledger_, ev.t, config_)) {
        enqueue(std::move(msg), t_ms, actions);
    }
    for (const auto& delivered : gate_and_deliver(messages_, ledger_, t_ms, config_)) {
        actions.push_back(dm(t_ms, delivered.to, delivered.text, delivered.chart));
    }
    return actions;
}

std::vector<OutputAction> Engine::on_end(const MeetingEnd& ev) {
    require_started();
    if (phase_ == EnginePhase::Ended) {
        return {log_entry(ev.t, "meeting already ended")};
    }
    require_clock(ev.t);
    last_t_ms_ = ev.t;
    ended_t_ = ev.t;
    phase_ = EnginePhase::Ended;

    int delivered = 0;
    int dropped = 0;
    for (auto& msg : messages_) {
        if (msg.delivered_t) {
            ++delivered;
        } else if (!msg.dropped) {
            msg.dropped = true;
            ++dropped;
        } else {
            ++dropped;
        }
    }
    for (auto& session : sessions_) {
        if (session.stage != AskStage::Done) session.stage = AskStage::Silent;
    }
    return {log_entry(ev.t, "meeting ended: " + std::to_string(delivered) +
                                " queued messages delivered, " + std::to_string(dropped) +
                                " dropped")};
}

MeetingReport Engine::finalize() const {
    if (phase_ != EnginePhase::Ended) {
        throw MeetingError(MeetingError::Kind::validation, "finalize before meeting end");
    }
    MeetingReport report;
    report.config = config_;
    report.roster = ledger_.roster();
    for (const auto& entry : ledger_.roster()) {
        report.cumulative.emplace_back(entry.id, ledger_.cumulative(entry.id));
    }
    report.trigger = trigger_;
    report.under_at_trigger = under_at_trigger_;
    report.over_at_trigger = over_at_trigger_;
    report.over_at_activation = over_at_activation_;
    report.sessions = sessions_;
    report.activation = aggregate_sessions();
    report.interventions = records_;
    for (size_t i = 0; i < report.interventions.size(); ++i) {
        report.interventions[i].stopped = states_[i].stopped;
    }
    report.messages = messages_;
    report.elapsed = ledger_.elapsed();
    report.ended_t = ended_t_;
    return report;
}

std::pair<Engine, std::vector<OutputAction>> init(const MeetingConfig& config, const Roster& roster) {
    Engine engine;
    auto actions = engine.step(MeetingStart{config, roster, 0});
    return {std::move(engine), std::move(actions)};
}

}  // namespace cohost
