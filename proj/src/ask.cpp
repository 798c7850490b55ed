#include "cohost/ask.hpp"

#include <algorithm>
#include <cctype>

#include "cohost/messages.hpp"

namespace cohost {

namespace {

int question_index(AskStage stage) {
    switch (stage) {
        case AskStage::AwaitingQ1: return 1;
        case AskStage::AwaitingQ2: return 2;
        case AskStage::AwaitingQ3: return 3;
        default: return 0;
    }
}

HostReason merge_reason(HostReason a, HostReason b) {
    if (a == HostReason::None) return b;
    if (b == HostReason::None) return a;
    if (a == b) return a;
    return HostReason::Both;
}

}  // namespace

std::string trim(std::string_view text) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    return std::string(text.substr(begin, end - begin));
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<Answer> parse_reply(AskStage stage, std::string_view text) {
    const int index = question_index(stage);
    if (index == 0) return std::nullopt;

    const std::string trimmed = trim(text);
    if (trimmed.empty()) return std::nullopt;
    const std::string lower = to_lower(trimmed);

    if (lower == "no" || lower == "n") return Answer{Answer::Kind::No, {}};
    if (index == 3) {
        // Anything else counts as feedback for the host.
        return Answer{Answer::Kind::FreeText, trimmed};
    }
    if (lower == "yes" || lower == "y") return Answer{Answer::Kind::Yes, {}};
    return std::nullopt;
}

std::vector<DialogueSession> open_sessions(const std::vector<ParticipantId>& targets,
                                           std::vector<OutgoingText>& outgoing) {
    std::vector<DialogueSession> sessions;
    sessions.reserve(targets.size());
    for (const auto& target : targets) {
        sessions.push_back(DialogueSession{target, AskStage::AwaitingQ1, {}});
        outgoing.push_back(OutgoingText{target, messages::question_message(1)});
    }
    return sessions;
}

std::vector<OutgoingText> advance(DialogueSession& session, const std::optional<Answer>& reply) {
    const int index = question_index(session.stage);
    if (index == 0) {
        throw MeetingError(MeetingError::Kind::validation,
                           "advance on closed session for '" + session.participant + "'");
    }
    if (!reply) {
        return {OutgoingText{session.participant, messages::did_not_understand(index)}};
    }

    session.answers[index] = *reply;
    if (index < 3) {
        session.stage = index == 1 ? AskStage::AwaitingQ2 : AskStage::AwaitingQ3;
        return {OutgoingText{session.participant, messages::question_message(index + 1)}};
    }

    session.stage = AskStage::Done;
    const auto activation = session_activation(session);
    const auto& ack =
        activation.any() ? messages::ack_will_intervene() : messages::ack_all_clear();
    return {OutgoingText{session.participant, ack}};
}

InterventionActivation session_activation(const DialogueSession& session) {
    InterventionActivation activation;
    if (auto it = session.answers.find(1);
        it != session.answers.end() && it->second.kind == Answer::Kind::No) {
        activation.host_intervention = true;
        activation.host_reason = HostReason::Expression;
    }
    if (auto it = session.answers.find(2);
        it != session.answers.end() && it->second.kind == Answer::Kind::Yes) {
        activation.host_intervention = true;
        activation.host_reason = merge_reason(activation.host_reason, HostReason::Inhibition);
        activation.over_participator_intervention = true;
    }
    if (auto it = session.answers.find(3);
        it != session.answers.end() && it->second.kind == Answer::Kind::FreeText) {
        activation.feedback_notes.push_back(it->second.text);
    }
    return activation;
}

InterventionActivation aggregate(const std::vector<InterventionActivation>& partials) {
    InterventionActivation total;
    for (const auto& partial : partials) {
        total.host_intervention = total.host_intervention || partial.host_intervention;
        total.host_reason = merge_reason(total.host_reason, partial.host_reason);
        total.over_participator_intervention =
            total.over_participator_intervention || partial.over_participator_intervention;
        total.feedback_notes.insert(total.feedback_notes.end(), partial.feedback_notes.begin(),
                                    partial.feedback_notes.end());
    }
    return total;
}

}  // namespace cohost
