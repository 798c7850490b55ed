#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cohost/meeting_model.hpp"

namespace cohost {

enum class AskStage { AwaitingQ1, AwaitingQ2, AwaitingQ3, Done, Silent };

struct Answer {
    enum class Kind { Yes, No, FreeText };

    Kind kind = Kind::No;
    std::string text;  // FreeText payload

    bool operator==(const Answer&) const = default;
};

// One check-in dialogue with one under-participator.
struct DialogueSession {
    ParticipantId participant;
    AskStage stage = AskStage::AwaitingQ1;
    std::map<int, Answer> answers;  // question index -> recorded answer
};

enum class HostReason { None, Expression, Inhibition, Both };

struct InterventionActivation {
    bool host_intervention = false;
    HostReason host_reason = HostReason::None;
    bool over_participator_intervention = false;
    std::vector<std::string> feedback_notes;

    bool any() const { return host_intervention || over_participator_intervention; }
    bool operator==(const InterventionActivation&) const = default;
};

// A dialogue message scheduled for immediate delivery (questions are easy to
// ignore, so they skip the microphone gate).
struct OutgoingText {
    ParticipantId to;
    std::string text;

    bool operator==(const OutgoingText&) const = default;
};

// nullopt means unsupported input: the caller re-states the question.
// Q1/Q2 accept yes/y/no/n after trimming and lowercasing; Q3 treats exact
// no/n as declining and any other non-empty text as free-form feedback.
std::optional<Answer> parse_reply(AskStage stage, std::string_view text);

// One session per target, each opened with the question-1 message.
std::vector<DialogueSession> open_sessions(const std::vector<ParticipantId>& targets,
                                           std::vector<OutgoingText>& outgoing);

// Folds one parsed reply into the session. Unsupported input never advances
// the stage; a valid answer advances and emits the next question or, after
// question 3, a closing acknowledgment.
std::vector<OutgoingText> advance(DialogueSession& session, const std::optional<Answer>& reply);

// The partial activation a single session contributes.
InterventionActivation session_activation(const DialogueSession& session);

// OR across sessions; any single negative response activates the
// corresponding intervention. Feedback notes concatenate in session order.
InterventionActivation aggregate(const std::vector<InterventionActivation>& partials);

std::string trim(std::string_view text);
std::string to_lower(std::string_view text);

}  // namespace cohost
