#include "cohost/messages.hpp"

namespace cohost::messages {

namespace {

constexpr std::string_view kYesNoHint = "Please reply \"yes\" or \"no\".";
constexpr std::string_view kFeedbackHint = "You can type your feedback, or reply \"no\".";

std::string hint_for(int index) {
    return std::string(index == 3 ? kFeedbackHint : kYesNoHint);
}

}  // namespace

std::string_view question_text(int index) {
    switch (index) {
        case 1: return kQuestion1;
        case 2: return kQuestion2;
        default: return kQuestion3;
    }
}

std::string intro(const std::string& host) {
    return "Hello everyone! I'm the virtual co-host for this meeting. Your host is " + host +
           ". I'll be observing conversational dynamics and may check in with some of you during "
           "the meeting.";
}

std::string question_message(int index) {
    std::string lead;
    if (index == 1) {
        lead = "Hi! I'm checking in privately about how this meeting is going for you.\n\n";
    }
    return lead + std::string(question_text(index)) + "\n" + hint_for(index);
}

std::string did_not_understand(int index) {
    return "Sorry, I didn't understand that.\n\n" + std::string(question_text(index)) + "\n" +
           hint_for(index);
}

std::string ack_all_clear() {
    return "Thanks for answering. Glad the meeting is working well for you. I'll leave you to it.";
}

std::string ack_will_intervene() {
    return "Thanks for answering. I will intervene to help make the discussion more inclusive. "
           "You don't need to do anything else.";
}

std::string host_intervention(int reason) {
    std::string problem;
    switch (reason) {
        case 1:
            problem = "Some participants have indicated they have not felt able to express "
                      "themselves in this meeting.";
            break;
        case 2:
            problem = "Some participants have indicated they have felt inhibited by the behavior "
                      "of other meeting members.";
            break;
        default:
            problem = "Some participants have indicated they have not felt able to express "
                      "themselves and have felt inhibited by the behavior of other meeting "
                      "members.";
            break;
    }
    return problem +
           "\n\nRecommended strategies for facilitating more inclusively:\n"
           "- Invite quieter participants into the conversation by name.\n"
           "- Pause after each topic to make room for questions.\n"
           "- Ask frequent speakers to hold follow-ups until everyone has had a turn.\n\n"
           "The attached chart shows each member's speaking time so far. Reply \"stop\" to stop "
           "receiving these updates.";
}

std::string over_participator_intervention() {
    return "You have been one of the most active speakers in this meeting so far. Please consider "
           "letting others contribute more. Some suggestions:\n"
           "- Pause before adding follow-up points.\n"
           "- Invite someone who has not spoken recently to weigh in.\n"
           "- Keep replies brief so others can respond.\n\n"
           "The attached chart compares your speaking time with the average of the other "
           "participants. Reply \"stop\" to stop receiving these updates.";
}

std::string host_refresh() {
    return "Updated speaking-time overview for your meeting.";
}

std::string over_participator_refresh() {
    return "Updated comparison of your speaking time with the rest of the group.";
}

std::string anonymous_feedback(const std::string& note) {
    return "Anonymous feedback from a meeting participant: \"" + note + "\"";
}

}  // namespace cohost::messages
