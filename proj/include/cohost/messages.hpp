#pragma once

#include <string>
#include <string_view>

namespace cohost::messages {

// Every outgoing text is a fixed template so two runs over the same event
// stream produce byte-identical action logs.

inline constexpr std::string_view kQuestion1 =
    "Have you felt able to express yourself, put forward your own ideas, and contradict others "
    "when necessary?";
inline constexpr std::string_view kQuestion2 =
    "Have you felt inhibited from participating in the discussion because of the behavior of "
    "other meeting members (other than the host)?";
inline constexpr std::string_view kQuestion3 =
    "Is there any feedback or advice you'd like me to anonymously pass on to the host?";

std::string_view question_text(int index);  // 1..3

std::string intro(const std::string& host);

// Ask-phase dialogue turns. question_message(1) is the check-in opener that
// carries question 1; 2 and 3 follow the previous answer.
std::string question_message(int index);
std::string did_not_understand(int index);
std::string ack_all_clear();
std::string ack_will_intervene();

// Intervention bodies. Reason selects the problem statement of the host
// message: 1 = expression concerns, 2 = inhibition concerns, 3 = both.
std::string host_intervention(int reason);
std::string over_participator_intervention();
std::string host_refresh();
std::string over_participator_refresh();
std::string anonymous_feedback(const std::string& note);

inline constexpr std::string_view kStopCommand = "stop";

}  // namespace cohost::messages
