#pragma once

#include <map>
#include <string>
#include <vector>

#include "cohost/engine.hpp"

namespace cohost::test {

inline Roster make_roster(const ParticipantId& host, const std::vector<ParticipantId>& members,
                          bool with_cohost = false) {
    Roster roster;
    roster.push_back(RosterEntry{host, Role::Host});
    for (const auto& m : members) roster.push_back(RosterEntry{m, Role::Member});
    if (with_cohost) roster.push_back(RosterEntry{"cohost", Role::CoHost});
    return roster;
}

// Builds a ledger where each participant has exactly the given cumulative
// seconds: everyone speaks concurrently from t=0 and falls silent once their
// quota of ticks is reached.
inline SpeakingLedger ledger_with(const Roster& roster,
                                  const std::map<ParticipantId, seconds_t>& times,
                                  seconds_t elapsed = -1) {
    SpeakingLedger ledger(roster);
    seconds_t max_time = 0;
    for (const auto& [id, c] : times) max_time = std::max(max_time, c);
    if (elapsed < 0) elapsed = max_time;

    for (const auto& [id, c] : times) {
        if (c > 0) ledger.ingest_voice(VoiceEvent{id, true, 0});
    }
    for (seconds_t t = 1; t <= elapsed; ++t) {
        for (const auto& [id, c] : times) {
            if (c == t - 1) ledger.ingest_voice(VoiceEvent{id, false, t * 1000 - 500});
        }
        ledger.sample_tick(t);
    }
    return ledger;
}

// Independent oracle: the number of tick instants 1..elapsed (in seconds)
// that fall inside any [start_ms, end_ms) interval of the participant.
inline seconds_t count_ticks_in(const std::vector<std::pair<millis_t, millis_t>>& intervals,
                                seconds_t elapsed) {
    seconds_t count = 0;
    for (seconds_t t = 1; t <= elapsed; ++t) {
        const millis_t instant = t * 1000;
        for (const auto& [start, end] : intervals) {
            if (start <= instant && instant < end) {
                ++count;
                break;
            }
        }
    }
    return count;
}

}  // namespace cohost::test
