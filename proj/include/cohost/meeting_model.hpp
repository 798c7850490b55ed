#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cohost {

using millis_t = std::int64_t;
using seconds_t = std::int64_t;

// Opaque participant token. Lexicographic order on the string is the
// canonical tie-break order everywhere in the engine.
using ParticipantId = std::string;

enum class Role { Host, Member, CoHost };

struct RosterEntry {
    ParticipantId id;
    Role role = Role::Member;

    bool operator==(const RosterEntry&) const = default;
};

using Roster = std::vector<RosterEntry>;

struct MeetingError : std::runtime_error {
    enum class Kind { roster, clock, config, validation };

    Kind kind;
    MeetingError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct MeetingConfig {
    seconds_t scheduled_duration = 1800;
    seconds_t ratio_min_elapsed = 480;
    double ratio_high = 2.0;
    double ratio_low = 0.5;
    double half_time_fraction = 0.5;
    seconds_t refresh_interval = 240;
    seconds_t mic_quiet_gate = 5;
    seconds_t tick = 1;

    void validate() const;  // throws MeetingError{config}

    bool operator==(const MeetingConfig&) const = default;
};

struct VoiceEvent {
    ParticipantId participant;
    bool active = false;
    millis_t t = 0;

    bool operator==(const VoiceEvent&) const = default;
};

struct ChatEvent {
    ParticipantId from;
    std::string text;
    millis_t t = 0;

    bool operator==(const ChatEvent&) const = default;
};

// Throws MeetingError{roster} unless the roster has unique non-empty ids,
// exactly one host and at most one co-host.
void validate_roster(const Roster& roster);

// Per-participant cumulative speaking time, accrued at 1-second ticks.
// A participant is "speaking at a tick" when the latest voice event at or
// before the tick instant says active (sample-and-hold).
class SpeakingLedger {
public:
    SpeakingLedger() = default;
    explicit SpeakingLedger(Roster roster);

    // Updates a participant's voice-activity state. Duplicate states are
    // idempotent; a transition to inactive records the end instant.
    void ingest_voice(const VoiceEvent& ev);

    // Advances the clock by one tick; every participant active at the tick
    // instant gains one second. t must equal elapsed()+1.
    void sample_tick(seconds_t t);

    seconds_t cumulative(const ParticipantId& p) const;
    bool currently_active(const ParticipantId& p) const;

    // Arithmetic mean of cumulative speaking time over members (host and
    // co-host excluded). Throws MeetingError{config} when there are none.
    double average_nonhost() const;

    // Milliseconds since p last stopped speaking: 0 while active, t if p
    // never spoke.
    millis_t quiet_duration(const ParticipantId& p, millis_t t) const;

    seconds_t elapsed() const { return elapsed_; }
    const Roster& roster() const { return roster_; }
    const ParticipantId& host() const { return host_; }
    Role role_of(const ParticipantId& p) const;
    bool in_roster(const ParticipantId& p) const;

    // Member (non-host, non-co-host) ids in lexicographic order.
    std::vector<ParticipantId> member_ids() const;

private:
    struct Stats {
        seconds_t cumulative = 0;
        bool active = false;
        millis_t last_active_end = 0;
        bool ever_active = false;
    };

    const Stats& stats_for(const ParticipantId& p) const;

    Roster roster_;
    std::map<ParticipantId, Stats> stats_;
    std::map<ParticipantId, Role> roles_;
    ParticipantId host_;
    seconds_t elapsed_ = 0;
    millis_t last_event_ms_ = 0;
};

}  // namespace cohost
