#include "cohost/meeting_model.hpp"

#include <algorithm>
#include <set>

namespace cohost {

void MeetingConfig::validate() const {
    auto fail = [](const std::string& msg) { throw MeetingError(MeetingError::Kind::config, msg); };
    if (scheduled_duration <= 0) fail("scheduled_duration must be > 0");
    if (ratio_min_elapsed <= 0) fail("ratio_min_elapsed must be > 0");
    if (refresh_interval <= 0) fail("refresh_interval must be > 0");
    if (mic_quiet_gate <= 0) fail("mic_quiet_gate must be > 0");
    if (!(ratio_high > 1.0)) fail("ratio_high must be > 1");
    if (!(ratio_low > 0.0 && ratio_low < 1.0)) fail("ratio_low must be in (0, 1)");
    if (!(half_time_fraction > 0.0 && half_time_fraction < 1.0)) fail("half_time_fraction must be in (0, 1)");
    if (tick != 1) fail("tick must be 1 second");
}

void validate_roster(const Roster& roster) {
    auto fail = [](const std::string& msg) { throw MeetingError(MeetingError::Kind::roster, msg); };
    std::set<ParticipantId> seen;
    int hosts = 0;
    int cohosts = 0;
    for (const auto& entry : roster) {
        if (entry.id.empty()) fail("participant id must be non-empty");
        if (!seen.insert(entry.id).second) fail("duplicate participant id '" + entry.id + "'");
        if (entry.role == Role::Host) ++hosts;
        if (entry.role == Role::CoHost) ++cohosts;
    }
    if (hosts != 1) fail("roster must contain exactly one host");
    if (cohosts > 1) fail("roster must contain at most one co-host");
}

SpeakingLedger::SpeakingLedger(Roster roster) : roster_(std::move(roster)) {
    validate_roster(roster_);
    for (const auto& entry : roster_) {
        stats_[entry.id] = Stats{};
        roles_[entry.id] = entry.role;
        if (entry.role == Role::Host) host_ = entry.id;
    }
}

const SpeakingLedger::Stats& SpeakingLedger::stats_for(const ParticipantId& p) const {
    auto it = stats_.find(p);
    if (it == stats_.end()) {
        throw MeetingError(MeetingError::Kind::roster, "unknown participant '" + p + "'");
    }
    return it->second;
}

void SpeakingLedger::ingest_voice(const VoiceEvent& ev) {
    auto it = stats_.find(ev.participant);
    if (it == stats_.end()) {
        throw MeetingError(MeetingError::Kind::roster, "unknown participant '" + ev.participant + "'");
    }
    if (roles_.at(ev.participant) == Role::CoHost) {
        throw MeetingError(MeetingError::Kind::roster, "co-host '" + ev.participant + "' has no voice channel");
    }
    if (ev.t < last_event_ms_) {
        throw MeetingError(MeetingError::Kind::clock, "voice event out of order");
    }
    last_event_ms_ = ev.t;
    Stats& s = it->second;
    if (s.active == ev.active) {
        return;  // duplicate state, idempotent
    }
    s.active = ev.active;
    if (ev.active) {
        s.ever_active = true;
    } else {
        s.last_active_end = ev.t;
    }
}

void SpeakingLedger::sample_tick(seconds_t t) {
    if (t != elapsed_ + 1) {
        throw MeetingError(MeetingError::Kind::clock, "non-consecutive tick " + std::to_string(t));
    }
    if (t * 1000 < last_event_ms_) {
        throw MeetingError(MeetingError::Kind::clock, "tick behind last event");
    }
    last_event_ms_ = t * 1000;
    for (auto& [id, s] : stats_) {
        if (s.active) s.cumulative += 1;
    }
    elapsed_ = t;
}

seconds_t SpeakingLedger::cumulative(const ParticipantId& p) const {
    return stats_for(p).cumulative;
}

bool SpeakingLedger::currently_active(const ParticipantId& p) const {
    return stats_for(p).active;
}

double SpeakingLedger::average_nonhost() const {
    seconds_t sum = 0;
    int n = 0;
    for (const auto& entry : roster_) {
        if (entry.role != Role::Member) continue;
        sum += stats_.at(entry.id).cumulative;
        ++n;
    }
    if (n == 0) {
        throw MeetingError(MeetingError::Kind::config, "no non-host participants to average over");
    }
    return static_cast<double>(sum) / n;
}

millis_t SpeakingLedger::quiet_duration(const ParticipantId& p, millis_t t) const {
    const Stats& s = stats_for(p);
    if (s.active) return 0;
    if (!s.ever_active) return t;
    return t >= s.last_active_end ? t - s.last_active_end : 0;
}

Role SpeakingLedger::role_of(const ParticipantId& p) const {
    auto it = roles_.find(p);
    if (it == roles_.end()) {
        throw MeetingError(MeetingError::Kind::roster, "unknown participant '" + p + "'");
    }
    return it->second;
}

bool SpeakingLedger::in_roster(const ParticipantId& p) const {
    return roles_.count(p) != 0;
}

std::vector<ParticipantId> SpeakingLedger::member_ids() const {
    std::vector<ParticipantId> out;
    for (const auto& entry : roster_) {
        if (entry.role == Role::Member) out.push_back(entry.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cohost
