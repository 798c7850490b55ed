#pragma once

#include <optional>
#include <vector>

#include "cohost/meeting_model.hpp"

namespace cohost {

enum class TriggerKind { RatioImbalance, HalfTime };

struct TriggerReason {
    TriggerKind kind = TriggerKind::HalfTime;
    // Set for RatioImbalance only.
    ParticipantId participant;
    double ratio = 0.0;  // cumulative * member_count / member_total

    bool operator==(const TriggerReason&) const = default;
};

// Decide whether to enter the Ask phase at elapsed time t.
//
// Rule order: once already_asked, never again. The ratio rule applies from
// t >= ratio_min_elapsed: members are scanned in id order and the first one
// whose cumulative time is strictly more than ratio_high times the member
// average, or strictly less than ratio_low times it, fires (the high bound
// is checked first). Otherwise the half-time rule fires once
// t >= half_time_fraction * scheduled_duration. Comparisons use
// cum * n  vs  ratio * total to avoid dividing.
std::optional<TriggerReason> evaluate_trigger(const SpeakingLedger& ledger, seconds_t t,
                                              const MeetingConfig& config, bool already_asked);

// Members strictly below the member average, ascending by cumulative time,
// ties by id. When nobody is below average (exactly equal times) falls back
// to the members with minimal cumulative time so the Ask phase always has a
// target.
std::vector<ParticipantId> under_participators(const SpeakingLedger& ledger);

// The member with maximum cumulative time (ties by id), followed by any
// other member strictly above twice the member average, descending by
// cumulative time, ties by id.
std::vector<ParticipantId> over_participators(const SpeakingLedger& ledger);

}  // namespace cohost
