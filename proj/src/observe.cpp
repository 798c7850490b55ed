#include "cohost/observe.hpp"

#include <algorithm>

namespace cohost {

std::optional<TriggerReason> evaluate_trigger(const SpeakingLedger& ledger, seconds_t t,
                                              const MeetingConfig& config, bool already_asked) {
    if (already_asked) return std::nullopt;

    const auto members = ledger.member_ids();
    if (!members.empty() && t >= config.ratio_min_elapsed) {
        seconds_t total = 0;
        for (const auto& m : members) total += ledger.cumulative(m);
        const auto n = static_cast<double>(members.size());
        for (const auto& m : members) {
            const auto cum = static_cast<double>(ledger.cumulative(m));
            const auto scaled = cum * n;
            if (scaled > config.ratio_high * static_cast<double>(total) ||
                scaled < config.ratio_low * static_cast<double>(total)) {
                TriggerReason r;
                r.kind = TriggerKind::RatioImbalance;
                r.participant = m;
                r.ratio = total > 0 ? scaled / static_cast<double>(total) : 0.0;
                return r;
            }
        }
    }
    if (static_cast<double>(t) >= config.half_time_fraction * static_cast<double>(config.scheduled_duration)) {
        return TriggerReason{TriggerKind::HalfTime, {}, 0.0};
    }
    return std::nullopt;
}

std::vector<ParticipantId> under_participators(const SpeakingLedger& ledger) {
    const auto members = ledger.member_ids();
    if (members.empty()) return {};

    seconds_t total = 0;
    for (const auto& m : members) total += ledger.cumulative(m);
    const auto n = static_cast<double>(members.size());

    std::vector<ParticipantId> under;
    for (const auto& m : members) {
        if (static_cast<double>(ledger.cumulative(m)) * n < static_cast<double>(total)) {
            under.push_back(m);
        }
    }
    if (under.empty()) {
        // All member times equal the average; fall back to the minimum speakers.
        seconds_t min_cum = ledger.cumulative(members.front());
        for (const auto& m : members) min_cum = std::min(min_cum, ledger.cumulative(m));
        for (const auto& m : members) {
            if (ledger.cumulative(m) == min_cum) under.push_back(m);
        }
    }
    std::stable_sort(under.begin(), under.end(), [&](const auto& a, const auto& b) {
        const auto ca = ledger.cumulative(a);
        const auto cb = ledger.cumulative(b);
        return ca != cb ? ca < cb : a < b;
    });
    return under;
}

std::vector<ParticipantId> over_participators(const SpeakingLedger& ledger) {
    const auto members = ledger.member_ids();
    if (members.empty()) return {};

    ParticipantId top = members.front();
    seconds_t total = 0;
    for (const auto& m : members) {
        total += ledger.cumulative(m);
        if (ledger.cumulative(m) > ledger.cumulative(top)) top = m;  // id-order tie-break via scan order
    }
    std::vector<ParticipantId> over{top};

    const auto n = static_cast<double>(members.size());
    std::vector<ParticipantId> extra;
    for (const auto& m : members) {
        if (m == top) continue;
        if (static_cast<double>(ledger.cumulative(m)) * n > 2.0 * static_cast<double>(total)) {
            extra.push_back(m);
        }
    }
    std::stable_sort(extra.begin(), extra.end(), [&](const auto& a, const auto& b) {
        const auto ca = ledger.cumulative(a);
        const auto cb = ledger.cumulative(b);
        return ca != cb ? ca > cb : a < b;
    });
    over.insert(over.end(), extra.begin(), extra.end());
    return over;
}

}  // namespace cohost
