#include "cohost/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <queue>
#include <tuple>

#include "cohost/messages.hpp"
#include "cohost/wire.hpp"

namespace cohost::sim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
    throw MeetingError(MeetingError::Kind::validation, msg);
}

std::string join_ids(const std::vector<ParticipantId>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out += ",";
        out += id;
    }
    return out.empty() ? "(none)" : out;
}

bool rule_matches(const ReplyRule& rule, const std::string& text) {
    if (rule.match_question &&
        text.find(messages::question_text(*rule.match_question)) == std::string::npos) {
        return false;
    }
    if (rule.match_text && text.find(*rule.match_text) == std::string::npos) {
        return false;
    }
    return true;
}

std::vector<Interval> normalize_intervals(std::vector<Interval> intervals) {
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    std::vector<Interval> merged;
    for (const auto& iv : intervals) {
        if (!merged.empty() && iv.start <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, iv.end);
        } else {
            merged.push_back(iv);
        }
    }
    return merged;
}

ordered_json trigger_to_json(const std::optional<TriggerRecord>& trigger) {
    if (!trigger) return nullptr;
    ordered_json j;
    j["t_s"] = trigger->t;
    if (trigger->reason.kind == TriggerKind::RatioImbalance) {
        j["reason"] = "ratio_imbalance";
        j["participant"] = trigger->reason.participant;
        j["ratio"] = trigger->reason.ratio;
    } else {
        j["reason"] = "half_time";
    }
    return j;
}

std::optional<TriggerRecord> trigger_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    TriggerRecord record;
    record.t = j.at("t_s").get<seconds_t>();
    const auto reason = j.at("reason").get<std::string>();
    if (reason == "ratio_imbalance") {
        record.reason.kind = TriggerKind::RatioImbalance;
        record.reason.participant = j.at("participant").get<std::string>();
        record.reason.ratio = j.at("ratio").get<double>();
    } else if (reason == "half_time") {
        record.reason.kind = TriggerKind::HalfTime;
    } else {
        fail("unknown trigger reason '" + reason + "'");
    }
    return record;
}

}  // namespace

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_exponential(double mean) {
    return -mean * std::log(1.0 - next_unit());
}

std::size_t SplitMix64::pick_weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_unit() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        u -= weights[i];
        if (u < 0.0) return i;
    }
    return weights.size() - 1;
}

Roster Scenario::roster() const {
    Roster roster;
    roster.reserve(participants.size());
    for (const auto& p : participants) roster.push_back(RosterEntry{p.id, p.role});
    return roster;
}

void Scenario::validate() const {
    if (version != 1) fail("unsupported scenario version " + std::to_string(version));
    config.validate();
    validate_roster(roster());

    const millis_t duration_ms = config.scheduled_duration * 1000;
    for (const auto& p : participants) {
        const std::string who = "participant '" + p.id + "'";
        if (!p.script.intervals.empty() && p.script.stochastic) {
            fail(who + " has both explicit intervals and a stochastic script");
        }
        if (p.role == Role::CoHost &&
            (!p.script.intervals.empty() || p.script.stochastic)) {
            fail(who + " is the co-host and cannot have a speak script");
        }
        auto sorted = p.script.intervals;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Interval& a, const Interval& b) { return a.start < b.start; });
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i].start < 0 || sorted[i].start >= sorted[i].end ||
                sorted[i].end > duration_ms) {
                fail(who + " has an interval outside [0, scheduled_duration]");
            }
            if (i > 0 && sorted[i].start < sorted[i - 1].end) {
                fail(who + " has overlapping intervals");
            }
        }
        if (p.script.stochastic) {
            const auto& s = *p.script.stochastic;
            if (s.turn_rate_per_min < 0) fail(who + ": turn_rate_per_min must be >= 0");
            if (!(s.turn_length_mean_s > 0)) fail(who + ": turn_length_mean_s must be > 0");
            if (s.talkativeness < 0) fail(who + ": talkativeness must be >= 0");
        }
        for (const auto& rule : p.reply_policy.rules) {
            if (trim(rule.reply).empty()) fail(who + " has a reply rule with empty reply text");
            if (rule.delay_ms < 0) fail(who + " has a reply rule with negative delay");
            if (rule.match_question && (*rule.match_question < 1 || *rule.match_question > 3)) {
                fail(who + " has a reply rule with match_question outside 1..3");
            }
        }
    }
}

std::map<ParticipantId, std::vector<Interval>> expand_scripts(const Scenario& scenario) {
    std::map<ParticipantId, std::vector<Interval>> out;
    for (const auto& p : scenario.participants) out[p.id] = {};

    std::vector<const ScenarioParticipant*> stochastic;
    for (const auto& p : scenario.participants) {
        if (!p.script.intervals.empty()) {
            out[p.id] = p.script.intervals;
        } else if (p.script.stochastic) {
            stochastic.push_back(&p);
        }
    }

    if (!stochastic.empty()) {
        double total_rate = 0.0;
        double total_weight = 0.0;
        std::vector<double> weights;
        for (const auto* p : stochastic) {
            total_rate += p->script.stochastic->turn_rate_per_min;
            weights.push_back(p->script.stochastic->talkativeness);
            total_weight += weights.back();
        }
        if (total_rate > 0.0 && total_weight > 0.0) {
            SplitMix64 rng(scenario.seed);
            const double mean_gap_s = 60.0 / total_rate;
            const millis_t duration_ms = scenario.config.scheduled_duration * 1000;
            millis_t cursor = 0;
            while (true) {
                cursor += std::llround(rng.next_exponential(mean_gap_s) * 1000.0);
                if (cursor >= duration_ms) break;
                const std::size_t idx = rng.pick_weighted(weights);
                const double mean_len = stochastic[idx]->script.stochastic->turn_length_mean_s;
                const millis_t len_ms =
                    std::max<millis_t>(500, std::llround(rng.next_exponential(mean_len) * 1000.0));
                const millis_t end = std::min(cursor + len_ms, duration_ms);
                out[stochastic[idx]->id].push_back(Interval{cursor, end});
                cursor = end;
            }
        }
    }

    for (auto& [id, intervals] : out) intervals = normalize_intervals(std::move(intervals));
    return out;
}

SimResult run(const Scenario& scenario) {
    scenario.validate();
    const auto intervals = expand_scripts(scenario);
    const auto& config = scenario.config;
    const millis_t duration_ms = config.scheduled_duration * 1000;

    // Event ranks fix the order of same-instant events: voice transitions
    // land before chats, chats before the tick that samples them.
    struct Pending {
        millis_t t;
        int rank;
        std::uint64_t seq;
        InputEvent ev;
    };
    auto later = [](const Pending& a, const Pending& b) {
        return std::tie(a.t, a.rank, a.seq) > std::tie(b.t, b.rank, b.seq);
    };
    std::priority_queue<Pending, std::vector<Pending>, decltype(later)> heap(later);
    std::uint64_t seq = 0;

    for (const auto& p : scenario.participants) {
        for (const auto& iv : intervals.at(p.id)) {
            heap.push(Pending{iv.start, 0, seq++, VoiceEvent{p.id, true, iv.start}});
            heap.push(Pending{iv.end, 0, seq++, VoiceEvent{p.id, false, iv.end}});
        }
    }
    for (seconds_t t = 1; t <= config.scheduled_duration; ++t) {
        heap.push(Pending{t * 1000, 2, seq++, TickEvent{t}});
    }
    heap.push(Pending{duration_ms, 3, seq++, MeetingEnd{duration_ms}});

    SimResult result;
    for (const auto& p : scenario.participants) {
        if (p.role != Role::CoHost) result.table_ids.push_back(p.id);
    }
    std::sort(result.table_ids.begin(), result.table_ids.end());

    std::map<ParticipantId, const ReplyPolicy*> policies;
    std::map<ParticipantId, std::vector<bool>> rule_used;
    for (const auto& p : scenario.participants) {
        policies[p.id] = &p.reply_policy;
        rule_used[p.id].assign(p.reply_policy.rules.size(), false);
    }

    auto schedule_chat = [&](const ParticipantId& from, const std::string& text, millis_t t) {
        if (t <= duration_ms) {
            heap.push(Pending{t, 1, seq++, ChatEvent{from, text, t}});
        }
    };

    Engine engine;
    auto feed = [&](const InputEvent& ev) {
        result.event_lines.push_back(wire::encode_event(ev));
        for (auto& action : engine.step(ev)) {
            result.action_lines.push_back(wire::encode_action(action));
            if (const auto* dm = std::get_if<DirectMessage>(&action.body)) {
                if (auto pit = policies.find(dm->to); pit != policies.end()) {
                    const ReplyPolicy& policy = *pit->second;
                    auto& flags = rule_used[dm->to];
                    bool matched = false;
                    for (std::size_t i = 0; i < policy.rules.size(); ++i) {
                        if (flags[i] || !rule_matches(policy.rules[i], dm->text)) continue;
                        flags[i] = true;
                        matched = true;
                        schedule_chat(dm->to, policy.rules[i].reply,
                                      action.t + policy.rules[i].delay_ms);
                        break;
                    }
                    if (!matched && policy.fallback == ReplyDefault::EchoNo) {
                        schedule_chat(dm->to, "no", action.t + 1000);
                    }
                }
            }
            result.actions.push_back(std::move(action));
        }
    };

    feed(MeetingStart{config, scenario.roster(), 0});
    while (!heap.empty()) {
        Pending pending = heap.top();
        heap.pop();
        feed(pending.ev);
        if (std::holds_alternative<TickEvent>(pending.ev)) {
            std::vector<seconds_t> row;
            row.reserve(result.table_ids.size());
            for (const auto& id : result.table_ids) {
                row.push_back(engine.ledger().cumulative(id));
            }
            result.cumulative_table.push_back(std::move(row));
        }
    }

    result.trigger = engine.trigger();
    result.under_at_trigger = engine.under_at_trigger();
    result.over_at_trigger = engine.over_at_trigger();
    result.report = engine.finalize();
    return result;
}

SimResult replay_lines(const std::vector<std::string>& event_lines) {
    SimResult result;
    result.event_lines = event_lines;

    Engine engine;
    for (const auto& line : event_lines) {
        const InputEvent ev = wire::decode_event(line);
        if (const auto* start = std::get_if<MeetingStart>(&ev)) {
            for (const auto& entry : start->roster) {
                if (entry.role != Role::CoHost) result.table_ids.push_back(entry.id);
            }
            std::sort(result.table_ids.begin(), result.table_ids.end());
        }
        for (auto& action : engine.step(ev)) {
            result.action_lines.push_back(wire::encode_action(action));
            result.actions.push_back(std::move(action));
        }
        if (std::holds_alternative<TickEvent>(ev)) {
            std::vector<seconds_t> row;
            row.reserve(result.table_ids.size());
            for (const auto& id : result.table_ids) {
                row.push_back(engine.ledger().cumulative(id));
            }
            result.cumulative_table.push_back(std::move(row));
        }
    }

    result.trigger = engine.trigger();
    result.under_at_trigger = engine.under_at_trigger();
    result.over_at_trigger = engine.over_at_trigger();
    if (engine.phase() == EnginePhase::Ended) result.report = engine.finalize();
    return result;
}

std::vector<std::vector<seconds_t>> oracle_cumulative(const Scenario& scenario,
                                                      std::vector<ParticipantId>& ids_out) {
    scenario.validate();
    const auto intervals = expand_scripts(scenario);

    ids_out.clear();
    for (const auto& p : scenario.participants) {
        if (p.role != Role::CoHost) ids_out.push_back(p.id);
    }
    std::sort(ids_out.begin(), ids_out.end());

    const seconds_t duration = scenario.config.scheduled_duration;
    std::vector<std::vector<seconds_t>> table(duration, std::vector<seconds_t>(ids_out.size(), 0));

    for (std::size_t col = 0; col < ids_out.size(); ++col) {
        const auto& ivs = intervals.at(ids_out[col]);
        std::size_t idx = 0;
        seconds_t cum = 0;
        for (seconds_t t = 1; t <= duration; ++t) {
            const millis_t instant = t * 1000;
            while (idx < ivs.size() && ivs[idx].end <= instant) ++idx;
            if (idx < ivs.size() && ivs[idx].start <= instant && instant < ivs[idx].end) {
                ++cum;
            }
            table[t - 1][col] = cum;
        }
    }
    return table;
}

OracleReport oracle_report(const Scenario& scenario) {
    OracleReport report;
    report.cumulative = oracle_cumulative(scenario, report.ids);

    std::vector<ParticipantId> members;
    for (const auto& p : scenario.participants) {
        if (p.role == Role::Member) members.push_back(p.id);
    }
    std::sort(members.begin(), members.end());
    std::vector<std::size_t> cols;
    for (const auto& m : members) {
        cols.push_back(static_cast<std::size_t>(
            std::lower_bound(report.ids.begin(), report.ids.end(), m) - report.ids.begin()));
    }

    const auto& config = scenario.config;
    const seconds_t duration = config.scheduled_duration;
    const auto n = static_cast<double>(members.size());

    for (seconds_t t = 1; t <= duration && !report.first_trigger; ++t) {
        const auto& row = report.cumulative[static_cast<std::size_t>(t - 1)];
        if (!members.empty() && t >= config.ratio_min_elapsed) {
            seconds_t total = 0;
            for (auto col : cols) total += row[col];
            for (std::size_t i = 0; i < members.size(); ++i) {
                const double scaled = static_cast<double>(row[cols[i]]) * n;
                if (scaled > config.ratio_high * static_cast<double>(total) ||
                    scaled < config.ratio_low * static_cast<double>(total)) {
                    TriggerReason reason;
                    reason.kind = TriggerKind::RatioImbalance;
                    reason.participant = members[i];
                    reason.ratio = total > 0 ? scaled / static_cast<double>(total) : 0.0;
                    report.first_trigger = TriggerRecord{t, reason};
                    break;
                }
            }
        }
        if (!report.first_trigger &&
            static_cast<double>(t) >= config.half_time_fraction * static_cast<double>(duration)) {
            report.first_trigger = TriggerRecord{t, TriggerReason{TriggerKind::HalfTime, {}, 0.0}};
        }
    }

    if (report.first_trigger && !members.empty()) {
        const auto& row = report.cumulative[static_cast<std::size_t>(report.first_trigger->t - 1)];
        auto cum_of = [&](std::size_t i) { return row[cols[i]]; };

        seconds_t total = 0;
        for (std::size_t i = 0; i < members.size(); ++i) total += cum_of(i);

        std::vector<std::size_t> under;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (static_cast<double>(cum_of(i)) * n < static_cast<double>(total)) under.push_back(i);
        }
        if (under.empty()) {
            seconds_t min_cum = cum_of(0);
            for (std::size_t i = 0; i < members.size(); ++i) min_cum = std::min(min_cum, cum_of(i));
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (cum_of(i) == min_cum) under.push_back(i);
            }
        }
        std::stable_sort(under.begin(), under.end(), [&](std::size_t a, std::size_t b) {
            return cum_of(a) != cum_of(b) ? cum_of(a) < cum_of(b) : members[a] < members[b];
        });
        for (auto i : under) report.under_at_trigger.push_back(members[i]);

        std::size_t top = 0;
        for (std::size_t i = 1; i < members.size(); ++i) {
            if (cum_of(i) > cum_of(top)) top = i;
        }
        report.over_at_trigger.push_back(members[top]);
        std::vector<std::size_t> extra;
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (i == top) continue;
            if (static_cast<double>(cum_of(i)) * n > 2.0 * static_cast<double>(total)) {
                extra.push_back(i);
            }
        }
        std::stable_sort(extra.begin(), extra.end(), [&](std::size_t a, std::size_t b) {
            return cum_of(a) != cum_of(b) ? cum_of(a) > cum_of(b) : members[a] < members[b];
        });
        for (auto i : extra) report.over_at_trigger.push_back(members[i]);
    }
    return report;
}

std::optional<TriggerRecord> oracle_first_trigger(const Scenario& scenario) {
    return oracle_report(scenario).first_trigger;
}

nlohmann::ordered_json oracle_to_json(const OracleReport& report) {
    ordered_json j;
    j["v"] = 1;
    j["ids"] = report.ids;
    j["first_trigger"] = trigger_to_json(report.first_trigger);
    j["under_at_trigger"] = report.under_at_trigger;
    j["over_at_trigger"] = report.over_at_trigger;
    j["cumulative"] = report.cumulative;
    return j;
}

OracleReport oracle_from_json(const nlohmann::json& j) {
    OracleReport report;
    report.ids = j.at("ids").get<std::vector<ParticipantId>>();
    report.first_trigger = trigger_from_json(j.at("first_trigger"));
    report.under_at_trigger = j.at("under_at_trigger").get<std::vector<ParticipantId>>();
    report.over_at_trigger = j.at("over_at_trigger").get<std::vector<ParticipantId>>();
    report.cumulative = j.at("cumulative").get<std::vector<std::vector<seconds_t>>>();
    return report;
}

std::vector<std::string> compare(const SimResult& sim, const OracleReport& oracle) {
    std::vector<std::string> out;

    if (sim.table_ids != oracle.ids) {
        out.push_back("participant ids differ: engine [" + join_ids(sim.table_ids) +
                      "], oracle [" + join_ids(oracle.ids) + "]");
        return out;
    }
    if (sim.cumulative_table.size() != oracle.cumulative.size()) {
        out.push_back("tick count differs: engine " + std::to_string(sim.cumulative_table.size()) +
                      ", oracle " + std::to_string(oracle.cumulative.size()));
    }
    const std::size_t ticks = std::min(sim.cumulative_table.size(), oracle.cumulative.size());
    for (std::size_t t = 0; t < ticks; ++t) {
        bool found = false;
        for (std::size_t i = 0; i < sim.table_ids.size(); ++i) {
            if (sim.cumulative_table[t][i] != oracle.cumulative[t][i]) {
                out.push_back("cumulative divergence at t=" + std::to_string(t + 1) + "s for '" +
                              sim.table_ids[i] + "': engine " +
                              std::to_string(sim.cumulative_table[t][i]) + ", oracle " +
                              std::to_string(oracle.cumulative[t][i]));
                found = true;
                break;
            }
        }
        if (found) break;  // report the first divergence only
    }

    if (sim.trigger.has_value() != oracle.first_trigger.has_value()) {
        out.push_back(std::string("trigger presence differs: engine ") +
                      (sim.trigger ? "fired" : "never fired") + ", oracle " +
                      (oracle.first_trigger ? "fired" : "never fired"));
    } else if (sim.trigger) {
        if (sim.trigger->t != oracle.first_trigger->t) {
            out.push_back("trigger time differs: engine " + std::to_string(sim.trigger->t) +
                          "s, oracle " + std::to_string(oracle.first_trigger->t) + "s");
        }
        if (sim.trigger->reason.kind != oracle.first_trigger->reason.kind) {
            out.push_back("trigger reason differs");
        } else if (sim.trigger->reason.kind == TriggerKind::RatioImbalance &&
                   sim.trigger->reason.participant != oracle.first_trigger->reason.participant) {
            out.push_back("trigger participant differs: engine '" +
                          sim.trigger->reason.participant + "', oracle '" +
                          oracle.first_trigger->reason.participant + "'");
        }
    }

    if (sim.under_at_trigger != oracle.under_at_trigger) {
        out.push_back("under-participators differ: engine [" + join_ids(sim.under_at_trigger) +
                      "], oracle [" + join_ids(oracle.under_at_trigger) + "]");
    }
    if (sim.over_at_trigger != oracle.over_at_trigger) {
        out.push_back("over-participators differ: engine [" + join_ids(sim.over_at_trigger) +
                      "], oracle [" + join_ids(oracle.over_at_trigger) + "]");
    }
    return out;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail("scenario must be a JSON object");
    Scenario scenario;
    scenario.version = j.value("version", 1);
    scenario.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("config")) scenario.config = wire::config_from_json(j.at("config"));

    if (!j.contains("participants") || !j.at("participants").is_array()) {
        fail("scenario needs a participants array");
    }
    for (const auto& pj : j.at("participants")) {
        ScenarioParticipant p;
        p.id = pj.at("id").get<std::string>();
        p.role = wire::role_from_name(pj.value("role", std::string("member")));
        if (pj.contains("script")) {
            const auto& sj = pj.at("script");
            if (sj.contains("intervals")) {
                for (const auto& iv : sj.at("intervals")) {
                    if (!iv.is_array() || iv.size() != 2) {
                        fail("intervals must be [start_ms, end_ms] pairs");
                    }
                    p.script.intervals.push_back(
                        Interval{iv.at(0).get<millis_t>(), iv.at(1).get<millis_t>()});
                }
            }
            if (sj.contains("stochastic")) {
                const auto& st = sj.at("stochastic");
                StochasticScript s;
                s.turn_rate_per_min = st.value("turn_rate_per_min", 2.0);
                s.turn_length_mean_s = st.value("turn_length_mean_s", 8.0);
                s.talkativeness = st.value("talkativeness", 1.0);
                p.script.stochastic = s;
            }
        }
        if (pj.contains("reply_policy")) {
            const auto& rj = pj.at("reply_policy");
            if (rj.contains("rules")) {
                for (const auto& rule_j : rj.at("rules")) {
                    ReplyRule rule;
                    if (rule_j.contains("match_question")) {
                        rule.match_question = rule_j.at("match_question").get<int>();
                    }
                    if (rule_j.contains("match_text")) {
                        rule.match_text = rule_j.at("match_text").get<std::string>();
                    }
                    rule.reply = rule_j.at("reply").get<std::string>();
                    rule.delay_ms = rule_j.value("delay_ms", millis_t{0});
                    p.reply_policy.rules.push_back(std::move(rule));
                }
            }
            const auto fallback = rj.value("default", std::string("ignore"));
            if (fallback == "ignore") {
                p.reply_policy.fallback = ReplyDefault::Ignore;
            } else if (fallback == "echo_no") {
                p.reply_policy.fallback = ReplyDefault::EchoNo;
            } else {
                fail("unknown reply_policy default '" + fallback + "'");
            }
        }
        scenario.participants.push_back(std::move(p));
    }
    scenario.validate();
    return scenario;
}

nlohmann::ordered_json scenario_to_json(const Scenario& scenario) {
    ordered_json j;
    j["version"] = scenario.version;
    j["seed"] = scenario.seed;
    j["config"] = wire::config_to_json(scenario.config);
    ordered_json participants = ordered_json::array();
    for (const auto& p : scenario.participants) {
        ordered_json pj;
        pj["id"] = p.id;
        pj["role"] = wire::role_name(p.role);
        if (!p.script.intervals.empty() || p.script.stochastic) {
            ordered_json sj;
            if (!p.script.intervals.empty()) {
                ordered_json ivs = ordered_json::array();
                for (const auto& iv : p.script.intervals) {
                    ivs.push_back(ordered_json::array({iv.start, iv.end}));
                }
                sj["intervals"] = std::move(ivs);
            }
            if (p.script.stochastic) {
                ordered_json st;
                st["turn_rate_per_min"] = p.script.stochastic->turn_rate_per_min;
                st["turn_length_mean_s"] = p.script.stochastic->turn_length_mean_s;
                st["talkativeness"] = p.script.stochastic->talkativeness;
                sj["stochastic"] = std::move(st);
            }
            pj["script"] = std::move(sj);
        }
        if (!p.reply_policy.rules.empty() || p.reply_policy.fallback != ReplyDefault::Ignore) {
            ordered_json rj;
            ordered_json rules = ordered_json::array();
            for (const auto& rule : p.reply_policy.rules) {
                ordered_json rule_j;
                if (rule.match_question) rule_j["match_question"] = *rule.match_question;
                if (rule.match_text) rule_j["match_text"] = *rule.match_text;
                rule_j["reply"] = rule.reply;
                rule_j["delay_ms"] = rule.delay_ms;
                rules.push_back(std::move(rule_j));
            }
            rj["rules"] = std::move(rules);
            rj["default"] = p.reply_policy.fallback == ReplyDefault::EchoNo ? "echo_no" : "ignore";
            pj["reply_policy"] = std::move(rj);
        }
        participants.push_back(std::move(pj));
    }
    j["participants"] = std::move(participants);
    return j;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file '" + path + "'");
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) fail("scenario file '" + path + "' is not valid JSON");
    return scenario_from_json(j);
}

}  // namespace cohost::sim
