#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cohost/engine.hpp"

namespace cohost::sim {

// SplitMix64 (Steele, Lea & Flood 2014). Chosen because the whole generator
// is a dozen lines that any implementation can copy verbatim, which keeps
// scenarios reproducible across languages. Draw formulas are documented in
// the README.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double next_unit();                        // uniform in [0, 1), 53-bit
    double next_exponential(double mean);      // inverse CDF: -mean * ln(1 - u)
    std::size_t pick_weighted(const std::vector<double>& weights);

private:
    std::uint64_t state_;
};

// Half-open speaking interval [start, end) in milliseconds.
struct Interval {
    millis_t start = 0;
    millis_t end = 0;

    bool operator==(const Interval&) const = default;
};

struct StochasticScript {
    double turn_rate_per_min = 2.0;    // contribution to the meeting-wide turn rate
    double turn_length_mean_s = 8.0;   // mean of the exponential turn length
    double talkativeness = 1.0;        // weight when picking the next speaker

    bool operator==(const StochasticScript&) const = default;
};

struct SpeakScript {
    std::vector<Interval> intervals;             // explicit intervals, or
    std::optional<StochasticScript> stochastic;  // seeded turn-taking

    bool operator==(const SpeakScript&) const = default;
};

struct ReplyRule {
    std::optional<int> match_question;      // 1..3: message contains that question text
    std::optional<std::string> match_text;  // message contains this substring
    std::string reply;
    millis_t delay_ms = 0;

    bool operator==(const ReplyRule&) const = default;
};

enum class ReplyDefault { Ignore, EchoNo };

// Rules are consumed in order, each firing at most once; the default applies
// to every co-host message no rule matched. EchoNo replies "no" one second
// after the message.
struct ReplyPolicy {
    std::vector<ReplyRule> rules;
    ReplyDefault fallback = ReplyDefault::Ignore;

    bool operator==(const ReplyPolicy&) const = default;
};

struct ScenarioParticipant {
    ParticipantId id;
    Role role = Role::Member;
    SpeakScript script;
    ReplyPolicy reply_policy;

    bool operator==(const ScenarioParticipant&) const = default;
};

struct Scenario {
    int version = 1;
    std::uint64_t seed = 0;
    MeetingConfig config;
    std::vector<ScenarioParticipant> participants;

    Roster roster() const;
    void validate() const;  // throws MeetingError{validation}

    bool operator==(const Scenario&) const = default;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

// Expand every speak script into normalized (sorted, touching runs merged)
// per-participant intervals. Stochastic scripts share one turn-taking stream
// seeded by scenario.seed, so at most one stochastic speaker is active at a
// time; explicit intervals may overlap across participants.
std::map<ParticipantId, std::vector<Interval>> expand_scripts(const Scenario& scenario);

struct SimResult {
    std::vector<std::string> event_lines;
    std::vector<std::string> action_lines;
    std::vector<OutputAction> actions;
    std::vector<ParticipantId> table_ids;                  // voice-capable ids, lexicographic
    std::vector<std::vector<seconds_t>> cumulative_table;  // row per tick 1..duration
    std::optional<TriggerRecord> trigger;
    std::vector<ParticipantId> under_at_trigger;
    std::vector<ParticipantId> over_at_trigger;
    std::optional<MeetingReport> report;
};

// Generate the event stream for a scenario, fold it through the engine, and
// answer co-host messages per each participant's reply policy. Same scenario
// and seed, same result, byte for byte.
SimResult run(const Scenario& scenario);

// Feed recorded event lines through a fresh engine.
SimResult replay_lines(const std::vector<std::string>& event_lines);

// Brute-force recomputation of what the engine should observe, without any
// engine code on the path: cumulative time is counted directly from the
// scripted intervals and the trigger rules are re-applied in a plain scan.
struct OracleReport {
    std::vector<ParticipantId> ids;                  // voice-capable ids, lexicographic
    std::vector<std::vector<seconds_t>> cumulative;  // row per tick 1..duration
    std::optional<TriggerRecord> first_trigger;
    std::vector<ParticipantId> under_at_trigger;
    std::vector<ParticipantId> over_at_trigger;
};

std::vector<std::vector<seconds_t>> oracle_cumulative(const Scenario& scenario,
                                                      std::vector<ParticipantId>& ids_out);
std::optional<TriggerRecord> oracle_first_trigger(const Scenario& scenario);
OracleReport oracle_report(const Scenario& scenario);

nlohmann::ordered_json oracle_to_json(const OracleReport& report);
OracleReport oracle_from_json(const nlohmann::json& j);

// Divergence lines between an engine run and the oracle; empty means pass.
std::vector<std::string> compare(const SimResult& sim, const OracleReport& oracle);

}  // namespace cohost::sim
