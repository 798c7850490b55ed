#include <algorithm>

#include "cohost/engine.hpp"
#include "cohost/messages.hpp"
#include "cohost/wire.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace cohost;
using cohost::test::make_roster;

namespace {

struct Driver {
    Engine engine;
    std::vector<OutputAction> all;

    std::vector<OutputAction> feed(const InputEvent& ev) {
        auto actions = engine.step(ev);
        all.insert(all.end(), actions.begin(), actions.end());
        return actions;
    }

    void ticks(seconds_t from, seconds_t to) {
        for (seconds_t t = from; t <= to; ++t) feed(TickEvent{t});
    }

    std::vector<DirectMessage> dms_to(const ParticipantId& id, millis_t after = -1) const {
        std::vector<DirectMessage> out;
        for (const auto& action : all) {
            if (action.t <= after) continue;
            if (const auto* dm = std::get_if<DirectMessage>(&action.body)) {
                if (dm->to == id) out.push_back(*dm);
            }
        }
        return out;
    }
};

MeetingConfig small_config() {
    MeetingConfig config;
    config.scheduled_duration = 200;
    config.refresh_interval = 30;
    return config;
}

}  // namespace

TEST_CASE("init introduces the co-host to every human participant") {
    auto [engine, actions] = init(MeetingConfig{}, make_roster("H", {"A", "B", "C"}, true));
    REQUIRE(actions.size() == 4);  // co-host excluded
    for (const auto& action : actions) {
        const auto* dm = std::get_if<DirectMessage>(&action.body);
        REQUIRE(dm != nullptr);
        CHECK(dm->text.find("observing conversational dynamics") != std::string::npos);
        CHECK(dm->text.find("H") != std::string::npos);
        CHECK(action.t == 0);
    }
    CHECK(engine.phase() == EnginePhase::Observing);

    Engine bad;
    CHECK_THROWS_AS(bad.step(MeetingStart{MeetingConfig{}, Roster{{"A", Role::Member}}, 0}),
                    MeetingError);
}

TEST_CASE("engine rejects malformed sequences") {
    Engine engine;
    CHECK_THROWS_AS(engine.step(TickEvent{1}), MeetingError);  // not started

    Driver d;
    d.feed(MeetingStart{small_config(), make_roster("H", {"A"}), 0});
    CHECK_THROWS_AS(d.engine.step(MeetingStart{small_config(), make_roster("H", {"A"}), 0}),
                    MeetingError);
    CHECK_THROWS_AS(d.engine.step(VoiceEvent{"nobody", true, 0}), MeetingError);
    CHECK_THROWS_AS(d.engine.step(ChatEvent{"nobody", "hi", 0}), MeetingError);
    CHECK_THROWS_AS(d.engine.step(TickEvent{5}), MeetingError);  // gap
    d.feed(TickEvent{1});
    CHECK_THROWS_AS(d.engine.step(VoiceEvent{"A", true, 200}), MeetingError);  // behind clock
    CHECK_THROWS_AS(d.engine.finalize(), MeetingError);  // not ended
}

TEST_CASE("full meeting: trigger, dialogue, interventions, stop, report") {
    Driver d;
    d.feed(MeetingStart{small_config(), make_roster("H", {"A", "B", "C"}), 0});
    d.feed(VoiceEvent{"A", true, 0});
    d.feed(VoiceEvent{"B", true, 0});
    d.ticks(1, 30);
    d.feed(VoiceEvent{"B", false, 30500});
    d.ticks(31, 60);
    d.feed(VoiceEvent{"A", false, 60500});
    d.ticks(61, 99);

    // no Ask message before half-time
    for (const auto& dm : d.dms_to("C")) {
        CHECK(dm.text.find(std::string(messages::question_text(1))) == std::string::npos);
    }

    auto at_trigger = d.feed(TickEvent{100});
    REQUIRE(d.engine.trigger().has_value());
    CHECK(d.engine.trigger()->t == 100);
    CHECK(d.engine.trigger()->reason.kind == TriggerKind::HalfTime);
    CHECK(d.engine.under_at_trigger() == std::vector<ParticipantId>{"C"});
    CHECK(d.engine.over_at_trigger() == std::vector<ParticipantId>{"A"});
    REQUIRE(at_trigger.size() == 1);
    const auto* q1 = std::get_if<DirectMessage>(&at_trigger[0].body);
    REQUIRE(q1 != nullptr);
    CHECK(q1->to == "C");
    CHECK(q1->text.find(std::string(messages::question_text(1))) != std::string::npos);
    CHECK(at_trigger[0].t == 100000);

    // Q1 "no" activates the host intervention
    d.feed(TickEvent{101});
    auto replies = d.feed(ChatEvent{"C", "no", 101500});
    REQUIRE(replies.size() == 1);
    CHECK(std::get<DirectMessage>(replies[0].body).text.find(
              std::string(messages::question_text(2))) != std::string::npos);
    REQUIRE(d.engine.interventions().size() == 1);
    CHECK(d.engine.interventions()[0].kind == InterventionKind::HostExpression);
    CHECK(d.engine.interventions()[0].receiver == "H");

    // host DM delivered at the next tick (host has never spoken)
    auto delivered = d.feed(TickEvent{102});
    REQUIRE(delivered.size() == 1);
    {
        const auto& dm = std::get<DirectMessage>(delivered[0].body);
        CHECK(dm.to == "H");
        REQUIRE(dm.chart.has_value());
        CHECK(dm.chart->kind == ChartKind::PerMember);
        REQUIRE(dm.chart->bars.size() == 3);
        CHECK(dm.chart->bars[0].label == "C");
        CHECK(dm.chart->bars[0].highlight);
        CHECK(dm.chart->bars[2].label == "A");
        for (const auto& bar : dm.chart->bars) CHECK(bar.label != "H");
    }

    // Q2 "yes" activates the over-participator intervention for A
    d.feed(TickEvent{103});
    d.feed(ChatEvent{"C", "yes", 103500});
    REQUIRE(d.engine.interventions().size() == 2);
    CHECK(d.engine.interventions()[1].kind == InterventionKind::OverParticipator);
    CHECK(d.engine.interventions()[1].receiver == "A");

    delivered = d.feed(TickEvent{104});
    REQUIRE(delivered.size() == 1);
    {
        const auto& dm = std::get<DirectMessage>(delivered[0].body);
        CHECK(dm.to == "A");
        REQUIRE(dm.chart.has_value());
        CHECK(dm.chart->kind == ChartKind::SelfVsAverage);
        REQUIRE(dm.chart->bars.size() == 2);
        CHECK(dm.chart->bars[0].seconds == 60.0);
        CHECK(dm.chart->bars[1].seconds == 15.0);  // mean of B=30, C=0
    }

    // Q3 free text is forwarded anonymously to the host
    d.feed(TickEvent{105});
    auto ack = d.feed(ChatEvent{"C", "please add breaks", 105800});
    REQUIRE(ack.size() == 1);
    CHECK(std::get<DirectMessage>(ack[0].body).text == messages::ack_will_intervene());

    delivered = d.feed(TickEvent{106});
    REQUIRE(delivered.size() == 1);
    CHECK(std::get<DirectMessage>(delivered[0].body).text ==
          messages::anonymous_feedback("please add breaks"));

    // refreshes: host at 131/161/191, A at 133 then stopped at 140200
    d.ticks(107, 140);
    d.feed(ChatEvent{"A", "stop", 140200});
    d.ticks(141, 200);
    d.feed(MeetingEnd{200000});

    std::vector<millis_t> host_refreshes;
    std::vector<millis_t> a_refreshes;
    for (const auto& msg : d.engine.message_queue()) {
        if (msg.kind != MessageKind::Refresh) continue;
        (msg.to == "H" ? host_refreshes : a_refreshes).push_back(msg.enqueued_t);
    }
    CHECK(host_refreshes == std::vector<millis_t>{131000, 161000, 191000});
    CHECK(a_refreshes == std::vector<millis_t>{133000});
    CHECK(d.dms_to("A", 140200).empty());  // nothing after the stop

    const auto report = d.engine.finalize();
    REQUIRE(report.trigger.has_value());
    CHECK(report.trigger->t == 100);
    CHECK(report.under_at_trigger == std::vector<ParticipantId>{"C"});
    CHECK(report.over_at_activation == std::vector<ParticipantId>{"A"});
    REQUIRE(report.sessions.size() == 1);
    CHECK(report.sessions[0].stage == AskStage::Done);
    CHECK(report.sessions[0].answers.size() == 3);
    CHECK(report.activation.host_reason == HostReason::Both);
    CHECK(report.activation.feedback_notes == std::vector<std::string>{"please add breaks"});
    REQUIRE(report.interventions.size() == 2);
    CHECK_FALSE(report.interventions[0].stopped);
    CHECK(report.interventions[1].stopped);

    auto cum_of = [&](const ParticipantId& id) {
        for (const auto& [pid, c] : report.cumulative) {
            if (pid == id) return c;
        }
        return seconds_t{-1};
    };
    CHECK(cum_of("A") == 60);
    CHECK(cum_of("B") == 30);
    CHECK(cum_of("C") == 0);

    // events after the end are ignored with a log entry
    auto late = d.feed(TickEvent{201});
    REQUIRE(late.size() == 1);
    CHECK(std::get_if<LogEntry>(&late[0].body) != nullptr);

    // the engine's internal log is exactly the emitted actions, in order
    CHECK(d.engine.action_log() == d.all);
}

TEST_CASE("unsupported input re-prompts without advancing; silence stays silent") {
    MeetingConfig config;
    config.scheduled_duration = 60;
    Driver d;
    d.feed(MeetingStart{config, make_roster("H", {"U", "V"}), 0});
    d.ticks(1, 30);  // equal (zero) speakers: half-time at 30, fallback asks both

    REQUIRE(d.engine.sessions().size() == 2);

    auto replies = d.feed(ChatEvent{"U", "maybe", 30400});
    REQUIRE(replies.size() == 1);
    CHECK(std::get<DirectMessage>(replies[0].body).text == messages::did_not_understand(1));
    CHECK(d.engine.sessions()[0].stage == AskStage::AwaitingQ1);

    // one re-prompt only; V never replies at all
    d.ticks(31, 60);
    d.feed(MeetingEnd{60000});

    CHECK(d.dms_to("U").size() == 3);  // intro, Q1, one did-not-understand
    CHECK(d.dms_to("V").size() == 2);  // intro, Q1, then nothing
    const auto report = d.engine.finalize();
    CHECK(report.sessions[0].stage == AskStage::Silent);
    CHECK(report.sessions[1].stage == AskStage::Silent);
    CHECK_FALSE(report.activation.any());
}

TEST_CASE("chat from a participant with no open session is ignored with a log") {
    MeetingConfig config;
    config.scheduled_duration = 60;
    Driver d;
    d.feed(MeetingStart{config, make_roster("H", {"U"}), 0});
    d.feed(TickEvent{1});
    auto actions = d.feed(ChatEvent{"U", "hello there", 1500});
    REQUIRE(actions.size() == 1);
    CHECK(std::get_if<LogEntry>(&actions[0].body) != nullptr);

    // "stop" without any active intervention is a no-op too
    actions = d.feed(ChatEvent{"U", "stop", 1600});
    REQUIRE(actions.size() == 1);
    CHECK(std::get_if<LogEntry>(&actions[0].body) != nullptr);
}

TEST_CASE("a stopped host no longer receives feedback forwards") {
    MeetingConfig config;
    config.scheduled_duration = 120;
    config.refresh_interval = 240;
    Driver d;
    d.feed(MeetingStart{config, make_roster("H", {"U", "V"}), 0});
    d.ticks(1, 60);  // half-time trigger, sessions for U and V

    d.feed(ChatEvent{"U", "no", 60200});  // host intervention
    d.feed(TickEvent{61});                // delivered
    d.feed(ChatEvent{"H", "stop", 61200});
    d.feed(TickEvent{62});

    // V now contributes feedback; it must not reach the stopped host
    d.feed(ChatEvent{"V", "yes", 62100});
    d.feed(TickEvent{63});
    d.feed(ChatEvent{"V", "no", 63100});
    d.feed(TickEvent{64});
    auto actions = d.feed(ChatEvent{"V", "host talks too fast", 64100});
    bool suppressed_logged = false;
    for (const auto& action : actions) {
        if (const auto* log = std::get_if<LogEntry>(&action.body)) {
            if (log->text.find("suppressed") != std::string::npos) suppressed_logged = true;
        }
    }
    CHECK(suppressed_logged);
    d.ticks(65, 120);
    d.feed(MeetingEnd{120000});
    CHECK(d.dms_to("H", 61200).empty());
}

TEST_CASE("a meeting with no members still asks, with nobody to ask") {
    MeetingConfig config;
    config.scheduled_duration = 20;
    Driver d;
    d.feed(MeetingStart{config, Roster{{"H", Role::Host}}, 0});
    d.ticks(1, 9);
    auto actions = d.feed(TickEvent{10});  // half-time
    REQUIRE(actions.size() == 1);
    const auto* log = std::get_if<LogEntry>(&actions[0].body);
    REQUIRE(log != nullptr);
    CHECK(log->text.find("no eligible under-participators") != std::string::npos);
    d.ticks(11, 20);
    d.feed(MeetingEnd{20000});
    const auto report = d.engine.finalize();
    CHECK(report.trigger.has_value());
    CHECK(report.sessions.empty());
    CHECK_FALSE(report.activation.any());
}

TEST_CASE("two engines over the same events emit byte-identical logs") {
    MeetingConfig config;
    config.scheduled_duration = 80;
    const auto roster = make_roster("H", {"A", "B"});

    std::vector<InputEvent> events;
    events.push_back(MeetingStart{config, roster, 0});
    events.push_back(VoiceEvent{"A", true, 0});
    for (seconds_t t = 1; t <= 40; ++t) events.push_back(TickEvent{t});
    events.push_back(ChatEvent{"B", "no", 40100});
    for (seconds_t t = 41; t <= 80; ++t) events.push_back(TickEvent{t});
    events.push_back(MeetingEnd{80000});

    auto run_once = [&]() {
        Engine engine;
        std::vector<std::string> lines;
        for (const auto& ev : events) {
            for (const auto& action : engine.step(ev)) {
                lines.push_back(wire::encode_action(action));
            }
        }
        return lines;
    };
    CHECK(run_once() == run_once());

    // purity: a copied engine produces the same actions for the same event
    Engine a;
    a.step(events[0]);
    a.step(events[1]);
    Engine b = a;
    for (std::size_t i = 2; i < events.size(); ++i) {
        const auto from_a = a.step(events[i]);
        const auto from_b = b.step(events[i]);
        CHECK(from_a == from_b);
    }
}
