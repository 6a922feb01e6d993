#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "hitlsim/Errors.h"
#include "hitlsim/Io.h"
#include "hitlsim/Simulation.h"

using hitlsim::EntryKind;
using hitlsim::EventLog;
using hitlsim::SimConfig;
using hitlsim::SimState;

namespace {

SimConfig busy_config(std::uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.duration_s = 7200.0;
    cfg.num_operators = 3;
    cfg.true_event_rate_per_hr = 6.0;
    cfg.false_alarm_rate_per_hr = 12.0;
    cfg.notify_delay_min_s = 0.5;
    cfg.notify_delay_max_s = 2.0;
    cfg.response_delay_median_s = 25.0;
    cfg.response_delay_sigma = 0.6;
    cfg.operator_label_accuracy = 0.9;
    cfg.retrain_batch_size = 10;
    cfg.retrain_fp_decay = 0.9;
    return cfg;
}

std::size_t count_kind(const EventLog& log, EntryKind kind) {
    std::size_t n = 0;
    for (const auto& e : log.entries) {
        if (e.kind == kind) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("config validation names the offending field") {
    SimConfig cfg;
    cfg.false_alarm_rate_per_hr = -1.0;
    CHECK_THROWS_WITH_AS(hitlsim::validate(cfg), doctest::Contains("false_alarm_rate_per_hr"),
                         hitlsim::ValidationError);

    cfg = SimConfig{};
    cfg.clip_len_min_s = 4.0;
    CHECK_THROWS_WITH_AS(hitlsim::validate(cfg), doctest::Contains("clip_len_min_s"),
                         hitlsim::ValidationError);

    cfg = SimConfig{};
    cfg.clip_len_max_s = 11.0;
    CHECK_THROWS_WITH_AS(hitlsim::validate(cfg), doctest::Contains("clip_len_max_s"),
                         hitlsim::ValidationError);

    cfg = SimConfig{};
    cfg.num_operators = 0;
    CHECK_THROWS_WITH_AS(hitlsim::validate(cfg), doctest::Contains("num_operators"),
                         hitlsim::ValidationError);

    cfg = SimConfig{};
    cfg.operator_label_accuracy = 1.2;
    CHECK_THROWS_WITH_AS(hitlsim::validate(cfg), doctest::Contains("operator_label_accuracy"),
                         hitlsim::ValidationError);

    cfg = SimConfig{};
    cfg.retrain_fp_decay = 0.0;
    CHECK_THROWS_WITH_AS(hitlsim::validate(cfg), doctest::Contains("retrain_fp_decay"),
                         hitlsim::ValidationError);

    cfg = SimConfig{};
    cfg.duration_s = 0.0;
    CHECK_THROWS_AS(hitlsim::run_simulation(cfg), hitlsim::ValidationError);
}

TEST_CASE("zero-rate simulation logs only the deployment") {
    SimConfig cfg;
    cfg.duration_s = 3600.0;
    const auto log = hitlsim::run_simulation(cfg);
    REQUIRE(log.entries.size() == 1);
    CHECK(log.entries[0].kind == EntryKind::deployment);
    CHECK(log.entries[0].t_s == 0.0);
    CHECK(count_kind(log, EntryKind::retrain) == 0);
}

TEST_CASE("perfect operators with no false alarms only confirm") {
    SimConfig cfg;
    cfg.seed = 5;
    cfg.duration_s = 14400.0;
    cfg.num_operators = 2;
    cfg.true_event_rate_per_hr = 10.0;
    cfg.false_alarm_rate_per_hr = 0.0;
    cfg.operator_label_accuracy = 1.0;
    cfg.response_delay_median_s = 10.0;
    const auto log = hitlsim::run_simulation(cfg);
    std::size_t labels = 0;
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::label) {
            ++labels;
            CHECK(*e.value == 1);
        }
    }
    CHECK(labels > 0);
}

TEST_CASE("identical seed and config give identical logs") {
    const auto a = hitlsim::run_simulation(busy_config(42));
    const auto b = hitlsim::run_simulation(busy_config(42));
    CHECK(a == b);
    CHECK(hitlsim::serialize_log(a) == hitlsim::serialize_log(b));

    const auto c = hitlsim::run_simulation(busy_config(43));
    CHECK(hitlsim::serialize_log(a) != hitlsim::serialize_log(c));
}

TEST_CASE("simulation logs satisfy structural and causality invariants") {
    const auto log = hitlsim::run_simulation(busy_config(77));
    hitlsim::validate(log);

    std::map<std::int64_t, double> detected, notified, labeled;
    std::map<std::int64_t, int> label_count;
    for (const auto& e : log.entries) {
        switch (e.kind) {
            case EntryKind::detection:
                detected[*e.event_id] = e.t_s;
                CHECK(*e.clip_end_s - *e.clip_start_s >= 5.0);
                CHECK(*e.clip_end_s - *e.clip_start_s <= 10.0);
                break;
            case EntryKind::notification: notified[*e.event_id] = e.t_s; break;
            case EntryKind::label:
                labeled[*e.event_id] = e.t_s;
                ++label_count[*e.event_id];
                break;
            default: break;
        }
    }
    CHECK(!labeled.empty());
    for (const auto& [id, t] : labeled) {
        REQUIRE(detected.count(id) == 1);
        REQUIRE(notified.count(id) == 1);
        CHECK(detected[id] <= notified[id]);
        CHECK(notified[id] <= t);
        CHECK(label_count[id] == 1);
    }

    // Labels of each sign add up to the labeled-event count.
    std::size_t pos = 0, neg = 0;
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::label) (*e.value == 1 ? pos : neg) += 1;
    }
    CHECK(pos + neg == labeled.size());
}

TEST_CASE("retraining decays the false-alarm rate monotonically") {
    auto cfg = busy_config(11);
    cfg.retrain_fp_decay = 0.8;
    cfg.retrain_batch_size = 5;
    const auto log = hitlsim::run_simulation(cfg);
    double prev = cfg.false_alarm_rate_per_hr;
    std::size_t retrains = 0;
    for (const auto& e : log.entries) {
        if (e.kind != EntryKind::retrain) continue;
        ++retrains;
        CHECK(*e.rate_before == prev);
        CHECK(*e.rate_after == prev * 0.8);
        CHECK(*e.rate_after < *e.rate_before);
        CHECK(*e.batch_labels == 5);
        prev = *e.rate_after;
    }
    CHECK(retrains >= 2);
}

TEST_CASE("first label wins and clears all queues") {
    SimConfig cfg;
    cfg.num_operators = 3;
    cfg.true_event_rate_per_hr = 1.0;
    SimState state(cfg);
    state.log_deployment(0.0);
    const auto id = state.add_alert(10.0, 17.0, 17.0, true);
    state.notify(id, 20.0);
    for (int op = 0; op < 3; ++op) CHECK(state.queue(op).size() == 1);

    const auto outcome = state.submit_label(id, 2, 1, 50.0);
    CHECK(outcome == SimState::LabelOutcome::accepted);
    REQUIRE(state.labels().size() == 1);
    CHECK(state.labels()[0].operator_id == 2);
    CHECK(state.labels()[0].value == 1);
    CHECK(state.labels()[0].labeled_at_s == 50.0);
    REQUIRE(state.actions().size() == 1);
    CHECK(state.actions()[0].acted_at_s == 50.0);
    for (int op = 0; op < 3; ++op) CHECK(state.queue(op).empty());

    std::set<int> removed_for;
    for (const auto& e : state.log().entries) {
        if (e.kind == EntryKind::queue_remove) removed_for.insert(*e.operator_id);
    }
    CHECK(removed_for == std::set<int>{0, 1, 2});
}

TEST_CASE("a second label attempt is rejected without state change") {
    SimConfig cfg;
    cfg.num_operators = 2;
    SimState state(cfg);
    state.log_deployment(0.0);
    const auto id = state.add_alert(0.0, 6.0, 6.0, false);
    state.notify(id, 7.0);
    CHECK(state.submit_label(id, 0, -1, 30.0) == SimState::LabelOutcome::accepted);

    const auto before = state.labels().size();
    CHECK(state.submit_label(id, 1, 1, 31.0) == SimState::LabelOutcome::rejected_already_labeled);
    CHECK(state.labels().size() == before);
    CHECK(state.log().entries.back().kind == EntryKind::label_rejected);
    CHECK(*state.alert(id).label == -1);
}

TEST_CASE("labeling an event no queue holds is an error") {
    SimConfig cfg;
    cfg.num_operators = 2;
    SimState state(cfg);
    state.log_deployment(0.0);
    CHECK_THROWS_AS(state.submit_label(99, 0, 1, 5.0), hitlsim::SimError);

    const auto id = state.add_alert(0.0, 5.5, 5.5, true);
    // Never notified: no queue holds it.
    CHECK_THROWS_AS(state.submit_label(id, 0, 1, 6.0), hitlsim::SimError);

    state.notify(id, 6.0);
    CHECK_THROWS_AS(state.submit_label(id, 0, 0, 7.0), hitlsim::SimError);
    CHECK_THROWS_AS(state.submit_label(id, 5, 1, 7.0), hitlsim::SimError);
}

TEST_CASE("trigger_retraining applies the decay arithmetic") {
    SimConfig cfg;
    cfg.false_alarm_rate_per_hr = 10.0;
    cfg.retrain_fp_decay = 0.8;
    SimState state(cfg);
    state.trigger_retraining(100.0);
    CHECK(state.false_alarm_rate_per_hr() == 8.0);

    SimConfig identity = cfg;
    identity.retrain_fp_decay = 1.0;
    SimState unchanged(identity);
    unchanged.trigger_retraining(100.0);
    CHECK(unchanged.false_alarm_rate_per_hr() == 10.0);
    CHECK(unchanged.log().entries.back().kind == EntryKind::retrain);

    SimConfig halving = cfg;
    halving.false_alarm_rate_per_hr = 12.0;
    halving.retrain_fp_decay = 0.5;
    SimState twice(halving);
    twice.trigger_retraining(10.0);
    twice.trigger_retraining(20.0);
    CHECK(twice.false_alarm_rate_per_hr() == 3.0);
}

TEST_CASE("no event keeps more than one label under load") {
    auto cfg = busy_config(1234);
    cfg.duration_s = 36000.0;
    cfg.true_event_rate_per_hr = 15.0;
    cfg.false_alarm_rate_per_hr = 25.0;
    cfg.response_delay_median_s = 15.0;
    const auto log = hitlsim::run_simulation(cfg);

    std::map<std::int64_t, std::uint64_t> label_seq;
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::label) {
            CHECK(label_seq.count(*e.event_id) == 0);
            label_seq[*e.event_id] = e.seq;
        }
    }
    CHECK(label_seq.size() > 100);
    // Queue hygiene: nothing enters a queue after its event was labeled.
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::queue_insert && label_seq.count(*e.event_id)) {
            CHECK(e.seq < label_seq[*e.event_id]);
        }
    }
}
