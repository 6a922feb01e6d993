#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hitlsim/Errors.h"
#include "hitlsim/Io.h"
#include "hitlsim/Matching.h"
#include "oracles.h"

using hitlsim::EventInterval;
using hitlsim::MatchReport;

#ifndef HITLSIM_DATA_DIR
#define HITLSIM_DATA_DIR "."
#endif

TEST_CASE("iou counts inclusive frames") {
    CHECK(hitlsim::iou({10, 20}, {15, 25}) == 0.375);  // 6 / 16
    CHECK(hitlsim::iou({3, 8}, {3, 8}) == 1.0);
    CHECK(hitlsim::iou({0, 4}, {10, 12}) == 0.0);
}

TEST_CASE("iou is symmetric, bounded, and 1 only on identity") {
    std::mt19937 rng(8001);
    for (int i = 0; i < 500; ++i) {
        const auto a = oracles::random_intervals(rng, 1, 300);
        const auto b = oracles::random_intervals(rng, 1, 300);
        if (a.empty() || b.empty()) continue;
        const double ab = hitlsim::iou(a[0], b[0]);
        CHECK(ab == hitlsim::iou(b[0], a[0]));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK((ab == 1.0) == (a[0] == b[0]));
        CHECK(ab == oracles::naive_iou(a[0], b[0]));
    }
}

TEST_CASE("match_events reproduces the desk-scale detection table") {
    const auto gt = hitlsim::read_intervals(std::string(HITLSIM_DATA_DIR) + "/table1_gt.csv");
    const auto pred = hitlsim::read_intervals(std::string(HITLSIM_DATA_DIR) + "/table1_pred.csv");
    REQUIRE(gt.size() == 40);
    REQUIRE(pred.size() == 41);
    const auto report = hitlsim::match_events(gt, pred, 0.5);
    CHECK(report.tp == 30);
    CHECK(report.fp == 11);
    CHECK(report.fn == 10);
    REQUIRE(report.precision.has_value());
    REQUIRE(report.recall.has_value());
    CHECK(*report.precision == doctest::Approx(30.0 / 41.0).epsilon(1e-12));
    CHECK(*report.recall == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("match_events trivial outcomes") {
    const auto perfect = hitlsim::match_events({{0, 9}}, {{0, 9}});
    CHECK(perfect.tp == 1);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);
    CHECK(*perfect.precision == 1.0);
    CHECK(*perfect.recall == 1.0);

    const auto disjoint = hitlsim::match_events({{0, 9}}, {{100, 109}});
    CHECK(disjoint.tp == 0);
    CHECK(disjoint.fp == 1);
    CHECK(disjoint.fn == 1);
}

TEST_CASE("match_events resolves competing predictions one-to-one") {
    // pred (0,9) wins gt (0,9) at IoU 1.0; pred (0,8) is blocked.
    const std::vector<EventInterval> gt{{0, 9}, {20, 29}};
    const std::vector<EventInterval> pred{{0, 9}, {0, 8}, {50, 59}};
    const auto report = hitlsim::match_events(gt, pred, 0.5);
    CHECK(report.tp == 1);
    CHECK(report.fp == 2);
    CHECK(report.fn == 1);
    REQUIRE(report.matches.size() == 1);
    CHECK(report.matches[0].iou == 1.0);
    // The exhaustive assignment cannot do better here.
    CHECK(oracles::best_assignment_tp(gt, pred, 0.5) == 1);
}

TEST_CASE("match_events flags zero denominators as absent") {
    const auto no_pred = hitlsim::match_events({{0, 9}}, {});
    CHECK_FALSE(no_pred.precision.has_value());
    CHECK(no_pred.recall.has_value());

    const auto no_gt = hitlsim::match_events({}, {{0, 9}});
    CHECK(no_gt.precision.has_value());
    CHECK_FALSE(no_gt.recall.has_value());

    const auto empty = hitlsim::match_events({}, {});
    CHECK(empty.tp == 0);
    CHECK(empty.fp == 0);
    CHECK(empty.fn == 0);
    CHECK_FALSE(empty.precision.has_value());
    CHECK_FALSE(empty.recall.has_value());
}

TEST_CASE("match_events warns on overlapping intervals within a list") {
    const auto report = hitlsim::match_events({{0, 10}, {5, 15}}, {{0, 10}});
    REQUIRE(report.warnings.size() == 1);
    CHECK(report.warnings[0].find("ground-truth") != std::string::npos);
    CHECK(hitlsim::match_events({{0, 9}}, {{0, 9}}).warnings.empty());
}

TEST_CASE("match_events rejects a bad threshold") {
    CHECK_THROWS_AS(hitlsim::match_events({}, {}, 1.5), hitlsim::ValidationError);
    CHECK_THROWS_AS(hitlsim::match_events({}, {}, -0.1), hitlsim::ValidationError);
}

TEST_CASE("match_events agrees with the naive greedy oracle") {
    std::mt19937 rng(8002);
    for (int i = 0; i < 300; ++i) {
        const auto gt = oracles::random_intervals(rng, 6, 150);
        const auto pred = oracles::random_intervals(rng, 6, 150);
        const auto report = hitlsim::match_events(gt, pred, 0.5);
        CHECK(report.tp + report.fp == report.pred_count);
        CHECK(report.tp + report.fn == report.gt_count);
        CHECK(report.tp <= std::min(report.gt_count, report.pred_count));

        const auto naive = oracles::naive_greedy_match(gt, pred, 0.5);
        REQUIRE(report.matches.size() == naive.size());
        for (std::size_t m = 0; m < naive.size(); ++m) {
            CHECK(report.matches[m].gt_index == naive[m].gt);
            CHECK(report.matches[m].pred_index == naive[m].pred);
            CHECK(report.matches[m].iou == naive[m].iou);
        }
    }
}

TEST_CASE("raising the threshold never gains matches") {
    std::mt19937 rng(8003);
    for (int i = 0; i < 200; ++i) {
        const auto gt = oracles::random_intervals(rng, 6, 120);
        const auto pred = oracles::random_intervals(rng, 6, 120);
        std::size_t prev_tp = gt.size() + pred.size() + 1;
        for (double threshold : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const auto report = hitlsim::match_events(gt, pred, threshold);
            CHECK(report.tp <= prev_tp);
            prev_tp = report.tp;
        }
    }
}

TEST_CASE("input order does not change the outcome") {
    std::mt19937 rng(8004);
    for (int i = 0; i < 100; ++i) {
        auto gt = oracles::random_intervals(rng, 6, 120);
        auto pred = oracles::random_intervals(rng, 6, 120);
        const auto baseline = hitlsim::match_events(gt, pred, 0.5);
        std::shuffle(gt.begin(), gt.end(), rng);
        std::shuffle(pred.begin(), pred.end(), rng);
        const auto shuffled = hitlsim::match_events(gt, pred, 0.5);
        CHECK(shuffled.tp == baseline.tp);
        CHECK(shuffled.fp == baseline.fp);
        CHECK(shuffled.fn == baseline.fn);
        REQUIRE(shuffled.matches.size() == baseline.matches.size());
        for (std::size_t m = 0; m < baseline.matches.size(); ++m) {
            CHECK(shuffled.matches[m] == baseline.matches[m]);
        }
    }
}

TEST_CASE("precision_recall applies the absent-marker rules") {
    MatchReport table1;
    table1.gt_count = 40;
    table1.pred_count = 41;
    table1.tp = 30;
    table1.fp = 11;
    table1.fn = 10;
    const auto [p1, r1] = hitlsim::precision_recall(table1);
    CHECK(*p1 == doctest::Approx(0.731707).epsilon(1e-6));
    CHECK(*r1 == 0.75);

    MatchReport no_pred;
    no_pred.gt_count = 5;
    no_pred.fn = 5;
    const auto [p2, r2] = hitlsim::precision_recall(no_pred);
    CHECK_FALSE(p2.has_value());
    CHECK(*r2 == 0.0);

    MatchReport all;
    all.gt_count = 3;
    all.pred_count = 3;
    all.tp = 3;
    const auto [p3, r3] = hitlsim::precision_recall(all);
    CHECK(*p3 == 1.0);
    CHECK(*r3 == 1.0);
}
