#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hitlsim/Events.h"

namespace hitlsim {

// One accepted ground-truth/prediction pair. Indices refer to the
// canonical (start, end)-sorted copies of the input lists.
struct MatchPair {
    std::size_t gt_index = 0;
    std::size_t pred_index = 0;
    double iou = 0.0;

    bool operator==(const MatchPair&) const = default;
};

// Detection counts and rates for one ground-truth-vs-prediction comparison.
// precision/recall are absent (not zero) when their denominator is zero.
struct MatchReport {
    std::size_t gt_count = 0;
    std::size_t pred_count = 0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    double threshold = 0.5;
    std::vector<MatchPair> matches;
    std::optional<double> precision;
    std::optional<double> recall;
    std::vector<std::string> warnings;
};

// |a n b| / |a u b| over inclusive frame sets; 0 when disjoint.
double iou(const EventInterval& a, const EventInterval& b);

// Greedy one-to-one matching: candidate pairs are those with iou strictly
// above the threshold, taken in descending-iou order with ties broken by
// smaller gt index then smaller pred index. Inputs are sorted by
// (start, end) first so tie-breaking does not depend on caller order.
// Overlapping intervals within one list are accepted with a warning.
MatchReport match_events(std::vector<EventInterval> gt, std::vector<EventInterval> pred,
                         double threshold = 0.5);

// (tp/pred_count, tp/gt_count) with absent markers for zero denominators.
std::pair<std::optional<double>, std::optional<double>> precision_recall(const MatchReport& report);

}  // namespace hitlsim
