#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hitlsim/EventLog.h"
#include "hitlsim/Matching.h"

namespace hitlsim {

// Summary of a latency sample set, in seconds. median is the conventional
// midpoint (average of the two central order statistics for even n); p90
// and p99 use the nearest-rank method, the ceil(p*n)-th order statistic.
// Values are meaningful only when n > 0; renderers show n/a otherwise.
struct LatencyStats {
    std::size_t n = 0;
    double mean_s = 0.0;
    double median_s = 0.0;
    double p90_s = 0.0;
    double p99_s = 0.0;
    double max_s = 0.0;
};

LatencyStats summarize_latencies(std::vector<double> samples);

// Share of feedback labels that are -1; absent when no labels exist.
std::optional<double> feedback_fpr(const EventLog& log);

// Share of dispatched alerts whose hidden ground truth is a false alarm;
// absent when the log has no detections.
std::optional<double> oracle_fpr(const EventLog& log);

// fn / gt_count; absent when there are no ground-truth events.
std::optional<double> detection_fnr(const MatchReport& report);

// Incident onset (clip start) to alarm notification, per notified event.
LatencyStats technical_latency(const EventLog& log);

// Alert notification to the operator's recorded action, per labeled event.
LatencyStats organizational_latency(const EventLog& log);

struct AdaptationParams {
    double window_s = 3600.0;
    double cv_threshold = 0.1;
    int stable_windows = 3;
};

// Rolling-stability proxy for workflow integration: the run is cut into
// consecutive windows of window_s from the deployment time; the first
// index j where stable_windows consecutive windows all have samples and
// the coefficient of variation of their mean organizational latencies is
// <= cv_threshold yields (j + stable_windows) * window_s. Absent when no
// such run exists.
std::optional<double> adaptation_time(const EventLog& log, const AdaptationParams& params);

// Everything the metrics report carries. detection_fnr stays absent here:
// event logs carry no ground-truth intervals, so it only comes from a
// MatchReport via detection_fnr().
struct MetricsBundle {
    std::size_t detections = 0;
    std::size_t notifications = 0;
    std::size_t labels_total = 0;
    std::size_t labels_negative = 0;
    std::size_t retrains = 0;
    std::optional<double> feedback_fpr;
    std::optional<double> oracle_fpr;
    std::optional<double> detection_fnr;
    LatencyStats technical;
    LatencyStats organizational;
    AdaptationParams adaptation;
    std::optional<double> adaptation_time_s;
};

MetricsBundle compute_metrics(const EventLog& log, const AdaptationParams& params);

}  // namespace hitlsim
