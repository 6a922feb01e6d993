#include "hitlsim/Metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hitlsim/Errors.h"

namespace hitlsim {

namespace {

double nearest_rank(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    std::size_t rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (rank < 1) rank = 1;
    if (rank > n) rank = n;
    return sorted[rank - 1];
}

}  // namespace

LatencyStats summarize_latencies(std::vector<double> samples) {
    LatencyStats stats;
    stats.n = samples.size();
    if (samples.empty()) return stats;

    std::sort(samples.begin(), samples.end());
    double sum = 0.0;
    for (double v : samples) sum += v;
    stats.mean_s = sum / static_cast<double>(samples.size());

    const std::size_t n = samples.size();
    stats.median_s = (n % 2 == 1) ? samples[n / 2] : (samples[n / 2 - 1] + samples[n / 2]) / 2.0;
    stats.p90_s = nearest_rank(samples, 0.90);
    stats.p99_s = nearest_rank(samples, 0.99);
    stats.max_s = samples.back();
    return stats;
}

std::optional<double> feedback_fpr(const EventLog& log) {
    std::size_t total = 0;
    std::size_t negative = 0;
    for (const auto& e : log.entries) {
        if (e.kind != EntryKind::label) continue;
        ++total;
        if (e.value && *e.value == -1) ++negative;
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(negative) / static_cast<double>(total);
}

std::optional<double> oracle_fpr(const EventLog& log) {
    std::size_t total = 0;
    std::size_t false_alarms = 0;
    for (const auto& e : log.entries) {
        if (e.kind != EntryKind::detection) continue;
        ++total;
        if (e.is_true && !*e.is_true) ++false_alarms;
    }
    if (total == 0) return std::nullopt;
    return static_cast<double>(false_alarms) / static_cast<double>(total);
}

std::optional<double> detection_fnr(const MatchReport& report) {
    if (report.gt_count == 0) return std::nullopt;
    return static_cast<double>(report.fn) / static_cast<double>(report.gt_count);
}

LatencyStats technical_latency(const EventLog& log) {
    std::unordered_map<std::int64_t, double> clip_start;
    std::vector<double> samples;
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::detection && e.event_id && e.clip_start_s) {
            clip_start[*e.event_id] = *e.clip_start_s;
        } else if (e.kind == EntryKind::notification && e.event_id) {
            auto it = clip_start.find(*e.event_id);
            if (it != clip_start.end()) samples.push_back(e.t_s - it->second);
        }
    }
    return summarize_latencies(std::move(samples));
}

namespace {

std::vector<std::pair<double, double>> action_latencies(const EventLog& log) {
    // (acted_at, acted_at - notified_at) per recorded action.
    std::unordered_map<std::int64_t, double> notified_at;
    std::vector<std::pair<double, double>> out;
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::notification && e.event_id) {
            notified_at[*e.event_id] = e.t_s;
        } else if (e.kind == EntryKind::action && e.event_id) {
            auto it = notified_at.find(*e.event_id);
            if (it != notified_at.end()) out.emplace_back(e.t_s, e.t_s - it->second);
        }
    }
    return out;
}

}  // namespace

LatencyStats organizational_latency(const EventLog& log) {
    std::vector<double> samples;
    for (const auto& [t, delta] : action_latencies(log)) samples.push_back(delta);
    return summarize_latencies(std::move(samples));
}

std::optional<double> adaptation_time(const EventLog& log, const AdaptationParams& params) {
    if (!(params.window_s > 0.0)) throw ValidationError("window_s must be > 0");
    if (!(params.cv_threshold > 0.0)) throw ValidationError("cv_threshold must be > 0");
    if (params.stable_windows < 1) throw ValidationError("stable_windows must be >= 1");
    if (log.entries.empty()) return std::nullopt;

    double deployed_at = log.entries.front().t_s;
    for (const auto& e : log.entries) {
        if (e.kind == EntryKind::deployment) {
            deployed_at = e.t_s;
            break;
        }
    }
    const double end = log.entries.back().t_s;
    if (end <= deployed_at) return std::nullopt;

    const std::size_t window_count =
        static_cast<std::size_t>(std::ceil((end - deployed_at) / params.window_s));
    std::vector<double> sums(window_count, 0.0);
    std::vector<std::size_t> counts(window_count, 0);
    for (const auto& [acted_at, delta] : action_latencies(log)) {
        if (acted_at < deployed_at) continue;
        auto w = static_cast<std::size_t>((acted_at - deployed_at) / params.window_s);
        if (w >= window_count) w = window_count - 1;
        sums[w] += delta;
        ++counts[w];
    }

    const auto run = static_cast<std::size_t>(params.stable_windows);
    if (window_count < run) return std::nullopt;
    for (std::size_t j = 0; j + run <= window_count; ++j) {
        bool all_have_data = true;
        double mean_sum = 0.0;
        for (std::size_t k = j; k < j + run; ++k) {
            if (counts[k] == 0) {
                all_have_data = false;
                break;
            }
            mean_sum += sums[k] / static_cast<double>(counts[k]);
        }
        if (!all_have_data) continue;

        const double mean = mean_sum / static_cast<double>(run);
        double var = 0.0;
        for (std::size_t k = j; k < j + run; ++k) {
            const double m = sums[k] / static_cast<double>(counts[k]);
            var += (m - mean) * (m - mean);
        }
        const double sd = std::sqrt(var / static_cast<double>(run));
        // Latencies are non-negative, so mean == 0 forces sd == 0.
        const bool stable = sd == 0.0 || (mean > 0.0 && sd / mean <= params.cv_threshold);
        if (stable) return (static_cast<double>(j) + static_cast<double>(run)) * params.window_s;
    }
    return std::nullopt;
}

MetricsBundle compute_metrics(const EventLog& log, const AdaptationParams& params) {
    MetricsBundle bundle;
    bundle.adaptation = params;
    for (const auto& e : log.entries) {
        switch (e.kind) {
            case EntryKind::detection: ++bundle.detections; break;
            case EntryKind::notification: ++bundle.notifications; break;
            case EntryKind::label:
                ++bundle.labels_total;
                if (e.value && *e.value == -1) ++bundle.labels_negative;
                break;
            case EntryKind::retrain: ++bundle.retrains; break;
            default: break;
        }
    }
    bundle.feedback_fpr = feedback_fpr(log);
    bundle.oracle_fpr = oracle_fpr(log);
    bundle.technical = technical_latency(log);
    bundle.organizational = organizational_latency(log);
    bundle.adaptation_time_s = adaptation_time(log, params);
    return bundle;
}

}  // namespace hitlsim
