#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "hitlsim/EventLog.h"
#include "hitlsim/Events.h"

namespace hitlsim {

// All knobs of one simulation run. Rates are per simulated hour; delays in
// simulated seconds. notify delays are uniform on [min,max]; operator
// response delays are log-normal with the given median and sigma.
struct SimConfig {
    std::uint64_t seed = 1;
    double duration_s = 3600.0;
    int num_operators = 1;
    double true_event_rate_per_hr = 0.0;
    double false_alarm_rate_per_hr = 0.0;
    double clip_len_min_s = 5.0;
    double clip_len_max_s = 10.0;
    double notify_delay_min_s = 0.0;
    double notify_delay_max_s = 0.0;
    double response_delay_median_s = 30.0;
    double response_delay_sigma = 0.5;
    double operator_label_accuracy = 1.0;
    int retrain_batch_size = 50;
    double retrain_fp_decay = 1.0;
    SmoothingMode smoothing_mode = SmoothingMode::replace;

    bool operator==(const SimConfig&) const = default;
};

// Throws ValidationError naming the offending field.
void validate(const SimConfig& config);

// One dispatched alert over its lifetime. is_true_anomaly is the
// simulation's hidden ground truth; operators never see it.
struct AlertRecord {
    std::int64_t event_id = 0;
    double clip_start_s = 0.0;
    double clip_end_s = 0.0;
    double detected_at_s = 0.0;
    std::optional<double> notified_at_s;
    bool is_true_anomaly = false;
    std::optional<int> label;
};

struct FeedbackLabel {
    std::int64_t event_id = 0;
    int operator_id = 0;
    int value = 0;
    double labeled_at_s = 0.0;
};

struct ActionRecord {
    std::int64_t event_id = 0;
    int operator_id = 0;
    double acted_at_s = 0.0;
};

// The single seedable generator behind every stochastic draw. Transforms
// are hand-rolled on top of mt19937_64 so that identical seeds give
// identical streams on every platform:
//   uniform01:   (engine() >> 11) * 2^-53
//   uniform:     lo + uniform01 * (hi - lo)
//   exponential: -log(1 - uniform01) * mean
//   normal:      Box-Muller, two uniform01 draws per value
//   log-normal:  median * exp(sigma * normal)
//   bernoulli:   uniform01 < p
class SimRng {
public:
    explicit SimRng(std::uint64_t seed) : engine_(seed) {}

    double uniform01();
    double uniform(double lo, double hi);
    double exponential(double mean);
    double log_normal(double median, double sigma);
    bool bernoulli(double p);

private:
    std::mt19937_64 engine_;
};

// Alert/feedback pipeline state: alert table, one FIFO queue per operator,
// the append-only log, and the retraining accumulator. The scheduler in
// run_simulation drives it; tests drive it directly.
class SimState {
public:
    explicit SimState(const SimConfig& config);

    const SimConfig& config() const { return config_; }
    const EventLog& log() const { return log_; }
    const std::vector<FeedbackLabel>& labels() const { return labels_; }
    const std::vector<ActionRecord>& actions() const { return actions_; }
    const AlertRecord& alert(std::int64_t event_id) const;
    const std::deque<std::int64_t>& queue(int operator_id) const;
    double false_alarm_rate_per_hr() const { return false_alarm_rate_per_hr_; }
    int labels_since_retrain() const { return labels_since_retrain_; }

    void log_deployment(double t);

    // Registers the alert and logs its detection entry at detected_at_s.
    std::int64_t add_alert(double clip_start_s, double clip_end_s, double detected_at_s,
                           bool is_true_anomaly);

    // Logs the notification and fans the event out to every operator queue.
    void notify(std::int64_t event_id, double t);

    enum class LabelOutcome { accepted, rejected_already_labeled };

    // First label wins: records the label and the operator's action, then
    // removes the event from every queue. A second attempt is a logged
    // no-op. Throws SimError when the event is unknown, never notified, or
    // absent from the labeling operator's queue.
    LabelOutcome submit_label(std::int64_t event_id, int operator_id, int value, double t);

    bool retrain_due() const { return labels_since_retrain_ >= config_.retrain_batch_size; }

    // Applies the false-alarm decay, resets the accumulator, and logs the
    // old and new rates.
    void trigger_retraining(double t);

private:
    void append(LogEntry entry);

    SimConfig config_;
    EventLog log_;
    std::uint64_t next_seq_ = 0;
    std::int64_t next_event_id_ = 1;
    std::unordered_map<std::int64_t, AlertRecord> alerts_;
    std::vector<std::deque<std::int64_t>> queues_;
    std::vector<FeedbackLabel> labels_;
    std::vector<ActionRecord> actions_;
    int labels_since_retrain_ = 0;
    double false_alarm_rate_per_hr_ = 0.0;
};

// Runs the full deterministic discrete-event loop from t=0 (deployment) to
// config.duration_s. Identical (config, seed) gives an identical log.
EventLog run_simulation(const SimConfig& config);

}  // namespace hitlsim
