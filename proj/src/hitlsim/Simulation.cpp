#include "hitlsim/Simulation.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "hitlsim/Errors.h"
#include "hitlsim/Text.h"

namespace hitlsim {

void validate(const SimConfig& config) {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ValidationError("config field " + field + ": " + why);
    };
    if (!(config.duration_s > 0.0)) fail("duration_s", "must be > 0");
    if (config.num_operators < 1) fail("num_operators", "must be >= 1");
    if (config.true_event_rate_per_hr < 0.0) fail("true_event_rate_per_hr", "must be >= 0");
    if (config.false_alarm_rate_per_hr < 0.0) fail("false_alarm_rate_per_hr", "must be >= 0");
    if (config.clip_len_min_s < 5.0) fail("clip_len_min_s", "must be >= 5");
    if (config.clip_len_max_s > 10.0) fail("clip_len_max_s", "must be <= 10");
    if (config.clip_len_min_s > config.clip_len_max_s) fail("clip_len_min_s", "exceeds clip_len_max_s");
    if (config.notify_delay_min_s < 0.0) fail("notify_delay_min_s", "must be >= 0");
    if (config.notify_delay_min_s > config.notify_delay_max_s) fail("notify_delay_min_s", "exceeds notify_delay_max_s");
    if (!(config.response_delay_median_s > 0.0)) fail("response_delay_median_s", "must be > 0");
    if (config.response_delay_sigma < 0.0) fail("response_delay_sigma", "must be >= 0");
    if (config.operator_label_accuracy < 0.0 || config.operator_label_accuracy > 1.0) {
        fail("operator_label_accuracy", "must be in [0,1]");
    }
    if (config.retrain_batch_size < 1) fail("retrain_batch_size", "must be >= 1");
    if (!(config.retrain_fp_decay > 0.0) || config.retrain_fp_decay > 1.0) {
        fail("retrain_fp_decay", "must be in (0,1]");
    }
}

double SimRng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SimRng::uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
}

double SimRng::exponential(double mean) {
    return -std::log(1.0 - uniform01()) * mean;
}

double SimRng::log_normal(double median, double sigma) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double z = std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    return median * std::exp(sigma * z);
}

bool SimRng::bernoulli(double p) {
    return uniform01() < p;
}

SimState::SimState(const SimConfig& config)
    : config_(config),
      queues_(static_cast<std::size_t>(config.num_operators)),
      false_alarm_rate_per_hr_(config.false_alarm_rate_per_hr) {
    validate(config);
}

const AlertRecord& SimState::alert(std::int64_t event_id) const {
    auto it = alerts_.find(event_id);
    if (it == alerts_.end()) throw SimError("unknown event " + std::to_string(event_id));
    return it->second;
}

const std::deque<std::int64_t>& SimState::queue(int operator_id) const {
    if (operator_id < 0 || operator_id >= config_.num_operators) {
        throw SimError("unknown operator " + std::to_string(operator_id));
    }
    return queues_[static_cast<std::size_t>(operator_id)];
}

void SimState::append(LogEntry entry) {
    entry.seq = next_seq_++;
    log_.entries.push_back(std::move(entry));
}

void SimState::log_deployment(double t) {
    LogEntry e;
    e.t_s = t;
    e.kind = EntryKind::deployment;
    append(std::move(e));
}

std::int64_t SimState::add_alert(double clip_start_s, double clip_end_s, double detected_at_s,
                                 bool is_true_anomaly) {
    AlertRecord record;
    record.event_id = next_event_id_++;
    record.clip_start_s = clip_start_s;
    record.clip_end_s = clip_end_s;
    record.detected_at_s = detected_at_s;
    record.is_true_anomaly = is_true_anomaly;
    alerts_.emplace(record.event_id, record);

    LogEntry e;
    e.t_s = detected_at_s;
    e.kind = EntryKind::detection;
    e.event_id = record.event_id;
    e.clip_start_s = clip_start_s;
    e.clip_end_s = clip_end_s;
    e.is_true = is_true_anomaly;
    append(std::move(e));
    return record.event_id;
}

void SimState::notify(std::int64_t event_id, double t) {
    auto it = alerts_.find(event_id);
    if (it == alerts_.end()) throw SimError("notify: unknown event " + std::to_string(event_id));
    it->second.notified_at_s = t;

    LogEntry e;
    e.t_s = t;
    e.kind = EntryKind::notification;
    e.event_id = event_id;
    append(std::move(e));

    for (int op = 0; op < config_.num_operators; ++op) {
        queues_[static_cast<std::size_t>(op)].push_back(event_id);
        LogEntry q;
        q.t_s = t;
        q.kind = EntryKind::queue_insert;
        q.event_id = event_id;
        q.operator_id = op;
        append(std::move(q));
    }
}

SimState::LabelOutcome SimState::submit_label(std::int64_t event_id, int operator_id, int value,
                                              double t) {
    if (value != 1 && value != -1) throw SimError("label value must be +1 or -1");
    auto it = alerts_.find(event_id);
    if (it == alerts_.end()) throw SimError("label: unknown event " + std::to_string(event_id));
    if (operator_id < 0 || operator_id >= config_.num_operators) {
        throw SimError("label: unknown operator " + std::to_string(operator_id));
    }

    if (it->second.label.has_value()) {
        LogEntry e;
        e.t_s = t;
        e.kind = EntryKind::label_rejected;
        e.event_id = event_id;
        e.operator_id = operator_id;
        e.value = value;
        append(std::move(e));
        return LabelOutcome::rejected_already_labeled;
    }

    auto& own_queue = queues_[static_cast<std::size_t>(operator_id)];
    if (std::find(own_queue.begin(), own_queue.end(), event_id) == own_queue.end()) {
        throw SimError("label: event " + std::to_string(event_id) + " not in queue of operator " +
                       std::to_string(operator_id));
    }

    it->second.label = value;
    labels_.push_back({event_id, operator_id, value, t});
    actions_.push_back({event_id, operator_id, t});
    ++labels_since_retrain_;

    LogEntry e;
    e.t_s = t;
    e.kind = EntryKind::label;
    e.event_id = event_id;
    e.operator_id = operator_id;
    e.value = value;
    append(std::move(e));

    LogEntry a;
    a.t_s = t;
    a.kind = EntryKind::action;
    a.event_id = event_id;
    a.operator_id = operator_id;
    append(std::move(a));

    // First label wins: the event leaves every queue that still holds it.
    for (int op = 0; op < config_.num_operators; ++op) {
        auto& q = queues_[static_cast<std::size_t>(op)];
        auto pos = std::find(q.begin(), q.end(), event_id);
        if (pos == q.end()) continue;
        q.erase(pos);
        LogEntry r;
        r.t_s = t;
        r.kind = EntryKind::queue_remove;
        r.event_id = event_id;
        r.operator_id = op;
        append(std::move(r));
    }
    return LabelOutcome::accepted;
}

void SimState::trigger_retraining(double t) {
    const double before = false_alarm_rate_per_hr_;
    false_alarm_rate_per_hr_ = before * config_.retrain_fp_decay;

    LogEntry e;
    e.t_s = t;
    e.kind = EntryKind::retrain;
    e.rate_before = before;
    e.rate_after = false_alarm_rate_per_hr_;
    e.batch_labels = labels_since_retrain_;
    append(std::move(e));
    labels_since_retrain_ = 0;
}

namespace {

enum class StepKind { arrival_true, arrival_false, detect, notify, wake };

struct Step {
    double t = 0.0;
    std::uint64_t order = 0;
    StepKind kind = StepKind::arrival_true;
    double clip_start_s = 0.0;
    double clip_end_s = 0.0;
    double notified_at_s = 0.0;
    bool is_true = false;
    std::int64_t event_id = 0;
    int operator_id = 0;
};

struct StepAfter {
    bool operator()(const Step& a, const Step& b) const {
        if (a.t != b.t) return a.t > b.t;
        return a.order > b.order;
    }
};

// Scheduler for run_simulation. Draw order is fixed: each arrival draws
// clip length, notify delay, then the next inter-arrival gap of its
// stream; each notification starts idle operators in ascending id order
// (one response-delay draw per operator started); each labeling draws one
// accuracy coin and, when the queue is still non-empty, the next
// response delay.
class Scheduler {
public:
    Scheduler(const SimConfig& config, SimState& state)
        : config_(config), state_(state), rng_(config.seed),
          busy_(static_cast<std::size_t>(config.num_operators), false) {}

    void run() {
        state_.log_deployment(0.0);
        schedule_next_arrival(StepKind::arrival_true, 0.0, config_.true_event_rate_per_hr);
        schedule_next_arrival(StepKind::arrival_false, 0.0, state_.false_alarm_rate_per_hr());

        while (!steps_.empty()) {
            Step step = steps_.top();
            if (step.t > config_.duration_s) break;
            steps_.pop();
            switch (step.kind) {
                case StepKind::arrival_true:
                case StepKind::arrival_false: on_arrival(step); break;
                case StepKind::detect: on_detect(step); break;
                case StepKind::notify: on_notify(step); break;
                case StepKind::wake: on_wake(step); break;
            }
        }
    }

private:
    void push(Step step) {
        if (step.t > config_.duration_s) return;
        step.order = next_order_++;
        steps_.push(step);
    }

    void schedule_next_arrival(StepKind kind, double now, double rate_per_hr) {
        if (rate_per_hr <= 0.0) return;
        const double gap = rng_.exponential(3600.0 / rate_per_hr);
        Step step;
        step.t = quantize_ms(now + gap);
        step.kind = kind;
        push(step);
    }

    void on_arrival(const Step& step) {
        const double clip_len = rng_.uniform(config_.clip_len_min_s, config_.clip_len_max_s);
        const double notify_delay = rng_.uniform(config_.notify_delay_min_s, config_.notify_delay_max_s);

        Step detect;
        detect.t = quantize_ms(step.t + clip_len);
        detect.kind = StepKind::detect;
        detect.clip_start_s = step.t;
        detect.clip_end_s = detect.t;
        detect.notified_at_s = quantize_ms(detect.t + notify_delay);
        detect.is_true = step.kind == StepKind::arrival_true;
        push(detect);

        const double rate = step.kind == StepKind::arrival_true ? config_.true_event_rate_per_hr
                                                                : state_.false_alarm_rate_per_hr();
        schedule_next_arrival(step.kind, step.t, rate);
    }

    void on_detect(const Step& step) {
        const std::int64_t id =
            state_.add_alert(step.clip_start_s, step.clip_end_s, step.t, step.is_true);
        Step notify;
        notify.t = step.notified_at_s;
        notify.kind = StepKind::notify;
        notify.event_id = id;
        push(notify);
    }

    void on_notify(const Step& step) {
        state_.notify(step.event_id, step.t);
        for (int op = 0; op < config_.num_operators; ++op) {
            if (!busy_[static_cast<std::size_t>(op)]) start_response(op, step.t);
        }
    }

    void start_response(int op, double now) {
        busy_[static_cast<std::size_t>(op)] = true;
        const double delay =
            rng_.log_normal(config_.response_delay_median_s, config_.response_delay_sigma);
        Step wake;
        wake.t = quantize_ms(now + delay);
        wake.kind = StepKind::wake;
        wake.operator_id = op;
        push(wake);
    }

    void on_wake(const Step& step) {
        const int op = step.operator_id;
        const auto& queue = state_.queue(op);
        if (queue.empty()) {
            busy_[static_cast<std::size_t>(op)] = false;
            return;
        }
        const std::int64_t event_id = queue.front();
        const bool correct = rng_.bernoulli(config_.operator_label_accuracy);
        const bool is_true = state_.alert(event_id).is_true_anomaly;
        const int value = (is_true == correct) ? 1 : -1;
        state_.submit_label(event_id, op, value, step.t);
        if (state_.retrain_due()) state_.trigger_retraining(step.t);

        if (!state_.queue(op).empty()) {
            start_response(op, step.t);
        } else {
            busy_[static_cast<std::size_t>(op)] = false;
        }
    }

    const SimConfig& config_;
    SimState& state_;
    SimRng rng_;
    std::vector<bool> busy_;
    std::priority_queue<Step, std::vector<Step>, StepAfter> steps_;
    std::uint64_t next_order_ = 0;
};

}  // namespace

EventLog run_simulation(const SimConfig& config) {
    validate(config);
    SimState state(config);
    Scheduler scheduler(config, state);
    scheduler.run();
    return state.log();
}

}  // namespace hitlsim
