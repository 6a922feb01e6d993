#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hitlsim {

enum class EntryKind {
    deployment,
    detection,
    notification,
    queue_insert,
    queue_remove,
    label,
    label_rejected,
    action,
    retrain,
};

const char* to_string(EntryKind kind);
std::optional<EntryKind> entry_kind_from_string(const std::string& name);

// One timestamped record. seq is strictly increasing, t_s non-decreasing.
// Which optional fields are set depends on the kind:
//   deployment     -
//   detection      event_id, clip_start_s, clip_end_s, is_true
//   notification   event_id
//   queue_insert   event_id, operator_id
//   queue_remove   event_id, operator_id
//   label          event_id, operator_id, value
//   label_rejected event_id, operator_id, value
//   action         event_id, operator_id
//   retrain        rate_before, rate_after, batch_labels
struct LogEntry {
    std::uint64_t seq = 0;
    double t_s = 0.0;
    EntryKind kind = EntryKind::deployment;
    std::optional<std::int64_t> event_id;
    std::optional<int> operator_id;
    std::optional<int> value;
    std::optional<double> clip_start_s;
    std::optional<double> clip_end_s;
    std::optional<bool> is_true;
    std::optional<double> rate_before;
    std::optional<double> rate_after;
    std::optional<std::int64_t> batch_labels;

    bool operator==(const LogEntry&) const = default;
};

struct EventLog {
    std::vector<LogEntry> entries;

    bool operator==(const EventLog&) const = default;
};

// Enforces the structural invariants above plus per-kind field presence and
// notification-before-label ordering. Throws ValidationError.
void validate(const EventLog& log);

}  // namespace hitlsim
