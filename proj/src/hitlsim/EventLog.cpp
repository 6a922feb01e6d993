#include "hitlsim/EventLog.h"

#include <set>

#include "hitlsim/Errors.h"

namespace hitlsim {

const char* to_string(EntryKind kind) {
    switch (kind) {
        case EntryKind::deployment: return "deployment";
        case EntryKind::detection: return "detection";
        case EntryKind::notification: return "notification";
        case EntryKind::queue_insert: return "queue_insert";
        case EntryKind::queue_remove: return "queue_remove";
        case EntryKind::label: return "label";
        case EntryKind::label_rejected: return "label_rejected";
        case EntryKind::action: return "action";
        case EntryKind::retrain: return "retrain";
    }
    return "unknown";
}

std::optional<EntryKind> entry_kind_from_string(const std::string& name) {
    static const std::pair<const char*, EntryKind> table[] = {
        {"deployment", EntryKind::deployment},   {"detection", EntryKind::detection},
        {"notification", EntryKind::notification}, {"queue_insert", EntryKind::queue_insert},
        {"queue_remove", EntryKind::queue_remove}, {"label", EntryKind::label},
        {"label_rejected", EntryKind::label_rejected}, {"action", EntryKind::action},
        {"retrain", EntryKind::retrain},
    };
    for (const auto& [text, kind] : table) {
        if (name == text) return kind;
    }
    return std::nullopt;
}

namespace {

void require(bool ok, std::uint64_t seq, const std::string& what) {
    if (!ok) throw ValidationError("log entry seq " + std::to_string(seq) + ": " + what);
}

void validate_entry_fields(const LogEntry& e) {
    const bool needs_event = e.kind != EntryKind::deployment && e.kind != EntryKind::retrain;
    require(e.event_id.has_value() == needs_event, e.seq,
            needs_event ? "missing event_id" : "unexpected event_id");

    const bool needs_operator = e.kind == EntryKind::queue_insert || e.kind == EntryKind::queue_remove ||
                                e.kind == EntryKind::label || e.kind == EntryKind::label_rejected ||
                                e.kind == EntryKind::action;
    require(e.operator_id.has_value() == needs_operator, e.seq,
            needs_operator ? "missing operator_id" : "unexpected operator_id");

    const bool needs_value = e.kind == EntryKind::label || e.kind == EntryKind::label_rejected;
    require(e.value.has_value() == needs_value, e.seq,
            needs_value ? "missing value" : "unexpected value");
    if (e.value) require(*e.value == 1 || *e.value == -1, e.seq, "label value must be +1 or -1");

    const bool is_detection = e.kind == EntryKind::detection;
    require(e.clip_start_s.has_value() == is_detection, e.seq, "clip_start_s only on detection");
    require(e.clip_end_s.has_value() == is_detection, e.seq, "clip_end_s only on detection");
    require(e.is_true.has_value() == is_detection, e.seq, "is_true only on detection");
    if (is_detection) {
        require(*e.clip_start_s <= *e.clip_end_s, e.seq, "clip_start_s exceeds clip_end_s");
    }

    const bool is_retrain = e.kind == EntryKind::retrain;
    require(e.rate_before.has_value() == is_retrain, e.seq, "rate_before only on retrain");
    require(e.rate_after.has_value() == is_retrain, e.seq, "rate_after only on retrain");
    require(e.batch_labels.has_value() == is_retrain, e.seq, "batch_labels only on retrain");
}

}  // namespace

void validate(const EventLog& log) {
    std::set<std::int64_t> notified;
    for (std::size_t i = 0; i < log.entries.size(); ++i) {
        const LogEntry& e = log.entries[i];
        validate_entry_fields(e);
        if (i > 0) {
            const LogEntry& prev = log.entries[i - 1];
            require(e.seq > prev.seq, e.seq, "seq not strictly increasing");
            require(e.t_s >= prev.t_s, e.seq, "timestamp decreased");
        }
        if (e.kind == EntryKind::notification) notified.insert(*e.event_id);
        if (e.kind == EntryKind::label) {
            require(notified.count(*e.event_id) > 0, e.seq,
                    "label for event " + std::to_string(*e.event_id) + " without prior notification");
        }
    }
}

}  // namespace hitlsim
