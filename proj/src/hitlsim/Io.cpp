#include "hitlsim/Io.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hitlsim/Errors.h"
#include "hitlsim/Text.h"

namespace hitlsim {

namespace {

struct Line {
    std::size_t number = 0;  // 1-based
    std::string_view text;   // trimmed
};

std::vector<Line> data_lines(std::string_view text, bool keep_comments = false) {
    std::vector<Line> lines;
    std::size_t number = 0;
    for (std::string_view raw : split(text, '\n')) {
        ++number;
        std::string_view t = trim(raw);
        if (t.empty()) continue;
        if (!keep_comments && t.front() == '#') continue;
        lines.push_back({number, t});
    }
    return lines;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw ParseError(source, line, what);
}

}  // namespace

std::vector<EventInterval> parse_intervals(std::string_view text, const std::string& source) {
    std::vector<EventInterval> out;
    bool first = true;
    for (const Line& line : data_lines(text)) {
        if (first && line.text == "start_frame,end_frame") {
            first = false;
            continue;
        }
        first = false;
        const auto parts = split(line.text, ',');
        if (parts.size() != 2) fail(source, line.number, "expected start_frame,end_frame");
        const auto start = parse_int(trim(parts[0]));
        const auto end = parse_int(trim(parts[1]));
        if (!start || !end) fail(source, line.number, "frame indices must be integers");
        if (*start < 0 || *end < 0) fail(source, line.number, "frame indices must be non-negative");
        if (*start > *end) {
            fail(source, line.number,
                 "interval start " + std::to_string(*start) + " exceeds end " + std::to_string(*end));
        }
        out.push_back({*start, *end});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string serialize_intervals(std::vector<EventInterval> intervals) {
    for (const auto& e : intervals) validate(e);
    std::sort(intervals.begin(), intervals.end());
    std::string out = "start_frame,end_frame\n";
    for (const auto& e : intervals) {
        out += std::to_string(e.start_frame);
        out += ',';
        out += std::to_string(e.end_frame);
        out += '\n';
    }
    return out;
}

FrameSeries parse_frames(std::string_view text, const std::string& source) {
    FrameSeries series;
    const auto lines = data_lines(text);
    if (lines.empty()) return series;

    const bool tabular = lines.front().text.find(',') != std::string_view::npos;
    if (!tabular) {
        if (lines.size() > 1) fail(source, lines[1].number, "bitstring form takes a single line");
        for (char c : lines.front().text) {
            if (c != '0' && c != '1') {
                fail(source, lines.front().number, std::string("invalid flag character '") + c + "'");
            }
            series.values.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return series;
    }

    std::int64_t expected = 0;
    for (const Line& line : lines) {
        const auto parts = split(line.text, ',');
        if (parts.size() != 2) fail(source, line.number, "expected frame_index,flag");
        const auto index = parse_int(trim(parts[0]));
        const auto flag = parse_int(trim(parts[1]));
        if (!index || !flag) fail(source, line.number, "frame_index and flag must be integers");
        if (*index != expected) {
            fail(source, line.number, "frame_index " + std::to_string(*index) +
                                          ": indices must be contiguous from 0 (expected " +
                                          std::to_string(expected) + ")");
        }
        if (*flag != 0 && *flag != 1) fail(source, line.number, "flag must be 0 or 1");
        series.values.push_back(static_cast<std::uint8_t>(*flag));
        ++expected;
    }
    return series;
}

std::string serialize_frames(const FrameSeries& series) {
    validate(series);
    if (series.values.empty()) return "";
    std::string out;
    out.reserve(series.values.size() + 1);
    for (std::uint8_t v : series.values) out += static_cast<char>('0' + v);
    out += '\n';
    return out;
}

namespace {

using nlohmann::json;

const std::set<std::string> kCommonKeys = {"seq", "t_s", "kind"};

const std::map<EntryKind, std::set<std::string>> kKindKeys = {
    {EntryKind::deployment, {}},
    {EntryKind::detection, {"event_id", "clip_start_s", "clip_end_s", "is_true"}},
    {EntryKind::notification, {"event_id"}},
    {EntryKind::queue_insert, {"event_id", "operator_id"}},
    {EntryKind::queue_remove, {"event_id", "operator_id"}},
    {EntryKind::label, {"event_id", "operator_id", "value"}},
    {EntryKind::label_rejected, {"event_id", "operator_id", "value"}},
    {EntryKind::action, {"event_id", "operator_id"}},
    {EntryKind::retrain, {"rate_before", "rate_after", "batch_labels"}},
};

LogEntry parse_log_line(const json& j, const std::string& source, std::size_t line) {
    if (!j.is_object()) fail(source, line, "log record must be a JSON object");
    for (const auto& key : kCommonKeys) {
        if (!j.contains(key)) fail(source, line, "missing field " + key);
    }
    if (!j["seq"].is_number_unsigned()) fail(source, line, "seq must be a non-negative integer");
    if (!j["t_s"].is_number()) fail(source, line, "t_s must be a number");
    if (!j["kind"].is_string()) fail(source, line, "kind must be a string");

    LogEntry e;
    e.seq = j["seq"].get<std::uint64_t>();
    e.t_s = j["t_s"].get<double>();
    const auto kind = entry_kind_from_string(j["kind"].get<std::string>());
    if (!kind) fail(source, line, "unknown kind \"" + j["kind"].get<std::string>() + "\"");
    e.kind = *kind;

    const auto& expected = kKindKeys.at(e.kind);
    for (const auto& [key, val] : j.items()) {
        if (kCommonKeys.count(key)) continue;
        if (!expected.count(key)) fail(source, line, "unexpected field " + key + " for kind " + to_string(e.kind));
    }
    for (const auto& key : expected) {
        if (!j.contains(key)) fail(source, line, "missing field " + key + " for kind " + to_string(e.kind));
    }

    auto get_int = [&](const char* key) {
        if (!j[key].is_number_integer()) fail(source, line, std::string(key) + " must be an integer");
        return j[key].get<std::int64_t>();
    };
    auto get_num = [&](const char* key) {
        if (!j[key].is_number()) fail(source, line, std::string(key) + " must be a number");
        return j[key].get<double>();
    };

    if (expected.count("event_id")) e.event_id = get_int("event_id");
    if (expected.count("operator_id")) e.operator_id = static_cast<int>(get_int("operator_id"));
    if (expected.count("value")) {
        const auto v = get_int("value");
        if (v != 1 && v != -1) fail(source, line, "value must be +1 or -1");
        e.value = static_cast<int>(v);
    }
    if (expected.count("clip_start_s")) e.clip_start_s = get_num("clip_start_s");
    if (expected.count("clip_end_s")) e.clip_end_s = get_num("clip_end_s");
    if (expected.count("is_true")) {
        if (!j["is_true"].is_boolean()) fail(source, line, "is_true must be a boolean");
        e.is_true = j["is_true"].get<bool>();
    }
    if (expected.count("rate_before")) e.rate_before = get_num("rate_before");
    if (expected.count("rate_after")) e.rate_after = get_num("rate_after");
    if (expected.count("batch_labels")) e.batch_labels = get_int("batch_labels");
    return e;
}

}  // namespace

EventLog parse_log(std::string_view text, const std::string& source) {
    EventLog log;
    std::set<std::int64_t> notified;
    for (const Line& line : data_lines(text, /*keep_comments=*/true)) {
        json j;
        try {
            j = json::parse(line.text);
        } catch (const json::parse_error& err) {
            fail(source, line.number, std::string("bad JSON: ") + err.what());
        }
        LogEntry e = parse_log_line(j, source, line.number);
        if (!log.entries.empty()) {
            const LogEntry& prev = log.entries.back();
            if (e.seq <= prev.seq) fail(source, line.number, "seq must be strictly increasing");
            if (e.t_s < prev.t_s) fail(source, line.number, "t_s must be non-decreasing");
        }
        if (e.kind == EntryKind::notification) notified.insert(*e.event_id);
        if (e.kind == EntryKind::label && !notified.count(*e.event_id)) {
            fail(source, line.number,
                 "label for event " + std::to_string(*e.event_id) + " without prior notification");
        }
        log.entries.push_back(std::move(e));
    }
    validate(log);
    return log;
}

std::string serialize_log(const EventLog& log) {
    validate(log);
    std::string out;
    for (const LogEntry& e : log.entries) {
        out += "{\"seq\":" + std::to_string(e.seq);
        out += ",\"t_s\":" + format_fixed3(e.t_s);
        out += ",\"kind\":\"" + std::string(to_string(e.kind)) + "\"";
        if (e.event_id) out += ",\"event_id\":" + std::to_string(*e.event_id);
        if (e.operator_id) out += ",\"operator_id\":" + std::to_string(*e.operator_id);
        if (e.value) out += ",\"value\":" + std::to_string(*e.value);
        if (e.clip_start_s) out += ",\"clip_start_s\":" + format_fixed3(*e.clip_start_s);
        if (e.clip_end_s) out += ",\"clip_end_s\":" + format_fixed3(*e.clip_end_s);
        if (e.is_true) out += std::string(",\"is_true\":") + (*e.is_true ? "true" : "false");
        if (e.rate_before) out += ",\"rate_before\":" + format_double(*e.rate_before);
        if (e.rate_after) out += ",\"rate_after\":" + format_double(*e.rate_after);
        if (e.batch_labels) out += ",\"batch_labels\":" + std::to_string(*e.batch_labels);
        out += "}\n";
    }
    return out;
}

SurveyResponseSet parse_survey(std::string_view text, const std::string& source) {
    SurveyResponseSet survey;
    std::optional<long long> scale_min;
    std::optional<long long> scale_max;
    std::optional<std::string> reverse_spec;
    std::size_t reverse_line = 0;
    std::vector<std::size_t> row_lines;
    bool header_seen = false;

    for (const Line& line : data_lines(text, /*keep_comments=*/true)) {
        if (line.text.front() == '#') {
            // Metadata directives; unknown '#' lines are plain comments.
            std::string_view body = trim(line.text.substr(1));
            const auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            const std::string_view key = trim(body.substr(0, eq));
            const std::string_view value = trim(body.substr(eq + 1));
            if (key == "scale_min") {
                scale_min = parse_int(value);
                if (!scale_min) fail(source, line.number, "scale_min must be an integer");
            } else if (key == "scale_max") {
                scale_max = parse_int(value);
                if (!scale_max) fail(source, line.number, "scale_max must be an integer");
            } else if (key == "reverse") {
                reverse_spec = std::string(value);
                reverse_line = line.number;
            }
            continue;
        }

        const auto parts = split(line.text, ',');
        if (!header_seen) {
            for (const auto& part : parts) {
                const std::string name(trim(part));
                if (name.empty()) fail(source, line.number, "empty item name in header");
                if (std::find(survey.item_names.begin(), survey.item_names.end(), name) !=
                    survey.item_names.end()) {
                    fail(source, line.number, "duplicate item name " + name);
                }
                survey.item_names.push_back(name);
            }
            header_seen = true;
            continue;
        }

        if (parts.size() != survey.item_names.size()) {
            fail(source, line.number, "expected " + std::to_string(survey.item_names.size()) +
                                          " scores, got " + std::to_string(parts.size()));
        }
        std::vector<int> row;
        for (std::size_t c = 0; c < parts.size(); ++c) {
            const auto score = parse_int(trim(parts[c]));
            if (!score) {
                fail(source, line.number,
                     "item " + survey.item_names[c] + " (column " + std::to_string(c + 1) +
                         "): score must be an integer");
            }
            row.push_back(static_cast<int>(*score));
        }
        survey.rows.push_back(std::move(row));
        row_lines.push_back(line.number);
    }

    if (!scale_min || !scale_max) fail(source, 1, "missing #scale_min/#scale_max declaration");
    if (!header_seen) fail(source, 1, "missing header row of item names");
    if (*scale_min >= *scale_max) fail(source, 1, "scale_min must be below scale_max");
    survey.scale_min = static_cast<int>(*scale_min);
    survey.scale_max = static_cast<int>(*scale_max);

    if (reverse_spec && !reverse_spec->empty()) {
        for (const auto& part : split(*reverse_spec, ',')) {
            const std::string name(trim(part));
            const auto it = std::find(survey.item_names.begin(), survey.item_names.end(), name);
            if (it == survey.item_names.end()) {
                fail(source, reverse_line, "reverse-coded item " + name + " not in header");
            }
            survey.reverse_coded.insert(
                static_cast<std::size_t>(std::distance(survey.item_names.begin(), it)));
        }
    }

    // Locate out-of-scale cells with their row/column before the generic check.
    for (std::size_t r = 0; r < survey.rows.size(); ++r) {
        for (std::size_t c = 0; c < survey.rows[r].size(); ++c) {
            const int score = survey.rows[r][c];
            if (score < survey.scale_min || score > survey.scale_max) {
                fail(source, row_lines[r],
                     "respondent " + std::to_string(r + 1) + ", item " + survey.item_names[c] +
                         ": score " + std::to_string(score) + " outside scale [" +
                         std::to_string(survey.scale_min) + "," + std::to_string(survey.scale_max) +
                         "]");
            }
        }
    }
    validate(survey);
    return survey;
}

std::string serialize_survey(const SurveyResponseSet& survey) {
    validate(survey);
    std::string out = "#scale_min=" + std::to_string(survey.scale_min) + "\n";
    out += "#scale_max=" + std::to_string(survey.scale_max) + "\n";
    out += "#reverse=";
    bool first = true;
    for (std::size_t idx : survey.reverse_coded) {
        if (!first) out += ',';
        out += survey.item_names[idx];
        first = false;
    }
    out += '\n';
    for (std::size_t c = 0; c < survey.item_names.size(); ++c) {
        if (c > 0) out += ',';
        out += survey.item_names[c];
    }
    out += '\n';
    for (const auto& row : survey.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += std::to_string(row[c]);
        }
        out += '\n';
    }
    return out;
}

namespace {

const std::set<std::string> kConfigSections = {"sim", "detector", "operators", "retrain", "postprocess"};

}  // namespace

SimConfig parse_sim_config(std::string_view text, const std::string& source) {
    SimConfig config;
    std::set<std::string> seen;
    for (const Line& line : data_lines(text)) {
        if (line.text.front() == '[') {
            if (line.text.back() != ']') fail(source, line.number, "unterminated section header");
            const std::string section(trim(line.text.substr(1, line.text.size() - 2)));
            if (!kConfigSections.count(section)) fail(source, line.number, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.text.find('=');
        if (eq == std::string_view::npos) fail(source, line.number, "expected key = value");
        const std::string key(trim(line.text.substr(0, eq)));
        const std::string_view value = trim(line.text.substr(eq + 1));
        if (seen.count(key)) fail(source, line.number, "duplicate key " + key);
        seen.insert(key);

        auto as_double = [&]() {
            const auto v = parse_double(value);
            if (!v) fail(source, line.number, key + " must be a number");
            return *v;
        };
        auto as_int = [&]() {
            const auto v = parse_int(value);
            if (!v) fail(source, line.number, key + " must be an integer");
            return *v;
        };

        if (key == "seed") {
            const auto v = parse_int(value);
            if (!v || *v < 0) fail(source, line.number, "seed must be a non-negative integer");
            config.seed = static_cast<std::uint64_t>(*v);
        } else if (key == "duration_s") {
            config.duration_s = as_double();
        } else if (key == "num_operators") {
            config.num_operators = static_cast<int>(as_int());
        } else if (key == "true_event_rate_per_hr") {
            config.true_event_rate_per_hr = as_double();
        } else if (key == "false_alarm_rate_per_hr") {
            config.false_alarm_rate_per_hr = as_double();
        } else if (key == "clip_len_min_s") {
            config.clip_len_min_s = as_double();
        } else if (key == "clip_len_max_s") {
            config.clip_len_max_s = as_double();
        } else if (key == "notify_delay_min_s") {
            config.notify_delay_min_s = as_double();
        } else if (key == "notify_delay_max_s") {
            config.notify_delay_max_s = as_double();
        } else if (key == "response_delay_median_s") {
            config.response_delay_median_s = as_double();
        } else if (key == "response_delay_sigma") {
            config.response_delay_sigma = as_double();
        } else if (key == "operator_label_accuracy") {
            config.operator_label_accuracy = as_double();
        } else if (key == "retrain_batch_size") {
            config.retrain_batch_size = static_cast<int>(as_int());
        } else if (key == "retrain_fp_decay") {
            config.retrain_fp_decay = as_double();
        } else if (key == "smoothing_mode") {
            if (value == "replace") {
                config.smoothing_mode = SmoothingMode::replace;
            } else if (value == "set_only") {
                config.smoothing_mode = SmoothingMode::set_only;
            } else {
                fail(source, line.number, "smoothing_mode must be replace or set_only");
            }
        } else {
            fail(source, line.number, "unknown key " + key);
        }
    }
    validate(config);
    return config;
}

std::string serialize_sim_config(const SimConfig& config) {
    std::string out;
    out += "[sim]\n";
    out += "seed = " + std::to_string(config.seed) + "\n";
    out += "duration_s = " + format_double(config.duration_s) + "\n";
    out += "num_operators = " + std::to_string(config.num_operators) + "\n";
    out += "\n[detector]\n";
    out += "true_event_rate_per_hr = " + format_double(config.true_event_rate_per_hr) + "\n";
    out += "false_alarm_rate_per_hr = " + format_double(config.false_alarm_rate_per_hr) + "\n";
    out += "clip_len_min_s = " + format_double(config.clip_len_min_s) + "\n";
    out += "clip_len_max_s = " + format_double(config.clip_len_max_s) + "\n";
    out += "notify_delay_min_s = " + format_double(config.notify_delay_min_s) + "\n";
    out += "notify_delay_max_s = " + format_double(config.notify_delay_max_s) + "\n";
    out += "\n[operators]\n";
    out += "response_delay_median_s = " + format_double(config.response_delay_median_s) + "\n";
    out += "response_delay_sigma = " + format_double(config.response_delay_sigma) + "\n";
    out += "operator_label_accuracy = " + format_double(config.operator_label_accuracy) + "\n";
    out += "\n[retrain]\n";
    out += "retrain_batch_size = " + std::to_string(config.retrain_batch_size) + "\n";
    out += "retrain_fp_decay = " + format_double(config.retrain_fp_decay) + "\n";
    out += "\n[postprocess]\n";
    out += std::string("smoothing_mode = ") +
           (config.smoothing_mode == SmoothingMode::replace ? "replace" : "set_only") + "\n";
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError("write failed: " + path);
}

std::vector<EventInterval> read_intervals(const std::string& path) {
    return parse_intervals(read_text_file(path), path);
}

void write_intervals(const std::vector<EventInterval>& intervals, const std::string& path) {
    write_text_file(path, serialize_intervals(intervals));
}

FrameSeries read_frames(const std::string& path) {
    return parse_frames(read_text_file(path), path);
}

void write_frames(const FrameSeries& series, const std::string& path) {
    write_text_file(path, serialize_frames(series));
}

EventLog read_log(const std::string& path) {
    return parse_log(read_text_file(path), path);
}

void write_log(const EventLog& log, const std::string& path) {
    write_text_file(path, serialize_log(log));
}

SurveyResponseSet read_survey(const std::string& path) {
    return parse_survey(read_text_file(path), path);
}

SimConfig read_sim_config(const std::string& path) {
    return parse_sim_config(read_text_file(path), path);
}

}  // namespace hitlsim
