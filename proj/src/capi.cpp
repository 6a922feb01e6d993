#include "hitlsim/hitlsim.h"

#include <cstring>
#include <string>
#include <vector>

#include "hitlsim/Errors.h"
#include "hitlsim/EventLog.h"
#include "hitlsim/Events.h"
#include "hitlsim/Io.h"
#include "hitlsim/Matching.h"
#include "hitlsim/Metrics.h"
#include "hitlsim/Render.h"
#include "hitlsim/Simulation.h"
#include "hitlsim/Survey.h"

struct hitl_frames {
    hitlsim::FrameSeries series;
};
struct hitl_intervals {
    std::vector<hitlsim::EventInterval> intervals;
};
struct hitl_match {
    hitlsim::MatchReport report;
};
struct hitl_config {
    hitlsim::SimConfig config;
};
struct hitl_log {
    hitlsim::EventLog log;
};
struct hitl_survey {
    hitlsim::SurveyResponseSet survey;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

// Runs the body, translating exceptions into status codes. Input-shaped
// failures (validation, parsing, state misuse) map to INVALID_INPUT.
template <typename Fn>
hitl_status guarded(Fn&& fn) {
    try {
        fn();
        return HITL_OK;
    } catch (const hitlsim::ValidationError& e) {
        set_error(e.what());
        return HITL_ERROR_INVALID_INPUT;
    } catch (const hitlsim::ParseError& e) {
        set_error(e.what());
        return HITL_ERROR_INVALID_INPUT;
    } catch (const hitlsim::SimError& e) {
        set_error(e.what());
        return HITL_ERROR_INVALID_INPUT;
    } catch (const std::exception& e) {
        set_error(e.what());
        return HITL_ERROR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return HITL_ERROR_INTERNAL;
    }
}

hitl_status require(bool ok, const char* message) {
    if (ok) return HITL_OK;
    set_error(message);
    return HITL_ERROR_INVALID_INPUT;
}

char* copy_string(const std::string& text) {
    char* out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

hitl_status parse_mode(const char* mode, hitlsim::SmoothingMode& out) {
    if (mode == nullptr || std::strcmp(mode, "replace") == 0) {
        out = hitlsim::SmoothingMode::replace;
        return HITL_OK;
    }
    if (std::strcmp(mode, "set_only") == 0) {
        out = hitlsim::SmoothingMode::set_only;
        return HITL_OK;
    }
    set_error("mode must be replace or set_only");
    return HITL_ERROR_INVALID_INPUT;
}

hitl_status parse_format(const char* format, hitlsim::ReportFormat& out) {
    if (format == nullptr || std::strcmp(format, "table") == 0) {
        out = hitlsim::ReportFormat::table;
        return HITL_OK;
    }
    if (std::strcmp(format, "json") == 0) {
        out = hitlsim::ReportFormat::json;
        return HITL_OK;
    }
    set_error("format must be json or table");
    return HITL_ERROR_INVALID_INPUT;
}

}  // namespace

extern "C" {

const char* hitl_version(void) { return "0.1.0"; }

const char* hitl_last_error(void) { return g_last_error.c_str(); }

void hitl_string_free(char* text) { delete[] text; }

/* ---- frames ---- */

hitl_status hitl_frames_read(const char* path, hitl_frames** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new hitl_frames{hitlsim::read_frames(path)}; });
}

hitl_status hitl_frames_from_flags(const uint8_t* flags, size_t count, hitl_frames** out) {
    if (auto s = require(out && (flags || count == 0), "flags and out must be non-null")) return s;
    return guarded([&] {
        hitlsim::FrameSeries series;
        series.values.assign(flags, flags + count);
        hitlsim::validate(series);
        *out = new hitl_frames{std::move(series)};
    });
}

hitl_status hitl_frames_write(const hitl_frames* frames, const char* path) {
    if (auto s = require(frames && path, "frames and path must be non-null")) return s;
    return guarded([&] { hitlsim::write_frames(frames->series, path); });
}

size_t hitl_frames_length(const hitl_frames* frames) {
    return frames ? frames->series.values.size() : 0;
}

hitl_status hitl_frames_get(const hitl_frames* frames, size_t index, uint8_t* out_flag) {
    if (auto s = require(frames && out_flag, "frames and out_flag must be non-null")) return s;
    if (auto s = require(index < frames->series.values.size(), "frame index out of range")) return s;
    *out_flag = frames->series.values[index];
    return HITL_OK;
}

void hitl_frames_free(hitl_frames* frames) { delete frames; }

hitl_status hitl_smooth(const hitl_frames* frames, const char* mode, hitl_frames** out) {
    if (auto s = require(frames && out, "frames and out must be non-null")) return s;
    hitlsim::SmoothingMode m;
    if (auto s = parse_mode(mode, m)) return s;
    return guarded([&] { *out = new hitl_frames{hitlsim::smooth(frames->series, m)}; });
}

hitl_status hitl_postprocess(const hitl_frames* frames, const char* mode, hitl_intervals** out) {
    if (auto s = require(frames && out, "frames and out must be non-null")) return s;
    hitlsim::SmoothingMode m;
    if (auto s = parse_mode(mode, m)) return s;
    return guarded([&] { *out = new hitl_intervals{hitlsim::postprocess(frames->series, m)}; });
}

/* ---- intervals ---- */

hitl_status hitl_intervals_read(const char* path, hitl_intervals** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new hitl_intervals{hitlsim::read_intervals(path)}; });
}

hitl_status hitl_intervals_write(const hitl_intervals* intervals, const char* path) {
    if (auto s = require(intervals && path, "intervals and path must be non-null")) return s;
    return guarded([&] { hitlsim::write_intervals(intervals->intervals, path); });
}

hitl_status hitl_intervals_from_pairs(const int64_t* starts, const int64_t* ends, size_t count,
                                      hitl_intervals** out) {
    if (auto s = require(out && (count == 0 || (starts && ends)), "starts, ends, out must be non-null"))
        return s;
    return guarded([&] {
        std::vector<hitlsim::EventInterval> list;
        list.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            hitlsim::EventInterval interval{starts[i], ends[i]};
            hitlsim::validate(interval);
            list.push_back(interval);
        }
        *out = new hitl_intervals{std::move(list)};
    });
}

size_t hitl_intervals_count(const hitl_intervals* intervals) {
    return intervals ? intervals->intervals.size() : 0;
}

hitl_status hitl_intervals_get(const hitl_intervals* intervals, size_t index, int64_t* out_start,
                               int64_t* out_end) {
    if (auto s = require(intervals && out_start && out_end, "arguments must be non-null")) return s;
    if (auto s = require(index < intervals->intervals.size(), "interval index out of range")) return s;
    *out_start = intervals->intervals[index].start_frame;
    *out_end = intervals->intervals[index].end_frame;
    return HITL_OK;
}

void hitl_intervals_free(hitl_intervals* intervals) { delete intervals; }

/* ---- evaluation ---- */

hitl_status hitl_iou(int64_t a_start, int64_t a_end, int64_t b_start, int64_t b_end, double* out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] { *out = hitlsim::iou({a_start, a_end}, {b_start, b_end}); });
}

hitl_status hitl_match_events(const hitl_intervals* gt, const hitl_intervals* pred,
                              double iou_threshold, hitl_match** out) {
    if (auto s = require(gt && pred && out, "gt, pred, out must be non-null")) return s;
    return guarded([&] {
        *out = new hitl_match{hitlsim::match_events(gt->intervals, pred->intervals, iou_threshold)};
    });
}

hitl_status hitl_match_counts(const hitl_match* match, uint64_t* out_gt, uint64_t* out_pred,
                              uint64_t* out_tp, uint64_t* out_fp, uint64_t* out_fn) {
    if (auto s = require(match != nullptr, "match must be non-null")) return s;
    if (out_gt) *out_gt = match->report.gt_count;
    if (out_pred) *out_pred = match->report.pred_count;
    if (out_tp) *out_tp = match->report.tp;
    if (out_fp) *out_fp = match->report.fp;
    if (out_fn) *out_fn = match->report.fn;
    return HITL_OK;
}

hitl_status hitl_match_precision(const hitl_match* match, double* out, int* out_present) {
    if (auto s = require(match && out && out_present, "arguments must be non-null")) return s;
    *out_present = match->report.precision.has_value() ? 1 : 0;
    *out = match->report.precision.value_or(0.0);
    return HITL_OK;
}

hitl_status hitl_match_recall(const hitl_match* match, double* out, int* out_present) {
    if (auto s = require(match && out && out_present, "arguments must be non-null")) return s;
    *out_present = match->report.recall.has_value() ? 1 : 0;
    *out = match->report.recall.value_or(0.0);
    return HITL_OK;
}

hitl_status hitl_match_render(const hitl_match* match, const char* format, char** out_text) {
    if (auto s = require(match && out_text, "match and out_text must be non-null")) return s;
    hitlsim::ReportFormat f;
    if (auto s = parse_format(format, f)) return s;
    return guarded([&] { *out_text = copy_string(hitlsim::render_match_report(match->report, f)); });
}

void hitl_match_free(hitl_match* match) { delete match; }

/* ---- simulation ---- */

hitl_status hitl_config_default(hitl_config** out) {
    if (auto s = require(out != nullptr, "out must be non-null")) return s;
    return guarded([&] { *out = new hitl_config{}; });
}

hitl_status hitl_config_read(const char* path, hitl_config** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new hitl_config{hitlsim::read_sim_config(path)}; });
}

hitl_status hitl_config_set_seed(hitl_config* config, uint64_t seed) {
    if (auto s = require(config != nullptr, "config must be non-null")) return s;
    config->config.seed = seed;
    return HITL_OK;
}

hitl_status hitl_config_render(const hitl_config* config, char** out_text) {
    if (auto s = require(config && out_text, "config and out_text must be non-null")) return s;
    return guarded([&] { *out_text = copy_string(hitlsim::serialize_sim_config(config->config)); });
}

void hitl_config_free(hitl_config* config) { delete config; }

hitl_status hitl_simulate(const hitl_config* config, hitl_log** out) {
    if (auto s = require(config && out, "config and out must be non-null")) return s;
    return guarded([&] { *out = new hitl_log{hitlsim::run_simulation(config->config)}; });
}

/* ---- logs ---- */

hitl_status hitl_log_read(const char* path, hitl_log** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new hitl_log{hitlsim::read_log(path)}; });
}

hitl_status hitl_log_write(const hitl_log* log, const char* path) {
    if (auto s = require(log && path, "log and path must be non-null")) return s;
    return guarded([&] { hitlsim::write_log(log->log, path); });
}

size_t hitl_log_size(const hitl_log* log) { return log ? log->log.entries.size() : 0; }

hitl_status hitl_log_summary_render(const hitl_log* log, const char* format, char** out_text) {
    if (auto s = require(log && out_text, "log and out_text must be non-null")) return s;
    hitlsim::ReportFormat f;
    if (auto s = parse_format(format, f)) return s;
    return guarded([&] { *out_text = copy_string(hitlsim::render_sim_summary(log->log, f)); });
}

void hitl_log_free(hitl_log* log) { delete log; }

/* ---- metrics ---- */

hitl_status hitl_feedback_fpr(const hitl_log* log, double* out, int* out_present) {
    if (auto s = require(log && out && out_present, "arguments must be non-null")) return s;
    return guarded([&] {
        const auto value = hitlsim::feedback_fpr(log->log);
        *out_present = value.has_value() ? 1 : 0;
        *out = value.value_or(0.0);
    });
}

hitl_status hitl_oracle_fpr(const hitl_log* log, double* out, int* out_present) {
    if (auto s = require(log && out && out_present, "arguments must be non-null")) return s;
    return guarded([&] {
        const auto value = hitlsim::oracle_fpr(log->log);
        *out_present = value.has_value() ? 1 : 0;
        *out = value.value_or(0.0);
    });
}

hitl_status hitl_adaptation_time(const hitl_log* log, double window_s, double cv_threshold,
                                 int stable_windows, double* out, int* out_present) {
    if (auto s = require(log && out && out_present, "arguments must be non-null")) return s;
    return guarded([&] {
        const auto value =
            hitlsim::adaptation_time(log->log, {window_s, cv_threshold, stable_windows});
        *out_present = value.has_value() ? 1 : 0;
        *out = value.value_or(0.0);
    });
}

hitl_status hitl_metrics_render(const hitl_log* log, double window_s, double cv_threshold,
                                int stable_windows, const char* format, char** out_text) {
    if (auto s = require(log && out_text, "log and out_text must be non-null")) return s;
    hitlsim::ReportFormat f;
    if (auto s = parse_format(format, f)) return s;
    return guarded([&] {
        const auto bundle =
            hitlsim::compute_metrics(log->log, {window_s, cv_threshold, stable_windows});
        *out_text = copy_string(hitlsim::render_metrics(bundle, f));
    });
}

/* ---- surveys ---- */

hitl_status hitl_survey_read(const char* path, hitl_survey** out) {
    if (auto s = require(path && out, "path and out must be non-null")) return s;
    return guarded([&] { *out = new hitl_survey{hitlsim::read_survey(path)}; });
}

hitl_status hitl_survey_cronbach_alpha(const hitl_survey* survey, double* out) {
    if (auto s = require(survey && out, "survey and out must be non-null")) return s;
    return guarded([&] { *out = hitlsim::cronbach_alpha(survey->survey); });
}

hitl_status hitl_trust_render(const hitl_survey* survey, const char* format, char** out_text) {
    if (auto s = require(survey && out_text, "survey and out_text must be non-null")) return s;
    hitlsim::ReportFormat f;
    if (auto s = parse_format(format, f)) return s;
    return guarded([&] {
        const auto report = hitlsim::trust_score(survey->survey);
        *out_text = copy_string(hitlsim::render_trust(report, survey->survey, f));
    });
}

void hitl_survey_free(hitl_survey* survey) { delete survey; }

}  // extern "C"
