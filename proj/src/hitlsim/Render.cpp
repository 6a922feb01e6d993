#include "hitlsim/Render.h"

#include <cstdlib>
#include <vector>

#include <json.hpp>

#include "hitlsim/Text.h"

namespace hitlsim {

namespace {

using nlohmann::json;

json num(double value) { return json(round_sig6(value)); }

json opt_num(const std::optional<double>& value) {
    return value ? json(round_sig6(*value)) : json(nullptr);
}

json latency_json(const LatencyStats& stats) {
    json j;
    j["n"] = stats.n;
    if (stats.n == 0) {
        j["mean_s"] = nullptr;
        j["median_s"] = nullptr;
        j["p90_s"] = nullptr;
        j["p99_s"] = nullptr;
        j["max_s"] = nullptr;
    } else {
        j["mean_s"] = num(stats.mean_s);
        j["median_s"] = num(stats.median_s);
        j["p90_s"] = num(stats.p90_s);
        j["p99_s"] = num(stats.p99_s);
        j["max_s"] = num(stats.max_s);
    }
    return j;
}

bool use_style() { return std::getenv("HITLSIM_NO_COLOR") == nullptr; }

// Two-column rows with an emphasized header line.
class Table {
public:
    explicit Table(std::string left_header, std::string right_header) {
        rows_.emplace_back(std::move(left_header), std::move(right_header));
    }

    void row(std::string label, std::string value) {
        rows_.emplace_back(std::move(label), std::move(value));
    }

    void row(std::string label, double value) { row(std::move(label), format_sig6(round_sig6(value))); }

    void row(std::string label, const std::optional<double>& value) {
        row(std::move(label), value ? format_sig6(round_sig6(*value)) : std::string("n/a"));
    }

    void count(std::string label, std::size_t value) { row(std::move(label), std::to_string(value)); }

    std::string str() const {
        std::size_t width = 0;
        for (const auto& [label, value] : rows_) width = std::max(width, label.size());
        std::string out;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            std::string line = rows_[i].first;
            line.append(width - rows_[i].first.size() + 2, ' ');
            line += rows_[i].second;
            if (i == 0 && use_style()) line = "\x1b[1m" + line + "\x1b[0m";
            out += line;
            out += '\n';
        }
        return out;
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

void latency_rows(Table& table, const std::string& prefix, const LatencyStats& stats) {
    table.count(prefix + ".n", stats.n);
    auto maybe = [&](double v) { return stats.n > 0 ? std::optional<double>(v) : std::nullopt; };
    table.row(prefix + ".mean_s", maybe(stats.mean_s));
    table.row(prefix + ".median_s", maybe(stats.median_s));
    table.row(prefix + ".p90_s", maybe(stats.p90_s));
    table.row(prefix + ".p99_s", maybe(stats.p99_s));
    table.row(prefix + ".max_s", maybe(stats.max_s));
}

struct SummaryCounts {
    std::size_t detections = 0;
    std::size_t notifications = 0;
    std::size_t labels_total = 0;
    std::size_t labels_positive = 0;
    std::size_t labels_negative = 0;
    std::size_t label_rejections = 0;
    std::size_t retrains = 0;
    double last_t_s = 0.0;
};

SummaryCounts summarize(const EventLog& log) {
    SummaryCounts s;
    for (const auto& e : log.entries) {
        switch (e.kind) {
            case EntryKind::detection: ++s.detections; break;
            case EntryKind::notification: ++s.notifications; break;
            case EntryKind::label:
                ++s.labels_total;
                if (e.value && *e.value == 1) ++s.labels_positive;
                if (e.value && *e.value == -1) ++s.labels_negative;
                break;
            case EntryKind::label_rejected: ++s.label_rejections; break;
            case EntryKind::retrain: ++s.retrains; break;
            default: break;
        }
        s.last_t_s = e.t_s;
    }
    return s;
}

}  // namespace

std::string render_match_report(const MatchReport& report, ReportFormat format) {
    const auto fnr =
        report.gt_count > 0
            ? std::optional<double>(static_cast<double>(report.fn) / static_cast<double>(report.gt_count))
            : std::nullopt;
    if (format == ReportFormat::json) {
        json j;
        j["gt_count"] = report.gt_count;
        j["pred_count"] = report.pred_count;
        j["tp"] = report.tp;
        j["fp"] = report.fp;
        j["fn"] = report.fn;
        j["iou_threshold"] = num(report.threshold);
        j["precision"] = opt_num(report.precision);
        j["recall"] = opt_num(report.recall);
        j["detection_fnr"] = opt_num(fnr);
        j["matches"] = json::array();
        for (const auto& m : report.matches) {
            json pair;
            pair["gt_index"] = m.gt_index;
            pair["pred_index"] = m.pred_index;
            pair["iou"] = num(m.iou);
            j["matches"].push_back(pair);
        }
        j["warnings"] = report.warnings;
        return j.dump() + "\n";
    }

    Table table("Metric", "Count");
    table.count("GT events", report.gt_count);
    table.count("Predicted events", report.pred_count);
    table.count("TP_detection", report.tp);
    table.count("FP_detection", report.fp);
    table.count("FN_detection", report.fn);
    table.row("precision", report.precision);
    table.row("recall", report.recall);
    table.row("detection_fnr", fnr);
    table.row("iou_threshold", report.threshold);
    std::string out = table.str();
    for (const auto& w : report.warnings) out += "warning: " + w + "\n";
    return out;
}

std::string render_metrics(const MetricsBundle& bundle, ReportFormat format) {
    if (format == ReportFormat::json) {
        json j;
        j["feedback_fpr"] = opt_num(bundle.feedback_fpr);
        j["oracle_fpr"] = opt_num(bundle.oracle_fpr);
        j["detection_fnr"] = opt_num(bundle.detection_fnr);
        j["latency_technical"] = latency_json(bundle.technical);
        j["latency_organizational"] = latency_json(bundle.organizational);
        json counts;
        counts["detections"] = bundle.detections;
        counts["notifications"] = bundle.notifications;
        counts["labels_total"] = bundle.labels_total;
        counts["labels_negative"] = bundle.labels_negative;
        counts["retrains"] = bundle.retrains;
        j["counts"] = counts;
        json adaptation;
        adaptation["window_s"] = num(bundle.adaptation.window_s);
        adaptation["cv_threshold"] = num(bundle.adaptation.cv_threshold);
        adaptation["stable_windows"] = bundle.adaptation.stable_windows;
        adaptation["time_s"] = opt_num(bundle.adaptation_time_s);
        j["adaptation"] = adaptation;
        return j.dump() + "\n";
    }

    Table table("Metric", "Value");
    table.row("feedback_fpr", bundle.feedback_fpr);
    table.row("oracle_fpr", bundle.oracle_fpr);
    table.row("detection_fnr", bundle.detection_fnr);
    table.count("detections", bundle.detections);
    table.count("notifications", bundle.notifications);
    table.count("labels_total", bundle.labels_total);
    table.count("labels_negative", bundle.labels_negative);
    table.count("retrains", bundle.retrains);
    latency_rows(table, "technical", bundle.technical);
    latency_rows(table, "organizational", bundle.organizational);
    table.row("adaptation_time_s", bundle.adaptation_time_s);
    table.row("adaptation.window_s", bundle.adaptation.window_s);
    table.row("adaptation.cv_threshold", bundle.adaptation.cv_threshold);
    table.count("adaptation.stable_windows", static_cast<std::size_t>(bundle.adaptation.stable_windows));
    return table.str();
}

std::string render_trust(const TrustReport& report, const SurveyResponseSet& survey,
                         ReportFormat format) {
    if (format == ReportFormat::json) {
        json j;
        j["n_respondents"] = survey.rows.size();
        j["n_items"] = survey.item_names.size();
        j["scale_min"] = survey.scale_min;
        j["scale_max"] = survey.scale_max;
        j["overall_mean"] = num(report.overall_mean);
        j["overall_sd"] = num(report.overall_sd);
        j["cronbach_alpha"] = opt_num(report.cronbach_alpha);
        j["per_respondent"] = json::array();
        for (double v : report.per_respondent) j["per_respondent"].push_back(num(v));
        return j.dump() + "\n";
    }

    Table table("Metric", "Value");
    table.count("respondents", survey.rows.size());
    table.count("items", survey.item_names.size());
    table.row("scale", std::to_string(survey.scale_min) + ".." + std::to_string(survey.scale_max));
    table.row("overall_mean", report.overall_mean);
    table.row("overall_sd", report.overall_sd);
    table.row("cronbach_alpha", report.cronbach_alpha);
    return table.str();
}

std::string render_sim_summary(const EventLog& log, ReportFormat format) {
    const SummaryCounts s = summarize(log);
    if (format == ReportFormat::json) {
        json j;
        j["detections"] = s.detections;
        j["notifications"] = s.notifications;
        j["labels_total"] = s.labels_total;
        j["labels_positive"] = s.labels_positive;
        j["labels_negative"] = s.labels_negative;
        j["label_rejections"] = s.label_rejections;
        j["retrains"] = s.retrains;
        j["last_t_s"] = num(s.last_t_s);
        return j.dump() + "\n";
    }

    Table table("Metric", "Count");
    table.count("detections", s.detections);
    table.count("notifications", s.notifications);
    table.count("labels_total", s.labels_total);
    table.count("labels_positive", s.labels_positive);
    table.count("labels_negative", s.labels_negative);
    table.count("label_rejections", s.label_rejections);
    table.count("retrains", s.retrains);
    table.row("last_t_s", s.last_t_s);
    return table.str();
}

}  // namespace hitlsim
