#include "hitlsim/Matching.h"

#include <algorithm>

#include "hitlsim/Errors.h"

namespace hitlsim {

namespace {

bool has_internal_overlap(const std::vector<EventInterval>& sorted) {
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].start_frame <= sorted[i - 1].end_frame) return true;
    }
    return false;
}

}  // namespace

double iou(const EventInterval& a, const EventInterval& b) {
    validate(a);
    validate(b);
    const std::int64_t inter_start = std::max(a.start_frame, b.start_frame);
    const std::int64_t inter_end = std::min(a.end_frame, b.end_frame);
    if (inter_start > inter_end) return 0.0;
    const std::int64_t inter = inter_end - inter_start + 1;
    const std::int64_t uni = a.length() + b.length() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

MatchReport match_events(std::vector<EventInterval> gt, std::vector<EventInterval> pred,
                         double threshold) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw ValidationError("iou threshold must be in [0,1], got " + std::to_string(threshold));
    }
    for (const auto& e : gt) validate(e);
    for (const auto& e : pred) validate(e);

    std::sort(gt.begin(), gt.end());
    std::sort(pred.begin(), pred.end());

    MatchReport report;
    report.gt_count = gt.size();
    report.pred_count = pred.size();
    report.threshold = threshold;
    if (has_internal_overlap(gt)) report.warnings.push_back("ground-truth intervals overlap each other");
    if (has_internal_overlap(pred)) report.warnings.push_back("predicted intervals overlap each other");

    std::vector<MatchPair> candidates;
    for (std::size_t g = 0; g < gt.size(); ++g) {
        for (std::size_t p = 0; p < pred.size(); ++p) {
            const double score = iou(gt[g], pred[p]);
            if (score > threshold) candidates.push_back({g, p, score});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const MatchPair& a, const MatchPair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.gt_index != b.gt_index) return a.gt_index < b.gt_index;
        return a.pred_index < b.pred_index;
    });

    std::vector<bool> gt_taken(gt.size(), false);
    std::vector<bool> pred_taken(pred.size(), false);
    for (const auto& c : candidates) {
        if (gt_taken[c.gt_index] || pred_taken[c.pred_index]) continue;
        gt_taken[c.gt_index] = true;
        pred_taken[c.pred_index] = true;
        report.matches.push_back(c);
    }
    std::sort(report.matches.begin(), report.matches.end(),
              [](const MatchPair& a, const MatchPair& b) { return a.gt_index < b.gt_index; });

    report.tp = report.matches.size();
    report.fp = report.pred_count - report.tp;
    report.fn = report.gt_count - report.tp;
    auto [precision, recall] = precision_recall(report);
    report.precision = precision;
    report.recall = recall;
    return report;
}

std::pair<std::optional<double>, std::optional<double>> precision_recall(const MatchReport& report) {
    std::optional<double> precision;
    std::optional<double> recall;
    if (report.pred_count > 0) {
        precision = static_cast<double>(report.tp) / static_cast<double>(report.pred_count);
    }
    if (report.gt_count > 0) {
        recall = static_cast<double>(report.tp) / static_cast<double>(report.gt_count);
    }
    return {precision, recall};
}

}  // namespace hitlsim
