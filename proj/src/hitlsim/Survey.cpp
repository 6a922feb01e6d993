#include "hitlsim/Survey.h"

#include <cmath>
#include <cstdint>

#include "hitlsim/Errors.h"

namespace hitlsim {

void validate(const SurveyResponseSet& survey) {
    if (survey.item_names.empty()) throw ValidationError("survey has no items");
    if (survey.scale_min >= survey.scale_max) {
        throw ValidationError("scale_min must be below scale_max");
    }
    for (std::size_t idx : survey.reverse_coded) {
        if (idx >= survey.item_names.size()) {
            throw ValidationError("reverse-coded item index " + std::to_string(idx) + " out of range");
        }
    }
    for (std::size_t r = 0; r < survey.rows.size(); ++r) {
        if (survey.rows[r].size() != survey.item_names.size()) {
            throw ValidationError("respondent " + std::to_string(r + 1) + ": expected " +
                                  std::to_string(survey.item_names.size()) + " scores, got " +
                                  std::to_string(survey.rows[r].size()));
        }
        for (std::size_t c = 0; c < survey.rows[r].size(); ++c) {
            const int score = survey.rows[r][c];
            if (score < survey.scale_min || score > survey.scale_max) {
                throw ValidationError("respondent " + std::to_string(r + 1) + ", item " +
                                      survey.item_names[c] + ": score " + std::to_string(score) +
                                      " outside scale [" + std::to_string(survey.scale_min) + "," +
                                      std::to_string(survey.scale_max) + "]");
            }
        }
    }
}

int corrected_score(const SurveyResponseSet& survey, std::size_t item, int score) {
    if (survey.reverse_coded.count(item) > 0) return survey.scale_min + survey.scale_max - score;
    return score;
}

double cronbach_alpha(const SurveyResponseSet& survey) {
    validate(survey);
    const std::size_t k = survey.item_names.size();
    const std::size_t n = survey.rows.size();
    if (k < 2) throw ValidationError("cronbach_alpha requires at least 2 items");
    if (n < 2) throw ValidationError("cronbach_alpha requires at least 2 respondents");

    // Population variance numerators n*sum(x^2) - sum(x)^2 kept as exact
    // integers; the common 1/n^2 factor cancels in the ratio.
    std::int64_t item_var_sum = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::int64_t s = 0;
        std::int64_t s2 = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const std::int64_t x = corrected_score(survey, c, survey.rows[r][c]);
            s += x;
            s2 += x * x;
        }
        item_var_sum += static_cast<std::int64_t>(n) * s2 - s * s;
    }

    std::int64_t total_s = 0;
    std::int64_t total_s2 = 0;
    for (std::size_t r = 0; r < n; ++r) {
        std::int64_t t = 0;
        for (std::size_t c = 0; c < k; ++c) t += corrected_score(survey, c, survey.rows[r][c]);
        total_s += t;
        total_s2 += t * t;
    }
    const std::int64_t total_var = static_cast<std::int64_t>(n) * total_s2 - total_s * total_s;
    if (total_var == 0) throw ValidationError("no variance in total scores");

    const std::int64_t numer = static_cast<std::int64_t>(k) * (total_var - item_var_sum);
    const std::int64_t denom = static_cast<std::int64_t>(k - 1) * total_var;
    return static_cast<double>(numer) / static_cast<double>(denom);
}

TrustReport trust_score(const SurveyResponseSet& survey) {
    validate(survey);
    if (survey.rows.empty()) throw ValidationError("survey has no respondents");

    TrustReport report;
    const std::size_t k = survey.item_names.size();
    for (const auto& row : survey.rows) {
        double sum = 0.0;
        for (std::size_t c = 0; c < k; ++c) sum += corrected_score(survey, c, row[c]);
        report.per_respondent.push_back(sum / static_cast<double>(k));
    }

    double sum = 0.0;
    for (double v : report.per_respondent) sum += v;
    report.overall_mean = sum / static_cast<double>(report.per_respondent.size());
    double var = 0.0;
    for (double v : report.per_respondent) {
        var += (v - report.overall_mean) * (v - report.overall_mean);
    }
    report.overall_sd = std::sqrt(var / static_cast<double>(report.per_respondent.size()));

    try {
        report.cronbach_alpha = cronbach_alpha(survey);
    } catch (const ValidationError&) {
        report.cronbach_alpha = std::nullopt;
    }
    return report;
}

}  // namespace hitlsim
