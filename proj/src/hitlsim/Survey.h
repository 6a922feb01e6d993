#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hitlsim {

// Likert response matrix: one row per respondent, one column per item.
// Scores are integers in [scale_min, scale_max]; reverse_coded holds item
// indices whose scores are mirrored before any aggregation. Rows must be
// complete (missing entries are rejected, not imputed).
struct SurveyResponseSet {
    std::vector<std::string> item_names;
    int scale_min = 1;
    int scale_max = 7;
    std::set<std::size_t> reverse_coded;
    std::vector<std::vector<int>> rows;

    bool operator==(const SurveyResponseSet&) const = default;
};

void validate(const SurveyResponseSet& survey);

// Aggregate trust score plus internal-consistency reliability.
// cronbach_alpha is absent when the survey cannot support it (fewer than
// two items or respondents, or zero variance in total scores); the
// standalone cronbach_alpha() throws in those cases instead.
struct TrustReport {
    std::vector<double> per_respondent;
    double overall_mean = 0.0;
    double overall_sd = 0.0;
    std::optional<double> cronbach_alpha;
};

// Reverse-corrected score: x -> scale_min + scale_max - x for reverse-coded
// items, unchanged otherwise.
int corrected_score(const SurveyResponseSet& survey, std::size_t item, int score);

// Cronbach's alpha = k/(k-1) * (1 - sum(item variance) / total variance)
// with population variances (divide by n) throughout. Computed over
// reverse-corrected scores via exact integer sums, so structurally
// identical columns give exactly 1.0. Requires >= 2 items, >= 2
// respondents, and variance in the total scores.
double cronbach_alpha(const SurveyResponseSet& survey);

// Per-respondent mean of corrected items, overall mean and population SD
// across respondents, and alpha when computable.
TrustReport trust_score(const SurveyResponseSet& survey);

}  // namespace hitlsim
