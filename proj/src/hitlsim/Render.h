#pragma once

#include <string>

#include "hitlsim/EventLog.h"
#include "hitlsim/Matching.h"
#include "hitlsim/Metrics.h"
#include "hitlsim/Survey.h"

namespace hitlsim {

enum class ReportFormat { json, table };

// json: single line, sorted keys, numbers rounded to six significant
// digits, absent values as null. table: aligned two-column text with the
// same rounding, absent values as "n/a"; header styling is suppressed when
// HITLSIM_NO_COLOR is set. Both forms are byte-stable for equal inputs.

std::string render_match_report(const MatchReport& report, ReportFormat format);
std::string render_metrics(const MetricsBundle& bundle, ReportFormat format);
std::string render_trust(const TrustReport& report, const SurveyResponseSet& survey, ReportFormat format);
std::string render_sim_summary(const EventLog& log, ReportFormat format);

}  // namespace hitlsim
