#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hitlsim/EventLog.h"
#include "hitlsim/Events.h"
#include "hitlsim/Simulation.h"
#include "hitlsim/Survey.h"

namespace hitlsim {

// Line-delimited text formats, UTF-8, LF endings. Serializers emit one
// canonical byte representation per value, so determinism checks can
// byte-compare files; parsers are strict and report 1-based line numbers.
//
//   intervals  optional "start_frame,end_frame" header, then one
//              "start,end" record per line; '#' lines are comments
//   frames     single-line bitstring ("0110...") or per-frame
//              "frame_index,flag" records with indices contiguous from 0
//   log        one self-describing JSON object per line (seq, t_s, kind,
//              plus kind-specific fields); timestamps carry exactly three
//              decimals, rates full precision
//   survey     '#key=value' preamble (scale_min, scale_max, reverse),
//              header row of item names, integer rows
//   config     INI-style "key = value" lines grouped by [section]
//              headers; keys are unique across the file

std::vector<EventInterval> parse_intervals(std::string_view text, const std::string& source = "input");
std::string serialize_intervals(std::vector<EventInterval> intervals);

FrameSeries parse_frames(std::string_view text, const std::string& source = "input");
std::string serialize_frames(const FrameSeries& series);

EventLog parse_log(std::string_view text, const std::string& source = "input");
std::string serialize_log(const EventLog& log);

SurveyResponseSet parse_survey(std::string_view text, const std::string& source = "input");
std::string serialize_survey(const SurveyResponseSet& survey);

SimConfig parse_sim_config(std::string_view text, const std::string& source = "input");
std::string serialize_sim_config(const SimConfig& config);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

std::vector<EventInterval> read_intervals(const std::string& path);
void write_intervals(const std::vector<EventInterval>& intervals, const std::string& path);
FrameSeries read_frames(const std::string& path);
void write_frames(const FrameSeries& series, const std::string& path);
EventLog read_log(const std::string& path);
void write_log(const EventLog& log, const std::string& path);
SurveyResponseSet read_survey(const std::string& path);
SimConfig read_sim_config(const std::string& path);

}  // namespace hitlsim
