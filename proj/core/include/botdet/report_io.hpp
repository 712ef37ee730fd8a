#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "botdet/pipeline.hpp"
#include "botdet/records.hpp"
#include "botdet/statistics.hpp"

namespace botdet {

class ReportWriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One JSON object per line; keys are stable and sorted.
std::string alert_json_line(const Alert& a);
std::string bot_json_line(const BotRecord& r);
std::string attack_json_line(const AttackRecord& r);
std::string statistics_json(const RunStatistics& s);

/// Writes report_1_1.jsonl, report_1_2.jsonl, report_2.jsonl, report_3_1.jsonl,
/// report_3_2.jsonl, report_4.jsonl, report_5.jsonl, stats.txt and stats.json
/// into `dir`, creating it if needed.
void write_reports(const PipelineResult& result, const std::filesystem::path& dir);

/// Human-readable summary: statistics table followed by the detected bots.
std::string summary_text(const FinalReport& report);

}  // namespace botdet
