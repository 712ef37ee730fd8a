#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "botdet/pipeline.hpp"
#include "botdet/report_io.hpp"
#include "botdet/trace_gen.hpp"
#include "json.hpp"
#include "support.hpp"

namespace botdet {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::vector<json> read_lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(json::parse(line));
  return out;
}

class ReportIo : public ::testing::Test {
 protected:
  fs::path dir = fs::temp_directory_path() / "botdet_report_io";
  void SetUp() override { fs::remove_all(dir); }
  void TearDown() override { fs::remove_all(dir); }
};

TEST_F(ReportIo, WritesEveryReport) {
  auto cfg = test::config();
  auto trace = generate(builtin_specs().at("scenario3"));
  annotate(trace.alerts, cfg);
  auto result = run_pipeline(trace.alerts, cfg, trace.truth.bots.size());
  write_reports(result, dir);

  for (const char* name : {"report_1_1.jsonl", "report_1_2.jsonl", "report_2.jsonl",
                           "report_3_1.jsonl", "report_3_2.jsonl", "report_4.jsonl",
                           "report_5.jsonl", "stats.txt", "stats.json"})
    EXPECT_TRUE(fs::exists(dir / name)) << name;

  EXPECT_EQ(read_lines(dir / "report_3_1.jsonl").size(), result.phase2.report_3_1.size());
  EXPECT_EQ(read_lines(dir / "report_4.jsonl").size(), result.phase2.report_4.size());

  std::map<std::string, std::size_t> kinds;
  for (const auto& j : read_lines(dir / "report_5.jsonl")) ++kinds[j.at("record")];
  EXPECT_EQ(kinds["bot"], result.report5.bots.size());
  EXPECT_EQ(kinds["attack"], result.report5.attacks.size());
  EXPECT_EQ(kinds["irc_message"],
            result.report5.malicious_irc.size() + result.report5.normal_irc.size());

  std::ifstream stats(dir / "stats.json");
  auto s = json::parse(stats);
  EXPECT_EQ(s.at("T-A"), trace.alerts.size());
  EXPECT_EQ(s.at("D-I-B"), 3);
  EXPECT_EQ(s.at("I-B"), 3);
  EXPECT_EQ(s.at("P-I-A"), "0.2%");
}

TEST_F(ReportIo, BotLineFields) {
  BotRecord r;
  r.pattern = {test::ip("10.0.0.2"), 1043, test::ip("192.168.5.9"), 7000};
  r.mode = Mode::Coherent;
  r.status = StatusId::CoherentNonStandard;
  r.first_seen = test::at(1);
  r.last_seen = test::at(2);
  r.initial_activity = test::at(0);
  r.evidence = {1, 2, 3};
  auto j = json::parse(bot_json_line(r));
  EXPECT_EQ(j.at("status_id"), 1);
  EXPECT_EQ(j.at("mode"), "coherent");
  EXPECT_EQ(j.at("dst_port"), 7000);
  EXPECT_EQ(j.at("initial_activity"), "2012-04-05T13:00:00.000000Z");
  EXPECT_EQ(j.at("evidence"), json::array({1, 2, 3}));
  EXPECT_EQ(j.at("status"),
            "Coherent mode: IRC bot has illegitimate IRC connection on non-standard IRC port");
}

TEST_F(ReportIo, KeysAreSorted) {
  Alert a = test::privmsg(1, 0, "10.0.0.2", 1, "1.2.3.4", 6667);
  auto line = alert_json_line(a);
  auto j = json::parse(line);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(j.dump(), line);
}

TEST_F(ReportIo, EmptyResultWritesEmptyFiles) {
  write_reports(PipelineResult{}, dir);
  EXPECT_EQ(fs::file_size(dir / "report_5.jsonl"), 0u);
  EXPECT_EQ(fs::file_size(dir / "report_4.jsonl"), 0u);
  auto text = summary_text(FinalReport{});
  EXPECT_NE(text.find("T-A"), std::string::npos);
}

TEST_F(ReportIo, UnwritableDirectoryThrows) {
  { std::ofstream block(dir); }
  EXPECT_THROW(write_reports(PipelineResult{}, dir / "sub"), ReportWriteError);
  fs::remove(dir);
}

}  // namespace
}  // namespace botdet
