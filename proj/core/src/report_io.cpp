#include "botdet/report_io.hpp"

#include <fstream>

#include "json.hpp"

namespace botdet {

using nlohmann::json;

namespace {

json alert_json(const Alert& a) {
  return json{{"id", a.id},
              {"timestamp", format_timestamp(a.timestamp)},
              {"signature_id", a.signature_id},
              {"signature", a.signature_name},
              {"protocol", to_string(a.protocol)},
              {"src_ip", a.src_ip.to_string()},
              {"src_port", a.src_port},
              {"dst_ip", a.dst_ip.to_string()},
              {"dst_port", a.dst_port},
              {"direction", to_string(a.direction)},
              {"kind", to_string(a.kind)}};
}

json bot_json(const BotRecord& r) {
  const auto& msg = status_message(r.status);
  json j{{"src_ip", r.pattern.src_ip.to_string()},
         {"src_port", r.pattern.src_port},
         {"dst_ip", r.pattern.dst_ip.to_string()},
         {"dst_port", r.pattern.dst_port},
         {"mode", std::string(to_string(r.mode))},
         {"status_id", static_cast<int>(r.status)},
         {"status", std::string(msg.text)},
         {"first_seen", format_timestamp(r.first_seen)},
         {"last_seen", format_timestamp(r.last_seen)},
         {"evidence", r.evidence}};
  if (r.initial_activity) j["initial_activity"] = format_timestamp(*r.initial_activity);
  return j;
}

json attack_json(const AttackRecord& r) {
  json victims = json::array();
  for (const auto& [ip, port] : r.victims)
    victims.push_back(json{{"ip", ip.to_string()}, {"port", port}});
  return json{{"src_ip", r.src_ip.to_string()},
              {"signature", r.signature_name},
              {"victims", victims},
              {"buckets", r.buckets},
              {"evidence", r.evidence}};
}

json stats_json(const RunStatistics& s) {
  json j{{"T-A", s.total_alerts},
         {"T-I", s.total_irc},
         {"P-I-A", s.pct_irc_of_total.to_string()},
         {"N-I", s.normal_irc},
         {"M-I", s.malicious_irc},
         {"P-N-I", s.pct_normal.to_string()},
         {"P-M-I", s.pct_malicious.to_string()},
         {"D-I-B", s.bots_detected}};
  j["I-B"] = s.bots_present ? json(*s.bots_present) : json(nullptr);
  return j;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportWriteError("cannot write " + path.string());
  return out;
}

template <typename Range, typename Fn>
void write_lines(const std::filesystem::path& path, const Range& items, Fn to_line) {
  auto out = open_for_write(path);
  for (const auto& item : items) out << to_line(item) << '\n';
  if (!out) throw ReportWriteError("write failed: " + path.string());
}

}  // namespace

std::string alert_json_line(const Alert& a) { return alert_json(a).dump(); }
std::string bot_json_line(const BotRecord& r) { return bot_json(r).dump(); }
std::string attack_json_line(const AttackRecord& r) { return attack_json(r).dump(); }
std::string statistics_json(const RunStatistics& s) { return stats_json(s).dump(2); }

void write_reports(const PipelineResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ReportWriteError("cannot create " + dir.string() + ": " + ec.message());

  const auto& p1 = result.phase1;
  const auto& p2 = result.phase2;
  const auto& r5 = result.report5;
  write_lines(dir / "report_1_1.jsonl", p1.report_1_1, bot_json_line);
  write_lines(dir / "report_1_2.jsonl", p1.report_1_2, bot_json_line);
  write_lines(dir / "report_2.jsonl", p1.report_2, bot_json_line);
  write_lines(dir / "report_3_1.jsonl", p2.report_3_1, bot_json_line);
  write_lines(dir / "report_3_2.jsonl", p2.report_3_2_alerts, alert_json_line);
  write_lines(dir / "report_4.jsonl", p2.report_4, attack_json_line);

  {
    auto out = open_for_write(dir / "report_5.jsonl");
    for (const auto& bot : r5.bots) {
      json j = bot_json(bot);
      j["record"] = "bot";
      out << j.dump() << '\n';
    }
    for (const auto& attack : r5.attacks) {
      json j = attack_json(attack);
      j["record"] = "attack";
      out << j.dump() << '\n';
    }
    auto emit_messages = [&](const std::vector<Alert>& alerts, const char* disposition) {
      for (const auto& a : alerts) {
        json j{{"record", "irc_message"},
               {"disposition", disposition},
               {"alert_id", a.id},
               {"timestamp", format_timestamp(a.timestamp)},
               {"src_ip", a.src_ip.to_string()},
               {"src_port", a.src_port},
               {"dst_ip", a.dst_ip.to_string()},
               {"dst_port", a.dst_port}};
        out << j.dump() << '\n';
      }
    };
    emit_messages(r5.malicious_irc, "malicious");
    emit_messages(r5.normal_irc, "normal");
    if (!out) throw ReportWriteError("write failed: report_5.jsonl");
  }

  {
    auto out = open_for_write(dir / "stats.txt");
    out << summary_text(r5);
  }
  {
    auto out = open_for_write(dir / "stats.json");
    out << statistics_json(r5.stats) << '\n';
  }
}

std::string summary_text(const FinalReport& report) {
  std::string out = statistics_header() + "\n" + statistics_row(report.stats) + "\n";
  if (!report.bots.empty()) out += "\nDetected bots:\n";
  for (const auto& bot : report.bots) {
    out += "  " + to_string(bot.pattern) + "  [" +
           std::to_string(static_cast<int>(bot.status)) + "] " +
           std::string(status_message(bot.status).text) + "\n";
  }
  if (!report.attacks.empty()) out += "\nBotnet attacks:\n";
  for (const auto& attack : report.attacks) {
    out += "  " + attack.src_ip.to_string() + "  " + attack.signature_name + "  (" +
           std::to_string(attack.buckets.size()) + " bucket(s), " +
           std::to_string(attack.evidence.size()) + " alert(s))\n";
  }
  return out;
}

}  // namespace botdet
