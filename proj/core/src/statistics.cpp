#include "botdet/statistics.hpp"

namespace botdet {

std::string Percentage::to_string() const {
  if (!one_decimal) return std::to_string(tenths / 10) + "%";
  return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10) + "%";
}

Percentage whole_percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return {};
  // floor(100 * part / whole + 1/2) in integers.
  const auto p = static_cast<std::int64_t>(part), w = static_cast<std::int64_t>(whole);
  return {((200 * p + w) / (2 * w)) * 10, false};
}

Percentage share_percent(std::size_t part, std::size_t whole) {
  if (whole == 0 || part == 0) return whole_percent(part, whole);
  const auto p = static_cast<std::int64_t>(part), w = static_cast<std::int64_t>(whole);
  if (100 * p >= w) return whole_percent(part, whole);
  return {(2000 * p + w) / (2 * w), true};
}

RunStatistics make_statistics(std::size_t total_alerts, std::size_t total_irc,
                              std::size_t malicious_irc, std::size_t bots_detected,
                              std::optional<std::size_t> bots_present) {
  RunStatistics s;
  s.total_alerts = total_alerts;
  s.total_irc = total_irc;
  s.malicious_irc = malicious_irc;
  s.normal_irc = total_irc - malicious_irc;
  s.pct_irc_of_total = share_percent(total_irc, total_alerts);
  s.pct_normal = whole_percent(s.normal_irc, total_irc);
  s.pct_malicious = whole_percent(malicious_irc, total_irc);
  s.bots_present = bots_present;
  s.bots_detected = bots_detected;
  return s;
}

std::string with_thousands(std::size_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (i % 3) == lead) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string statistics_header() { return "T-A\tT-I\tP-I-A\tN-I\tM-I\tP-N-I\tP-M-I\tI-B\tD-I-B"; }

std::string statistics_row(const RunStatistics& s) {
  return with_thousands(s.total_alerts) + "\t" + with_thousands(s.total_irc) + "\t" +
         s.pct_irc_of_total.to_string() + "\t" + with_thousands(s.normal_irc) + "\t" +
         with_thousands(s.malicious_irc) + "\t" + s.pct_normal.to_string() + "\t" +
         s.pct_malicious.to_string() + "\t" +
         (s.bots_present ? with_thousands(*s.bots_present) : std::string("-")) + "\t" +
         with_thousands(s.bots_detected);
}

}  // namespace botdet
