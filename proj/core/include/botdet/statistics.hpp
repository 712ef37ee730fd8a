#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace botdet {

/// A percentage rounded half-up, either to a whole percent or to tenths.
struct Percentage {
  std::int64_t tenths = 0;  // 56% -> 560, 0.2% -> 2
  bool one_decimal = false;

  std::string to_string() const;  // "56%", "0.2%"
  bool operator==(const Percentage&) const = default;
};

/// Whole percent, half-up. 0 when `whole` is 0.
Percentage whole_percent(std::size_t part, std::size_t whole);

/// Whole percent, except one decimal when the exact ratio is below 1% but
/// non-zero.
Percentage share_percent(std::size_t part, std::size_t whole);

/// Summary row: T-A, T-I, P-I-A, N-I, M-I, P-N-I, P-M-I, I-B, D-I-B.
struct RunStatistics {
  std::size_t total_alerts = 0;
  std::size_t total_irc = 0;
  Percentage pct_irc_of_total;
  std::size_t normal_irc = 0;
  std::size_t malicious_irc = 0;
  Percentage pct_normal;
  Percentage pct_malicious;
  std::optional<std::size_t> bots_present;  // only from generator ground truth
  std::size_t bots_detected = 0;

  bool operator==(const RunStatistics&) const = default;
};

RunStatistics make_statistics(std::size_t total_alerts, std::size_t total_irc,
                              std::size_t malicious_irc, std::size_t bots_detected,
                              std::optional<std::size_t> bots_present);

/// "10,259"
std::string with_thousands(std::size_t n);

std::string statistics_header();
/// Tab-separated row in the header's column order; I-B renders "-" if absent.
std::string statistics_row(const RunStatistics& s);

}  // namespace botdet
