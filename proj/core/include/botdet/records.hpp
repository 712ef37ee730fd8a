#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "botdet/status.hpp"
#include "botdet/types.hpp"

namespace botdet {

/// A detected (or candidate) bot, keyed by its flow pattern.
struct BotRecord {
  FlowPattern pattern;
  Mode mode = Mode::Single;
  StatusId status = StatusId::SingleNonStandard;
  // Span of the response alerts that produced the record.
  Timestamp first_seen{};
  Timestamp last_seen{};
  // Earliest connection-time NICK alert on the same flow, when one was seen.
  std::optional<Timestamp> initial_activity;
  std::vector<std::uint64_t> evidence;  // ascending alert ids

  bool operator==(const BotRecord&) const = default;
};

/// Hosts and attack names extracted from concurrent outbound alerts.
struct AttackRecord {
  Ipv4 src_ip;
  std::string signature_name;
  // Distinct (victim ip, victim port) pairs attacked; informational.
  std::vector<std::pair<Ipv4, std::uint16_t>> victims;
  std::vector<std::int64_t> buckets;    // ascending
  std::vector<std::uint64_t> evidence;  // ascending alert ids

  bool operator==(const AttackRecord&) const = default;
};

/// Builds a record from a group of alerts that all share one flow pattern.
BotRecord make_bot_record(const std::vector<const Alert*>& alerts, Mode mode, StatusId status);

}  // namespace botdet
