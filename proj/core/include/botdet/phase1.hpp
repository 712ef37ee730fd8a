#pragma once

#include <optional>
#include <span>
#include <vector>

#include "botdet/detection_config.hpp"
#include "botdet/records.hpp"
#include "botdet/types.hpp"

namespace botdet {

// Phase 1: initial C&C responses. Part A (tracked PRIVMSG, non-standard port)
// feeds Report 1.1, Part B (tracked PRIVMSG, standard port) feeds Report 1.2,
// and Part 2 (PRIVMSG on any port) feeds Report 2. All inputs must already be
// annotated with direction and kind.

std::vector<Alert> filter_part_a(std::span<const Alert> alerts, const DetectionConfig& cfg);
std::vector<Alert> filter_part_b(std::span<const Alert> alerts, const DetectionConfig& cfg);

struct PartTwoPool {
  std::vector<Alert> alerts;
  // Earliest outgoing PRIVMSG; gates Phase 2.
  std::optional<Timestamp> time_log;
};

PartTwoPool filter_part2(std::span<const Alert> alerts);

/// Drops every Part 2 alert whose (bucket, source port) also occurs in Part 1.
std::vector<Alert> similarity_dedup(std::span<const Alert> part1, std::span<const Alert> part2,
                                    const DetectionConfig& cfg);

/// One record per distinct flow, singletons included. Status 1.
std::vector<BotRecord> cluster_part_a(std::span<const Alert> alerts);

/// Flows with an alert sharing a bucket with at least one other source host.
/// Status 2.
std::vector<BotRecord> cluster_part_b(std::span<const Alert> alerts, const DetectionConfig& cfg);

/// Flows with an alert sharing (bucket, destination ip, destination port) with
/// at least one other source host. Status 9.
std::vector<BotRecord> cluster_part2(std::span<const Alert> alerts, const DetectionConfig& cfg);

/// Records the earliest matching NICK alert as the record's initial activity
/// and adds it to the evidence.
void attach_initial_activity(std::vector<BotRecord>& records, std::span<const Alert> alerts);

struct PhaseOneOutput {
  std::vector<BotRecord> report_1_1;
  std::vector<BotRecord> report_1_2;
  std::vector<BotRecord> report_2;
  std::vector<Alert> raw_2;  // every outgoing PRIVMSG, before dedup
  std::optional<Timestamp> time_log;

  bool operator==(const PhaseOneOutput&) const = default;
};

PhaseOneOutput run_phase1(std::span<const Alert> alerts, const DetectionConfig& cfg);

}  // namespace botdet
