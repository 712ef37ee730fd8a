#pragma once

#include <optional>
#include <span>
#include <vector>

#include "botdet/detection_config.hpp"
#include "botdet/records.hpp"
#include "botdet/types.hpp"

namespace botdet {

// Phase 2: continued C&C responses after time_log (Part C on non-standard
// ports, Part D on standard ports) and protocol-agnostic attack detection.

/// Outgoing PRIVMSG on non-standard ports strictly after time_log. Empty when
/// time_log is absent.
std::vector<Alert> filter_part_c(std::span<const Alert> alerts, std::optional<Timestamp> time_log,
                                 const DetectionConfig& cfg);

/// One record per distinct flow, singletons included. Status 7.
std::vector<BotRecord> cluster_part_c(std::span<const Alert> alerts);

/// As Part C on standard ports, minus flows whose densest bucket exceeds
/// cfg.pps_max_cc alerts per second.
std::vector<Alert> filter_part_d(std::span<const Alert> alerts, std::optional<Timestamp> time_log,
                                 const DetectionConfig& cfg);

/// Outgoing, unfiltered-signature alerts at or after time_log, grouped by
/// (bucket, destination ip, destination port, signature name); groups holding at
/// least cfg.min_concurrent_attackers alerts are re-clustered per
/// (source ip, signature name). An absent time_log admits every alert.
std::vector<AttackRecord> detect_botnet_attacks(std::span<const Alert> alerts,
                                                std::optional<Timestamp> time_log,
                                                const DetectionConfig& cfg);

struct PhaseTwoOutput {
  std::vector<BotRecord> report_3_1;
  std::vector<Alert> raw_3_1;
  std::vector<Alert> report_3_2_alerts;
  std::vector<AttackRecord> report_4;

  bool operator==(const PhaseTwoOutput&) const = default;
};

PhaseTwoOutput run_phase2(std::span<const Alert> alerts, std::optional<Timestamp> time_log,
                          const DetectionConfig& cfg);

}  // namespace botdet
