#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "botdet/detection_config.hpp"
#include "botdet/phase1.hpp"
#include "botdet/phase2.hpp"
#include "botdet/records.hpp"
#include "botdet/statistics.hpp"

namespace botdet {

/// Report 5.
struct FinalReport {
  std::vector<BotRecord> bots;        // unique flow patterns, ascending
  std::vector<AttackRecord> attacks;  // Report 4, carried over unchanged
  std::vector<Alert> malicious_irc;
  std::vector<Alert> normal_irc;
  RunStatistics stats;

  bool operator==(const FinalReport&) const = default;
};

/// Host -> buckets in which that host fired a botnet attack.
using AttackIndex = std::map<Ipv4, std::set<std::int64_t>>;

AttackIndex index_attacks(std::span<const AttackRecord> report_4);

/// Hosts that sent one of `responses` in a bucket where the same host attacked.
std::set<Ipv4> hosts_with_concurrent_attack(std::span<const Alert> responses,
                                            const AttackIndex& attacks,
                                            const DetectionConfig& cfg);

/// Report 1.1 x raw Report 3.1 x Report 4. Status 1 -> 3 -> 4.
std::vector<BotRecord> correlate_coherent_nonstandard(std::span<const BotRecord> report_1_1,
                                                      std::span<const Alert> raw_3_1,
                                                      std::span<const AttackRecord> report_4,
                                                      const DetectionConfig& cfg);

/// Report 1.2 x Report 3.2 x Report 4. Status 2 -> 5 -> 6.
std::vector<BotRecord> correlate_coherent_standard(std::span<const BotRecord> report_1_2,
                                                   std::span<const Alert> report_3_2,
                                                   std::span<const AttackRecord> report_4,
                                                   const DetectionConfig& cfg);

/// Report 2 x raw Report 2 x Report 4. Status 9 -> 10 -> 11.
std::vector<BotRecord> correlate_noncoherent(std::span<const BotRecord> report_2,
                                             std::span<const Alert> raw_2,
                                             std::span<const AttackRecord> report_4,
                                             const DetectionConfig& cfg);

/// Report 3.1 flows not already detected. Status 7, or 8 with a concurrent
/// attack from the same host.
std::vector<BotRecord> correlate_single_nonstandard(std::span<const BotRecord> report_3_1,
                                                    std::span<const Alert> raw_3_1,
                                                    std::span<const AttackRecord> report_4,
                                                    const std::set<FlowPattern>& already_detected,
                                                    const DetectionConfig& cfg);

/// Flows of Report 3.2 alerts sent in a bucket where the same host attacked,
/// minus already detected flows. Status 12.
std::vector<BotRecord> correlate_single_standard(std::span<const Alert> report_3_2,
                                                 std::span<const AttackRecord> report_4,
                                                 const std::set<FlowPattern>& already_detected,
                                                 const DetectionConfig& cfg);

struct BranchResults {
  std::vector<BotRecord> coherent_nonstandard;
  std::vector<BotRecord> coherent_standard;
  std::vector<BotRecord> noncoherent;
  std::vector<BotRecord> single_nonstandard;
  std::vector<BotRecord> single_standard;
};

BranchResults run_branches(const PhaseOneOutput& p1, const PhaseTwoOutput& p2,
                           const DetectionConfig& cfg);

/// Merges branch results (coherent > non-coherent > single, then richer status
/// first), partitions the raw PRIVMSG pool into malicious and normal, and
/// computes the summary statistics.
FinalReport assemble_report5(const BranchResults& branches, std::span<const AttackRecord> report_4,
                             std::span<const Alert> raw_2, std::size_t total_alerts,
                             std::optional<std::size_t> bots_present = std::nullopt);

RunStatistics compute_statistics(std::size_t total_alerts, const FinalReport& report,
                                 std::optional<std::size_t> bots_present = std::nullopt);

FinalReport correlate(const PhaseOneOutput& p1, const PhaseTwoOutput& p2,
                      std::size_t total_alerts, const DetectionConfig& cfg,
                      std::optional<std::size_t> bots_present = std::nullopt);

}  // namespace botdet
