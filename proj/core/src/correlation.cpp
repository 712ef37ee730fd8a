#include "botdet/correlation.hpp"

#include <algorithm>

namespace botdet {

namespace {

void add_evidence(BotRecord& r, const Alert& a) {
  auto pos = std::lower_bound(r.evidence.begin(), r.evidence.end(), a.id);
  if (pos == r.evidence.end() || *pos != a.id) r.evidence.insert(pos, a.id);
  r.last_seen = std::max(r.last_seen, a.timestamp);
}

// Shared two-step shape of the coherent and non-coherent branches: a record
// gains the response status when its flow recurs in `responses` strictly after
// its first clustered alert, and the attack status when its host is indexed.
std::vector<BotRecord> correlate_two_step(std::span<const BotRecord> records,
                                          std::span<const Alert> responses,
                                          std::span<const AttackRecord> report_4,
                                          StatusId with_response, StatusId with_attack,
                                          const DetectionConfig& cfg) {
  std::map<FlowPattern, std::vector<const Alert*>> by_flow;
  for (const auto& a : responses) by_flow[pattern_of(a)].push_back(&a);
  const auto indexed = hosts_with_concurrent_attack(responses, index_attacks(report_4), cfg);

  std::vector<BotRecord> out(records.begin(), records.end());
  for (auto& r : out) {
    auto it = by_flow.find(r.pattern);
    if (it == by_flow.end()) continue;
    bool continued = false;
    for (const Alert* a : it->second) {
      if (a->timestamp > r.first_seen) {
        continued = true;
        add_evidence(r, *a);
      }
    }
    if (!continued) continue;
    r.status = indexed.contains(r.pattern.src_ip) ? with_attack : with_response;
  }
  return out;
}

}  // namespace

AttackIndex index_attacks(std::span<const AttackRecord> report_4) {
  AttackIndex index;
  for (const auto& rec : report_4) index[rec.src_ip].insert(rec.buckets.begin(), rec.buckets.end());
  return index;
}

std::set<Ipv4> hosts_with_concurrent_attack(std::span<const Alert> responses,
                                            const AttackIndex& attacks,
                                            const DetectionConfig& cfg) {
  std::set<Ipv4> hosts;
  for (const auto& a : responses) {
    auto it = attacks.find(a.src_ip);
    if (it != attacks.end() && it->second.contains(bucket_of(a.timestamp, cfg.time_bucket)))
      hosts.insert(a.src_ip);
  }
  return hosts;
}

std::vector<BotRecord> correlate_coherent_nonstandard(std::span<const BotRecord> report_1_1,
                                                      std::span<const Alert> raw_3_1,
                                                      std::span<const AttackRecord> report_4,
                                                      const DetectionConfig& cfg) {
  return correlate_two_step(report_1_1, raw_3_1, report_4, StatusId::CoherentNonStandardResponse,
                            StatusId::CoherentNonStandardAttack, cfg);
}

std::vector<BotRecord> correlate_coherent_standard(std::span<const BotRecord> report_1_2,
                                                   std::span<const Alert> report_3_2,
                                                   std::span<const AttackRecord> report_4,
                                                   const DetectionConfig& cfg) {
  return correlate_two_step(report_1_2, report_3_2, report_4, StatusId::CoherentStandardResponse,
                            StatusId::CoherentStandardAttack, cfg);
}

std::vector<BotRecord> correlate_noncoherent(std::span<const BotRecord> report_2,
                                             std::span<const Alert> raw_2,
                                             std::span<const AttackRecord> report_4,
                                             const DetectionConfig& cfg) {
  return correlate_two_step(report_2, raw_2, report_4, StatusId::NonCoherentResponse,
                            StatusId::NonCoherentAttack, cfg);
}

std::vector<BotRecord> correlate_single_nonstandard(std::span<const BotRecord> report_3_1,
                                                    std::span<const Alert> raw_3_1,
                                                    std::span<const AttackRecord> report_4,
                                                    const std::set<FlowPattern>& already_detected,
                                                    const DetectionConfig& cfg) {
  const auto indexed = hosts_with_concurrent_attack(raw_3_1, index_attacks(report_4), cfg);
  std::vector<BotRecord> out;
  for (const auto& r : report_3_1) {
    if (already_detected.contains(r.pattern)) continue;
    BotRecord bot = r;
    bot.mode = Mode::Single;
    bot.status = indexed.contains(r.pattern.src_ip) ? StatusId::SingleNonStandardAttack
                                                    : StatusId::SingleNonStandard;
    out.push_back(std::move(bot));
  }
  return out;
}

std::vector<BotRecord> correlate_single_standard(std::span<const Alert> report_3_2,
                                                 std::span<const AttackRecord> report_4,
                                                 const std::set<FlowPattern>& already_detected,
                                                 const DetectionConfig& cfg) {
  const auto attacks = index_attacks(report_4);
  std::set<FlowPattern> matched;
  for (const auto& a : report_3_2) {
    auto it = attacks.find(a.src_ip);
    if (it != attacks.end() && it->second.contains(bucket_of(a.timestamp, cfg.time_bucket)))
      matched.insert(pattern_of(a));
  }

  std::map<FlowPattern, std::vector<const Alert*>> by_flow;
  for (const auto& a : report_3_2)
    if (matched.contains(pattern_of(a)) && !already_detected.contains(pattern_of(a)))
      by_flow[pattern_of(a)].push_back(&a);

  std::vector<BotRecord> out;
  for (const auto& [pattern, members] : by_flow)
    out.push_back(make_bot_record(members, Mode::Single, StatusId::SingleStandardAttack));
  return out;
}

BranchResults run_branches(const PhaseOneOutput& p1, const PhaseTwoOutput& p2,
                           const DetectionConfig& cfg) {
  BranchResults b;
  b.coherent_nonstandard =
      correlate_coherent_nonstandard(p1.report_1_1, p2.raw_3_1, p2.report_4, cfg);
  b.coherent_standard =
      correlate_coherent_standard(p1.report_1_2, p2.report_3_2_alerts, p2.report_4, cfg);
  b.noncoherent = correlate_noncoherent(p1.report_2, p1.raw_2, p2.report_4, cfg);

  std::set<FlowPattern> detected;
  for (const auto* branch : {&b.coherent_nonstandard, &b.coherent_standard, &b.noncoherent})
    for (const auto& r : *branch) detected.insert(r.pattern);

  b.single_nonstandard =
      correlate_single_nonstandard(p2.report_3_1, p2.raw_3_1, p2.report_4, detected, cfg);
  b.single_standard = correlate_single_standard(p2.report_3_2_alerts, p2.report_4, detected, cfg);
  return b;
}

RunStatistics compute_statistics(std::size_t total_alerts, const FinalReport& report,
                                 std::optional<std::size_t> bots_present) {
  return make_statistics(total_alerts, report.malicious_irc.size() + report.normal_irc.size(),
                         report.malicious_irc.size(), report.bots.size(), bots_present);
}

FinalReport assemble_report5(const BranchResults& branches, std::span<const AttackRecord> report_4,
                             std::span<const Alert> raw_2, std::size_t total_alerts,
                             std::optional<std::size_t> bots_present) {
  // Branches in precedence order; a flow keeps its first branch, and within a
  // branch its richest status.
  const std::vector<BotRecord>* ordered[] = {
      &branches.coherent_nonstandard, &branches.coherent_standard, &branches.noncoherent,
      &branches.single_nonstandard, &branches.single_standard};

  std::map<FlowPattern, std::pair<int, BotRecord>> merged;
  for (int rank = 0; rank < 5; ++rank) {
    for (const auto& r : *ordered[rank]) {
      auto [it, inserted] = merged.try_emplace(r.pattern, rank, r);
      if (inserted) continue;
      auto& [held_rank, held] = it->second;
      if (held_rank == rank && status_richness(r.status) > status_richness(held.status))
        held = r;
    }
  }

  FinalReport report;
  report.bots.reserve(merged.size());
  for (auto& [pattern, entry] : merged) report.bots.push_back(std::move(entry.second));
  report.attacks.assign(report_4.begin(), report_4.end());

  std::set<FlowPattern> bot_flows;
  for (const auto& r : report.bots) bot_flows.insert(r.pattern);
  for (const auto& a : raw_2)
    (bot_flows.contains(pattern_of(a)) ? report.malicious_irc : report.normal_irc).push_back(a);

  report.stats = compute_statistics(total_alerts, report, bots_present);
  return report;
}

FinalReport correlate(const PhaseOneOutput& p1, const PhaseTwoOutput& p2,
                      std::size_t total_alerts, const DetectionConfig& cfg,
                      std::optional<std::size_t> bots_present) {
  return assemble_report5(run_branches(p1, p2, cfg), p2.report_4, p1.raw_2, total_alerts,
                          bots_present);
}

}  // namespace botdet
