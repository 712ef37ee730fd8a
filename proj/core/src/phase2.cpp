#include "botdet/phase2.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace botdet {

namespace {

bool is_response_after(const Alert& a, Timestamp time_log) {
  return a.kind == Kind::IrcPrivmsgAny && a.direction == Direction::Outgoing &&
         a.timestamp > time_log;
}

}  // namespace

std::vector<Alert> filter_part_c(std::span<const Alert> alerts, std::optional<Timestamp> time_log,
                                 const DetectionConfig& cfg) {
  std::vector<Alert> out;
  if (!time_log) return out;
  for (const auto& a : alerts)
    if (is_response_after(a, *time_log) && !is_standard_irc_port(a.dst_port, cfg))
      out.push_back(a);
  return out;
}

std::vector<BotRecord> cluster_part_c(std::span<const Alert> alerts) {
  std::map<FlowPattern, std::vector<const Alert*>> groups;
  for (const auto& a : alerts) groups[pattern_of(a)].push_back(&a);
  std::vector<BotRecord> out;
  for (const auto& [pattern, members] : groups)
    out.push_back(make_bot_record(members, Mode::Single, StatusId::SingleNonStandard));
  return out;
}

std::vector<Alert> filter_part_d(std::span<const Alert> alerts, std::optional<Timestamp> time_log,
                                 const DetectionConfig& cfg) {
  std::vector<Alert> candidates;
  if (!time_log) return candidates;
  for (const auto& a : alerts)
    if (is_response_after(a, *time_log) && is_standard_irc_port(a.dst_port, cfg))
      candidates.push_back(a);

  std::map<std::pair<FlowPattern, std::int64_t>, std::size_t> per_bucket;
  for (const auto& a : candidates)
    ++per_bucket[{pattern_of(a), bucket_of(a.timestamp, cfg.time_bucket)}];
  std::map<FlowPattern, std::size_t> densest;
  for (const auto& [key, count] : per_bucket)
    densest[key.first] = std::max(densest[key.first], count);

  const double bucket_seconds = static_cast<double>(cfg.time_bucket.count()) / 1e6;
  std::vector<Alert> out;
  for (auto& a : candidates) {
    const double rate = static_cast<double>(densest[pattern_of(a)]) / bucket_seconds;
    if (rate <= cfg.pps_max_cc) out.push_back(std::move(a));
  }
  return out;
}

std::vector<AttackRecord> detect_botnet_attacks(std::span<const Alert> alerts,
                                                std::optional<Timestamp> time_log,
                                                const DetectionConfig& cfg) {
  using GroupKey = std::tuple<std::int64_t, Ipv4, std::uint16_t, std::string>;
  std::map<GroupKey, std::vector<const Alert*>> groups;
  for (const auto& a : alerts) {
    if (a.direction != Direction::Outgoing || is_attack_filtered(a, cfg)) continue;
    if (time_log && a.timestamp < *time_log) continue;
    groups[{bucket_of(a.timestamp, cfg.time_bucket), a.dst_ip, a.dst_port, a.signature_name}]
        .push_back(&a);
  }

  struct Accumulator {
    std::set<std::pair<Ipv4, std::uint16_t>> victims;
    std::set<std::int64_t> buckets;
    std::vector<std::uint64_t> evidence;
  };
  std::map<std::pair<Ipv4, std::string>, Accumulator> clusters;
  for (const auto& [key, members] : groups) {
    if (members.size() < static_cast<std::size_t>(cfg.min_concurrent_attackers)) continue;
    for (const Alert* a : members) {
      auto& acc = clusters[{a->src_ip, a->signature_name}];
      acc.victims.emplace(a->dst_ip, a->dst_port);
      acc.buckets.insert(std::get<0>(key));
      acc.evidence.push_back(a->id);
    }
  }

  std::vector<AttackRecord> out;
  out.reserve(clusters.size());
  for (auto& [key, acc] : clusters) {
    AttackRecord r;
    r.src_ip = key.first;
    r.signature_name = key.second;
    r.victims.assign(acc.victims.begin(), acc.victims.end());
    r.buckets.assign(acc.buckets.begin(), acc.buckets.end());
    std::sort(acc.evidence.begin(), acc.evidence.end());
    r.evidence = std::move(acc.evidence);
    out.push_back(std::move(r));
  }
  return out;
}

PhaseTwoOutput run_phase2(std::span<const Alert> alerts, std::optional<Timestamp> time_log,
                          const DetectionConfig& cfg) {
  PhaseTwoOutput out;
  out.raw_3_1 = filter_part_c(alerts, time_log, cfg);
  out.report_3_1 = cluster_part_c(out.raw_3_1);
  out.report_3_2_alerts = filter_part_d(alerts, time_log, cfg);
  out.report_4 = detect_botnet_attacks(alerts, time_log, cfg);
  return out;
}

}  // namespace botdet
