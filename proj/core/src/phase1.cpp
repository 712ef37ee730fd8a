#include "botdet/phase1.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace botdet {

BotRecord make_bot_record(const std::vector<const Alert*>& alerts, Mode mode, StatusId status) {
  BotRecord r;
  r.pattern = pattern_of(*alerts.front());
  r.mode = mode;
  r.status = status;
  r.first_seen = alerts.front()->timestamp;
  r.last_seen = alerts.front()->timestamp;
  r.evidence.reserve(alerts.size());
  for (const Alert* a : alerts) {
    r.first_seen = std::min(r.first_seen, a->timestamp);
    r.last_seen = std::max(r.last_seen, a->timestamp);
    r.evidence.push_back(a->id);
  }
  std::sort(r.evidence.begin(), r.evidence.end());
  return r;
}

namespace {

bool is_outgoing_kind(const Alert& a, Kind kind) {
  return a.kind == kind && a.direction == Direction::Outgoing;
}

using FlowGroups = std::map<FlowPattern, std::vector<const Alert*>>;

FlowGroups group_by_flow(std::span<const Alert> alerts) {
  FlowGroups groups;
  for (const auto& a : alerts) groups[pattern_of(a)].push_back(&a);
  return groups;
}

std::vector<BotRecord> records_for(const FlowGroups& groups, const std::set<FlowPattern>& keep,
                                   Mode mode, StatusId status) {
  std::vector<BotRecord> out;
  for (const auto& [pattern, members] : groups)
    if (keep.contains(pattern)) out.push_back(make_bot_record(members, mode, status));
  return out;
}

}  // namespace

std::vector<Alert> filter_part_a(std::span<const Alert> alerts, const DetectionConfig& cfg) {
  std::vector<Alert> out;
  for (const auto& a : alerts)
    if (is_outgoing_kind(a, Kind::IrcPrivmsgTracked) && !is_standard_irc_port(a.dst_port, cfg))
      out.push_back(a);
  return out;
}

std::vector<Alert> filter_part_b(std::span<const Alert> alerts, const DetectionConfig& cfg) {
  std::vector<Alert> out;
  for (const auto& a : alerts)
    if (is_outgoing_kind(a, Kind::IrcPrivmsgTracked) && is_standard_irc_port(a.dst_port, cfg))
      out.push_back(a);
  return out;
}

PartTwoPool filter_part2(std::span<const Alert> alerts) {
  PartTwoPool pool;
  for (const auto& a : alerts) {
    if (!is_outgoing_kind(a, Kind::IrcPrivmsgAny)) continue;
    if (!pool.time_log || a.timestamp < *pool.time_log) pool.time_log = a.timestamp;
    pool.alerts.push_back(a);
  }
  return pool;
}

std::vector<Alert> similarity_dedup(std::span<const Alert> part1, std::span<const Alert> part2,
                                    const DetectionConfig& cfg) {
  std::set<std::pair<std::int64_t, std::uint16_t>> seen;
  for (const auto& a : part1) seen.emplace(bucket_of(a.timestamp, cfg.time_bucket), a.src_port);
  std::vector<Alert> out;
  for (const auto& a : part2)
    if (!seen.contains({bucket_of(a.timestamp, cfg.time_bucket), a.src_port})) out.push_back(a);
  return out;
}

std::vector<BotRecord> cluster_part_a(std::span<const Alert> alerts) {
  std::vector<BotRecord> out;
  for (const auto& [pattern, members] : group_by_flow(alerts))
    out.push_back(make_bot_record(members, Mode::Coherent, StatusId::CoherentNonStandard));
  return out;
}

std::vector<BotRecord> cluster_part_b(std::span<const Alert> alerts, const DetectionConfig& cfg) {
  std::map<std::int64_t, std::set<Ipv4>> hosts_per_bucket;
  for (const auto& a : alerts)
    hosts_per_bucket[bucket_of(a.timestamp, cfg.time_bucket)].insert(a.src_ip);

  std::set<FlowPattern> keep;
  for (const auto& a : alerts)
    if (hosts_per_bucket[bucket_of(a.timestamp, cfg.time_bucket)].size() >= 2)
      keep.insert(pattern_of(a));
  return records_for(group_by_flow(alerts), keep, Mode::Coherent, StatusId::CoherentStandard);
}

std::vector<BotRecord> cluster_part2(std::span<const Alert> alerts, const DetectionConfig& cfg) {
  using Key = std::tuple<std::int64_t, Ipv4, std::uint16_t>;
  auto key_of = [&](const Alert& a) {
    return Key{bucket_of(a.timestamp, cfg.time_bucket), a.dst_ip, a.dst_port};
  };
  std::map<Key, std::set<Ipv4>> hosts_per_key;
  for (const auto& a : alerts) hosts_per_key[key_of(a)].insert(a.src_ip);

  std::set<FlowPattern> keep;
  for (const auto& a : alerts)
    if (hosts_per_key[key_of(a)].size() >= 2) keep.insert(pattern_of(a));
  return records_for(group_by_flow(alerts), keep, Mode::NonCoherent, StatusId::NonCoherent);
}

void attach_initial_activity(std::vector<BotRecord>& records, std::span<const Alert> alerts) {
  std::map<FlowPattern, const Alert*> earliest;
  for (const auto& a : alerts) {
    if (!is_outgoing_kind(a, Kind::IrcNickInitial)) continue;
    auto [it, inserted] = earliest.try_emplace(pattern_of(a), &a);
    if (!inserted && a.timestamp < it->second->timestamp) it->second = &a;
  }
  for (auto& r : records) {
    auto it = earliest.find(r.pattern);
    if (it == earliest.end()) continue;
    r.initial_activity = it->second->timestamp;
    r.evidence.insert(std::upper_bound(r.evidence.begin(), r.evidence.end(), it->second->id),
                      it->second->id);
  }
}

PhaseOneOutput run_phase1(std::span<const Alert> alerts, const DetectionConfig& cfg) {
  PhaseOneOutput out;
  const auto part_a = filter_part_a(alerts, cfg);
  const auto part_b = filter_part_b(alerts, cfg);
  auto pool = filter_part2(alerts);
  out.time_log = pool.time_log;

  std::vector<Alert> part1 = part_a;
  part1.insert(part1.end(), part_b.begin(), part_b.end());
  const auto part2 = similarity_dedup(part1, pool.alerts, cfg);

  // With no tracked alerts Part 1 is skipped and both reports stay empty.
  out.report_1_1 = cluster_part_a(part_a);
  out.report_1_2 = cluster_part_b(part_b, cfg);
  attach_initial_activity(out.report_1_1, alerts);
  attach_initial_activity(out.report_1_2, alerts);

  std::set<FlowPattern> coherent;
  for (const auto& r : out.report_1_1) coherent.insert(r.pattern);
  for (const auto& r : out.report_1_2) coherent.insert(r.pattern);
  for (auto& r : cluster_part2(part2, cfg))
    if (!coherent.contains(r.pattern)) out.report_2.push_back(std::move(r));

  out.raw_2 = std::move(pool.alerts);
  return out;
}

}  // namespace botdet
