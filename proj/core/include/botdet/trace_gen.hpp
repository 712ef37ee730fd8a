#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "botdet/alert_ingest.hpp"
#include "botdet/records.hpp"
#include "botdet/status.hpp"
#include "botdet/types.hpp"

namespace botdet {

// Deterministic synthetic alert traces with embedded ground truth.
//
// Every bot keeps one flow (host, source port, C2 ip, C2 port) for its whole
// session. Each bot response emits an "any port" PRIVMSG alert, plus a tracked
// PRIVMSG alert at the same instant when the bot's connection-time NICK was
// observed. Bots sharing a periodic schedule answer in the same second, the
// way botnet members answer one broadcast command. A bot that launches an
// attack acknowledges it with one response in the attack's first second.
//
// Chat clients model human turn-taking: no chat message shares a second with
// any other IRC message in the trace. Outgoing background noise never repeats
// a (second, destination, port, signature) tuple, so only scheduled attacks
// can satisfy the concurrent-attack definition.

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class BotKind { RxBot, CrimeScene };
enum class ScheduleKind { Periodic, Random };

struct ResponseSchedule {
  ScheduleKind kind = ScheduleKind::Periodic;
  double rate = 0.02;   // responses per second
  double start = 0.0;   // session start (NICK), seconds from trace start

  bool operator==(const ResponseSchedule&) const = default;
};

struct BotSpec {
  Ipv4 host_ip;
  BotKind kind = BotKind::RxBot;
  Ipv4 c2_ip;
  std::uint16_t c2_port = 6667;
  bool has_initial_nick = true;
  ResponseSchedule schedule;

  bool operator==(const BotSpec&) const = default;
};

struct ChatClientSpec {
  Ipv4 host_ip;
  Ipv4 server_ip;
  std::uint16_t server_port = 6667;
  double rate = 0.01;  // messages per second
  double start = 0.0;
  bool has_initial_nick = false;

  bool operator==(const ChatClientSpec&) const = default;
};

struct AttackSpec {
  std::optional<std::size_t> bot_index;  // attacker is a bot ...
  Ipv4 host_ip;                          // ... or a non-IRC host
  std::string signature_name = "ICMP flood";
  std::string signature_id = "1:9100001";
  Protocol protocol = Protocol::Icmp;
  Ipv4 victim_ip;
  std::uint16_t victim_port = 0;
  int start = 0;     // seconds from trace start
  int rate = 10;     // alerts in each second of the attack
  int duration = 1;  // seconds

  bool operator==(const AttackSpec&) const = default;
};

struct ScenarioSpec {
  std::string name = "custom";
  std::uint64_t seed = 1;
  int duration = 600;  // seconds
  Timestamp start_time = make_timestamp(2012, 4, 5, 13, 0, 0);
  std::vector<BotSpec> bots;
  std::vector<ChatClientSpec> chat_clients;
  std::vector<AttackSpec> attacks;
  double noise_rate = 0.0;          // background non-IRC alerts per second
  std::vector<Ipv4> noise_hosts;    // extra internal hosts for noise

  bool operator==(const ScenarioSpec&) const = default;
};

/// Detection path the generator expects a bot to be found through.
enum class ExpectedPath {
  CoherentNonStandard,
  CoherentStandard,
  NonCoherent,
  SingleNonStandard,
  SingleStandard,
  Undetectable,  // e.g. a lone standard-port bot with no attack
};

struct TruthBot {
  FlowPattern pattern;
  BotKind kind = BotKind::RxBot;
  ExpectedPath expected_path = ExpectedPath::Undetectable;
  bool expected_attack = false;
  std::size_t messages = 0;

  bool operator==(const TruthBot&) const = default;
};

struct TruthAttacker {
  Ipv4 src_ip;
  std::string signature_name;
  std::size_t alerts = 0;

  bool operator==(const TruthAttacker&) const = default;
};

struct GroundTruth {
  std::string scenario;
  std::uint64_t seed = 0;
  int year = 0;
  std::vector<TruthBot> bots;
  std::vector<FlowPattern> normal_flows;
  std::vector<TruthAttacker> attackers;
  std::size_t malicious_irc = 0;
  std::size_t normal_irc = 0;
  std::size_t total_alerts = 0;
  std::size_t nick_alerts = 0;
  std::size_t tracked_alerts = 0;
  std::size_t any_alerts = 0;
  std::size_t other_alerts = 0;

  bool operator==(const GroundTruth&) const = default;
};

struct GeneratedTrace {
  std::vector<Alert> alerts;  // timestamp order, ids 1..n, direction/kind unset
  GroundTruth truth;
};

void validate_spec(const ScenarioSpec& spec);

/// Same spec (including seed) -> identical trace.
GeneratedTrace generate(const ScenarioSpec& spec);

/// scenario1, scenario2, scenario3, darpa_inside_like, darpa_outside_like.
std::map<std::string, ScenarioSpec> builtin_specs();

/// A small randomized but valid scenario, for property tests and fuzzing.
ScenarioSpec random_spec(std::uint64_t seed);

std::string spec_to_json(const ScenarioSpec& spec);
ScenarioSpec spec_from_json(std::string_view text);
std::string truth_to_json(const GroundTruth& truth);
GroundTruth truth_from_json(std::string_view text);

/// Writes one record per line in the chosen format (Fast or Csv).
void write_trace(std::span<const Alert> alerts, InputFormat format, std::ostream& out,
                 std::span<const std::string> csv_columns);

std::string to_string(BotKind k);
std::string to_string(ExpectedPath p);

}  // namespace botdet
