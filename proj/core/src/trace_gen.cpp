#include "botdet/trace_gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "json.hpp"

namespace botdet {

namespace {

using json = nlohmann::json;

constexpr std::string_view kNickName = "IRC NICK change on connection";
constexpr std::string_view kTrackedName = "IRC PRIVMSG on tagged connection";
constexpr std::string_view kAnyName = "CHAT IRC message";

struct NoiseSignature {
  const char* sid;
  const char* name;
  Protocol protocol;
  std::uint16_t port;
};

constexpr NoiseSignature kNoise[] = {
    {"1:469", "ICMP PING NMAP", Protocol::Icmp, 0},
    {"1:384", "ICMP PING", Protocol::Icmp, 0},
    {"1:408", "ICMP Echo Reply", Protocol::Icmp, 0},
    {"1:1390", "SHELLCODE x86 inc ebx NOOP", Protocol::Tcp, 80},
    {"1:524", "BAD-TRAFFIC tcp port 0 traffic", Protocol::Tcp, 0},
    {"1:1201", "ATTACK-RESPONSES 403 Forbidden", Protocol::Tcp, 80},
    {"1:2003", "MS-SQL Worm propagation attempt", Protocol::Udp, 1434},
    {"1:1419", "SNMP trap udp", Protocol::Udp, 162},
    {"1:2925", "INFO web bug 0x0 gif attempt", Protocol::Tcp, 80},
    {"1:1852", "WEB-MISC robots.txt access", Protocol::Tcp, 80},
};

constexpr double kEps = 1e-9;

std::size_t count_for(double rate, double window) {
  if (rate <= 0 || window <= 0) return 0;
  return static_cast<std::size_t>(std::floor(rate * window + kEps));
}

bool standard_port(std::uint16_t port) { return PortRange{}.contains(port); }

class Builder {
 public:
  explicit Builder(const ScenarioSpec& spec) : spec_(spec), rng_(spec.seed) {}

  GeneratedTrace run();

 private:
  std::int64_t micros() { return std::uniform_int_distribution<std::int64_t>(0, 999'999)(rng_); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  Timestamp at(std::int64_t second, std::int64_t us) const {
    return spec_.start_time + std::chrono::seconds{second} + Duration{us};
  }
  std::uint16_t fresh_port() {
    for (;;) {
      auto p = static_cast<std::uint16_t>(uniform(1025, 4999));
      if (used_ports_.insert(p).second) return p;
    }
  }

  void emit(Timestamp ts, std::string_view sid, std::string_view name, Protocol proto, Ipv4 src,
            std::uint16_t sport, Ipv4 dst, std::uint16_t dport) {
    Alert a;
    a.timestamp = ts;
    a.signature_id = std::string(sid);
    a.signature_name = std::string(name);
    a.protocol = proto;
    a.src_ip = src;
    a.dst_ip = dst;
    a.src_port = proto == Protocol::Icmp ? 0 : sport;
    a.dst_port = proto == Protocol::Icmp ? 0 : dport;
    alerts_.push_back(std::move(a));
  }

  void emit_nick(const FlowPattern& f, std::int64_t second) {
    emit(at(second, micros()), kDefaultNickSid, kNickName, Protocol::Tcp, f.src_ip, f.src_port,
         f.dst_ip, f.dst_port);
    ++truth_.nick_alerts;
  }

  // One PRIVMSG as seen by the any-port rule, plus the tracked rule's copy.
  void emit_response(std::size_t bot, Timestamp ts) {
    emit_privmsg(bot_flows_[bot], ts, spec_.bots[bot].has_initial_nick);
    bot_seconds_[bot].insert((ts - spec_.start_time) / std::chrono::seconds{1});
    ++bot_messages_[bot];
  }

  void emit_privmsg(const FlowPattern& f, Timestamp ts, bool tracked) {
    emit(ts, kDefaultAnyPrivmsgSid, kAnyName, Protocol::Tcp, f.src_ip, f.src_port, f.dst_ip,
         f.dst_port);
    ++truth_.any_alerts;
    if (tracked) {
      emit(ts, kDefaultTrackedPrivmsgSid, kTrackedName, Protocol::Tcp, f.src_ip, f.src_port,
           f.dst_ip, f.dst_port);
      ++truth_.tracked_alerts;
    }
    occupied_.insert((ts - spec_.start_time) / std::chrono::seconds{1});
  }

  void bots();
  void attacks();
  void chat();
  void noise();
  ExpectedPath expected_path(std::size_t i) const;
  bool expected_attack(std::size_t i) const;

  const ScenarioSpec& spec_;
  std::mt19937_64 rng_;
  std::vector<Alert> alerts_;
  GroundTruth truth_;
  std::set<std::uint16_t> used_ports_;
  std::set<std::int64_t> occupied_;  // seconds holding any PRIVMSG
  std::vector<FlowPattern> bot_flows_;
  std::vector<std::size_t> bot_messages_;
  std::vector<std::set<std::int64_t>> bot_seconds_;        // response seconds per bot
  std::map<Ipv4, std::set<std::int64_t>> attack_seconds_;  // per attacking host
};

void Builder::bots() {
  for (const auto& b : spec_.bots) bot_flows_.push_back({b.host_ip, fresh_port(), b.c2_ip, b.c2_port});
  bot_messages_.assign(spec_.bots.size(), 0);
  bot_seconds_.assign(spec_.bots.size(), {});

  for (std::size_t i = 0; i < spec_.bots.size(); ++i) {
    const auto& b = spec_.bots[i];
    const auto& s = b.schedule;
    const auto start = static_cast<std::int64_t>(std::floor(s.start));
    if (b.has_initial_nick) emit_nick(bot_flows_[i], start);

    const double first = s.start + 1.0;
    const std::size_t n = count_for(s.rate, spec_.duration - first);
    if (s.kind == ScheduleKind::Periodic) {
      for (std::size_t k = 0; k < n; ++k) {
        const auto second = static_cast<std::int64_t>(std::floor(first + k / s.rate + kEps));
        emit_response(i, at(second, micros()));
      }
    } else {
      const auto lo = static_cast<std::int64_t>(std::ceil(first * 1e6));
      const auto hi = static_cast<std::int64_t>(spec_.duration) * 1'000'000 - 1;
      for (std::size_t k = 0; k < n; ++k)
        emit_response(i, spec_.start_time + Duration{uniform(lo, hi)});
    }
  }
}

void Builder::attacks() {
  for (const auto& atk : spec_.attacks) {
    Ipv4 host = atk.host_ip;
    if (atk.bot_index) {
      const auto i = *atk.bot_index;
      host = spec_.bots[i].host_ip;
      emit_response(i, at(atk.start, micros()));
    }
    // A lone attacker needs at least two alerts per second to register.
    if (atk.rate >= 2)
      for (int s = atk.start; s < atk.start + atk.duration; ++s) attack_seconds_[host].insert(s);
    for (int s = atk.start; s < atk.start + atk.duration; ++s)
      for (int k = 0; k < atk.rate; ++k)
        emit(at(s, micros()), atk.signature_id, atk.signature_name, atk.protocol, host,
             static_cast<std::uint16_t>(uniform(1025, 65535)), atk.victim_ip, atk.victim_port);
    const auto n = static_cast<std::size_t>(atk.rate) * static_cast<std::size_t>(atk.duration);
    truth_.other_alerts += n;
    truth_.attackers.push_back({host, atk.signature_name, n});
  }
}

void Builder::chat() {
  for (const auto& c : spec_.chat_clients) {
    const FlowPattern flow{c.host_ip, fresh_port(), c.server_ip, c.server_port};
    truth_.normal_flows.push_back(flow);
    const auto start = static_cast<std::int64_t>(std::floor(c.start));
    if (c.has_initial_nick) emit_nick(flow, start);

    const std::size_t n = count_for(c.rate, spec_.duration - c.start);
    const auto lo = static_cast<std::int64_t>(std::ceil(c.start * 1e6));
    const auto hi = static_cast<std::int64_t>(spec_.duration) * 1'000'000 - 1;
    for (std::size_t k = 0; k < n; ++k) {
      for (int attempt = 0;; ++attempt) {
        if (attempt == 100'000)
          throw SpecError("chat_clients: not enough free seconds for " + std::to_string(n) +
                          " messages from " + c.host_ip.to_string());
        const auto offset = uniform(lo, hi);
        if (occupied_.contains(offset / 1'000'000)) continue;
        emit_privmsg(flow, spec_.start_time + Duration{offset}, c.has_initial_nick);
        break;
      }
    }
    truth_.normal_irc += n;
  }
}

void Builder::noise() {
  std::vector<Ipv4> inside = spec_.noise_hosts;
  if (inside.empty())
    for (std::uint8_t h = 100; h < 140; ++h) inside.emplace_back(10, 0, 0, h);
  auto external = [&] {
    return Ipv4(198, 19, static_cast<std::uint8_t>(uniform(0, 255)),
                static_cast<std::uint8_t>(uniform(1, 254)));
  };
  auto internal = [&] { return inside[static_cast<std::size_t>(uniform(0, inside.size() - 1))]; };

  std::set<std::tuple<std::int64_t, Ipv4, std::uint16_t, std::size_t>> outgoing_keys;
  const std::size_t n = count_for(spec_.noise_rate, spec_.duration);
  const auto hi = static_cast<std::int64_t>(spec_.duration) * 1'000'000 - 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      const auto offset = uniform(0, hi);
      const auto sig = static_cast<std::size_t>(uniform(0, std::size(kNoise) - 1));
      const auto& ns = kNoise[sig];
      const auto roll = uniform(0, 99);
      Ipv4 src, dst;
      if (roll < 40) {
        src = internal();
        dst = external();
        if (!outgoing_keys.insert({offset / 1'000'000, dst, ns.port, sig}).second) continue;
      } else if (roll < 70) {
        src = external();
        dst = internal();
      } else if (roll < 85) {
        src = internal();
        dst = internal();
      } else {
        src = external();
        dst = external();
      }
      emit(spec_.start_time + Duration{offset}, ns.sid, ns.name, ns.protocol, src,
           static_cast<std::uint16_t>(uniform(1025, 65535)), dst, ns.port);
      break;
    }
  }
  truth_.other_alerts += n;
}

bool Builder::expected_attack(std::size_t i) const {
  auto it = attack_seconds_.find(spec_.bots[i].host_ip);
  if (it == attack_seconds_.end()) return false;
  return std::any_of(bot_seconds_[i].begin(), bot_seconds_[i].end(),
                     [&](std::int64_t s) { return it->second.contains(s); });
}

ExpectedPath Builder::expected_path(std::size_t i) const {
  const auto& b = spec_.bots[i];
  auto partner = [&](auto&& extra) {
    for (std::size_t j = 0; j < spec_.bots.size(); ++j) {
      const auto& o = spec_.bots[j];
      if (j == i || o.host_ip == b.host_ip) continue;
      if (b.schedule.kind != ScheduleKind::Periodic || o.schedule != b.schedule) continue;
      if (bot_messages_[i] == 0 || bot_messages_[j] == 0) continue;
      if (extra(o)) return true;
    }
    return false;
  };
  const bool standard = standard_port(b.c2_port);

  if (b.has_initial_nick && !standard && bot_messages_[i] > 0) return ExpectedPath::CoherentNonStandard;
  if (b.has_initial_nick && standard &&
      partner([](const BotSpec& o) { return o.has_initial_nick && standard_port(o.c2_port); }))
    return ExpectedPath::CoherentStandard;
  if (!b.has_initial_nick && partner([&](const BotSpec& o) {
        return !o.has_initial_nick && o.c2_ip == b.c2_ip && o.c2_port == b.c2_port;
      }))
    return ExpectedPath::NonCoherent;
  if (!standard && bot_messages_[i] > 0) return ExpectedPath::SingleNonStandard;
  if (standard && expected_attack(i)) return ExpectedPath::SingleStandard;
  return ExpectedPath::Undetectable;
}

GeneratedTrace Builder::run() {
  validate_spec(spec_);
  truth_.scenario = spec_.name;
  truth_.seed = spec_.seed;
  truth_.year = year_of(spec_.start_time);

  bots();
  attacks();
  chat();
  noise();

  for (std::size_t i = 0; i < spec_.bots.size(); ++i) {
    truth_.bots.push_back({bot_flows_[i], spec_.bots[i].kind, expected_path(i), expected_attack(i),
                           bot_messages_[i]});
    truth_.malicious_irc += bot_messages_[i];
  }

  std::stable_sort(alerts_.begin(), alerts_.end(),
                   [](const Alert& a, const Alert& b) { return a.timestamp < b.timestamp; });
  for (std::size_t k = 0; k < alerts_.size(); ++k) alerts_[k].id = k + 1;
  truth_.total_alerts = alerts_.size();
  return {std::move(alerts_), std::move(truth_)};
}

// JSON helpers ---------------------------------------------------------------

std::string ip_str(Ipv4 ip) { return ip.to_string(); }

Ipv4 ip_from(const json& j, std::string_view key) {
  if (!j.is_string()) throw SpecError(std::string(key) + ": expected an address string");
  auto ip = Ipv4::parse(j.get<std::string>());
  if (!ip) throw SpecError(std::string(key) + ": invalid address '" + j.get<std::string>() + "'");
  return *ip;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys,
                    std::string_view where) {
  if (!j.is_object()) throw SpecError(std::string(where) + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw SpecError(std::string(where) + ": unknown key '" + k + "'");
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SpecError(std::string(key) + ": wrong type");
  }
}

BotKind bot_kind_from(const std::string& s) {
  if (s == "rxbot") return BotKind::RxBot;
  if (s == "crime_scene") return BotKind::CrimeScene;
  throw SpecError("kind: unknown bot kind '" + s + "'");
}

ExpectedPath path_from(const std::string& s) {
  for (auto p : {ExpectedPath::CoherentNonStandard, ExpectedPath::CoherentStandard,
                 ExpectedPath::NonCoherent, ExpectedPath::SingleNonStandard,
                 ExpectedPath::SingleStandard, ExpectedPath::Undetectable})
    if (to_string(p) == s) return p;
  throw SpecError("expected_path: unknown value '" + s + "'");
}

json flow_json(const FlowPattern& f) {
  return {{"src_ip", ip_str(f.src_ip)},
          {"src_port", f.src_port},
          {"dst_ip", ip_str(f.dst_ip)},
          {"dst_port", f.dst_port}};
}

FlowPattern flow_from(const json& j) {
  reject_unknown(j, {"src_ip", "src_port", "dst_ip", "dst_port"}, "flow");
  return {ip_from(j.at("src_ip"), "src_ip"), j.at("src_port").get<std::uint16_t>(),
          ip_from(j.at("dst_ip"), "dst_ip"), j.at("dst_port").get<std::uint16_t>()};
}

}  // namespace

std::string to_string(BotKind k) { return k == BotKind::RxBot ? "rxbot" : "crime_scene"; }

std::string to_string(ExpectedPath p) {
  switch (p) {
    case ExpectedPath::CoherentNonStandard: return "coherent_nonstandard";
    case ExpectedPath::CoherentStandard: return "coherent_standard";
    case ExpectedPath::NonCoherent: return "noncoherent";
    case ExpectedPath::SingleNonStandard: return "single_nonstandard";
    case ExpectedPath::SingleStandard: return "single_standard";
    case ExpectedPath::Undetectable: return "undetectable";
  }
  return "undetectable";
}

void validate_spec(const ScenarioSpec& spec) {
  if (spec.duration <= 0) throw SpecError("duration: must be positive");
  if (spec.start_time.time_since_epoch() % std::chrono::seconds{1} != Duration::zero())
    throw SpecError("start_time: must fall on a whole second");
  if (const int y = year_of(spec.start_time); y < 2000 || y > 2099)
    throw SpecError("start_time: year must lie in 2000-2099");
  if (!(spec.noise_rate >= 0) || !std::isfinite(spec.noise_rate))
    throw SpecError("noise_rate: must be a finite non-negative number");

  std::set<Ipv4> bot_hosts, attack_hosts;
  for (std::size_t i = 0; i < spec.bots.size(); ++i) {
    const auto& b = spec.bots[i];
    const auto where = "bots[" + std::to_string(i) + "]";
    if (!(b.schedule.rate >= 0) || !std::isfinite(b.schedule.rate) || b.schedule.rate > 1.0)
      throw SpecError(where + ".schedule.rate: must lie in [0, 1]");
    if (!(b.schedule.start >= 0) || b.schedule.start + 1 >= spec.duration)
      throw SpecError(where + ".schedule.start: must lie in [0, duration - 1)");
    if (b.c2_port == 0) throw SpecError(where + ".c2_port: must be non-zero");
    bot_hosts.insert(b.host_ip);
  }
  for (std::size_t i = 0; i < spec.attacks.size(); ++i) {
    const auto& a = spec.attacks[i];
    const auto where = "attacks[" + std::to_string(i) + "]";
    if (a.bot_index && *a.bot_index >= spec.bots.size())
      throw SpecError(where + ".bot_index: no such bot");
    if (a.rate < 1) throw SpecError(where + ".rate: must be at least 1");
    if (a.duration < 1) throw SpecError(where + ".duration: must be at least 1");
    if (a.start < 0 || a.start + a.duration > spec.duration)
      throw SpecError(where + ".start: attack must end within the trace");
    if (a.signature_name.empty() || a.signature_id.empty())
      throw SpecError(where + ".signature: name and id are required");
    if (a.signature_id == kDefaultNickSid || a.signature_id == kDefaultTrackedPrivmsgSid ||
        a.signature_id == kDefaultAnyPrivmsgSid)
      throw SpecError(where + ".signature_id: reserved for IRC rules");
    attack_hosts.insert(a.bot_index ? spec.bots[*a.bot_index].host_ip : a.host_ip);
  }
  for (std::size_t i = 0; i < spec.chat_clients.size(); ++i) {
    const auto& c = spec.chat_clients[i];
    const auto where = "chat_clients[" + std::to_string(i) + "]";
    if (!standard_port(c.server_port))
      throw SpecError(where + ".server_port: chat uses standard IRC ports only");
    if (bot_hosts.contains(c.host_ip) || attack_hosts.contains(c.host_ip))
      throw SpecError(where + ".host_ip: chat hosts must not be bots or attackers");
    if (!(c.rate >= 0) || !std::isfinite(c.rate) || c.rate > 0.5)
      throw SpecError(where + ".rate: must lie in [0, 0.5]");
    if (!(c.start >= 0) || c.start >= spec.duration)
      throw SpecError(where + ".start: must lie in [0, duration)");
  }
}

GeneratedTrace generate(const ScenarioSpec& spec) { return Builder(spec).run(); }

std::map<std::string, ScenarioSpec> builtin_specs() {
  std::map<std::string, ScenarioSpec> out;
  const Ipv4 pc1(10, 0, 0, 11), pc2(10, 0, 0, 12), pc3(10, 0, 0, 13);
  const Ipv4 rx_c2(203, 0, 113, 10), cs_c2(198, 51, 100, 7), cs_c2b(198, 51, 100, 8);
  const Ipv4 chat_server(192, 0, 2, 50);
  auto periodic = [](double rate) { return ResponseSchedule{ScheduleKind::Periodic, rate, 0.0}; };
  auto random = [](double rate) { return ResponseSchedule{ScheduleKind::Random, rate, 0.0}; };
  auto client = [&](std::uint8_t host, double rate, bool nick, Ipv4 server) {
    return ChatClientSpec{Ipv4(10, 0, 0, host), server, 6667, rate, 0.0, nick};
  };

  {
    ScenarioSpec s;
    s.name = "scenario1";
    s.seed = 101;
    s.duration = 1801;
    s.bots = {
        {pc2, BotKind::CrimeScene, cs_c2, 7000, true, random(36.0 / 1800)},
        {pc3, BotKind::CrimeScene, cs_c2, 7000, true, random(35.0 / 1800)},
        {pc1, BotKind::RxBot, rx_c2, 6667, true, periodic(0.02)},
        {pc2, BotKind::RxBot, rx_c2, 6667, true, periodic(0.02)},
        {pc3, BotKind::RxBot, rx_c2, 6667, true, periodic(0.02)},
    };
    for (std::size_t i = 2; i < 5; ++i) {
      AttackSpec a;
      a.bot_index = i;
      a.signature_name = "DDOS TCP SYN flood";
      a.signature_id = "1:9100002";
      a.protocol = Protocol::Tcp;
      a.victim_ip = Ipv4(198, 18, 0, 5);
      a.victim_port = 80;
      a.start = 900;
      a.rate = 20;
      a.duration = 60;
      s.attacks.push_back(a);
    }
    s.chat_clients = {client(21, 48.0 / 1801, true, chat_server),
                      client(22, 47.0 / 1801, true, chat_server),
                      client(23, 47.0 / 1801, true, chat_server)};
    s.noise_rate = 6003.0 / 1801;
    out[s.name] = s;
  }
  {
    ScenarioSpec s;
    s.name = "scenario2";
    s.seed = 202;
    s.duration = 901;
    s.bots = {
        {pc1, BotKind::CrimeScene, cs_c2, 7000, true, random(19.0 / 900)},
        {pc2, BotKind::CrimeScene, cs_c2, 7000, true, random(18.0 / 900)},
        {pc2, BotKind::RxBot, rx_c2, 6667, false, periodic(1.0 / 60)},
        {pc3, BotKind::RxBot, rx_c2, 6667, false, periodic(1.0 / 60)},
    };
    s.chat_clients = {client(21, 32.0 / 901, false, rx_c2), client(22, 32.0 / 901, false, rx_c2),
                      client(23, 32.0 / 901, false, rx_c2)};
    s.noise_rate = 1871.0 / 901;
    out[s.name] = s;
  }
  {
    ScenarioSpec s;
    s.name = "scenario3";
    s.seed = 303;
    s.duration = 1201;
    s.bots = {
        {pc1, BotKind::CrimeScene, cs_c2, 7000, true, random(17.0 / 1200)},
        {pc2, BotKind::CrimeScene, cs_c2b, 7000, false, random(16.0 / 1200)},
        {pc3, BotKind::RxBot, rx_c2, 6667, false, periodic(16.0 / 1200)},
    };
    AttackSpec a;
    a.bot_index = 2;
    a.signature_name = "ICMP flood";
    a.signature_id = "1:9100001";
    a.protocol = Protocol::Icmp;
    a.victim_ip = Ipv4(198, 18, 0, 9);
    a.start = 600;
    a.rate = 100;
    a.duration = 600;
    s.attacks.push_back(a);
    s.chat_clients = {client(21, 33.0 / 1201, false, chat_server),
                      client(22, 33.0 / 1201, false, chat_server),
                      client(23, 33.0 / 1201, false, chat_server)};
    s.noise_rate = 822.0 / 1201;
    out[s.name] = s;
  }

  std::vector<Ipv4> lab;
  for (std::uint8_t h = 2; h < 40; ++h) lab.emplace_back(172, 16, 112, h);
  const Ipv4 darpa_server(192, 0, 2, 60);
  {
    ScenarioSpec s;
    s.name = "darpa_inside_like";
    s.seed = 404;
    s.duration = 19800;
    s.start_time = make_timestamp(2000, 3, 7, 9, 0, 0);
    s.chat_clients = {{Ipv4(172, 16, 112, 50), darpa_server, 6667, 20.0 / 19800, 0.0, false},
                      {Ipv4(172, 16, 112, 51), darpa_server, 6667, 15.0 / 19800, 0.0, false}};
    s.noise_rate = 895.0 / 19800;
    s.noise_hosts = lab;
    out[s.name] = s;
  }
  {
    ScenarioSpec s;
    s.name = "darpa_outside_like";
    s.seed = 505;
    s.duration = 19800;
    s.start_time = make_timestamp(2000, 3, 7, 9, 0, 0);
    s.chat_clients = {{Ipv4(172, 16, 112, 50), darpa_server, 6667, 18.0 / 19800, 0.0, false},
                      {Ipv4(172, 16, 112, 51), darpa_server, 6667, 18.0 / 19800, 0.0, false},
                      {Ipv4(172, 16, 112, 52), darpa_server, 6667, 17.0 / 19800, 0.0, false}};
    s.noise_rate = 428.0 / 19800;
    s.noise_hosts = lab;
    out[s.name] = s;
  }
  return out;
}

ScenarioSpec random_spec(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto external = [&] {
    return Ipv4(203, 0, 113, static_cast<std::uint8_t>(pick(1, 254)));
  };
  constexpr std::uint16_t kC2Ports[] = {6667, 6665, 6668, 7000, 8080, 5555, 6697};

  ScenarioSpec s;
  s.name = "random";
  s.seed = seed;
  s.duration = static_cast<int>(pick(60, 240));

  std::uint8_t next_bot_host = 1;
  const auto botnets = pick(0, 2);
  for (std::int64_t n = 0; n < botnets; ++n) {
    const Ipv4 c2 = external();
    const auto port = kC2Ports[pick(0, std::size(kC2Ports) - 1)];
    const bool nick = pick(0, 1) == 1;
    const bool periodic = n == 0 || pick(0, 1) == 1;
    const double rate = real(0.05, 0.4);
    const double start = n == 0 ? 0.0 : static_cast<double>(pick(0, s.duration / 4));
    const auto members = pick(1, 3);
    for (std::int64_t m = 0; m < members; ++m) {
      BotSpec b;
      b.host_ip = Ipv4(10, 0, 1, next_bot_host++);
      b.kind = periodic ? BotKind::RxBot : BotKind::CrimeScene;
      b.c2_ip = c2;
      b.c2_port = port;
      b.has_initial_nick = nick;
      b.schedule = {periodic ? ScheduleKind::Periodic : ScheduleKind::Random,
                    periodic ? rate : real(0.05, 0.3), start};
      s.bots.push_back(b);
    }
  }

  if (!s.bots.empty()) {
    struct Sig {
      const char* name;
      const char* sid;
      Protocol proto;
      std::uint16_t port;
    };
    constexpr Sig kAttacks[] = {{"ICMP flood", "1:9100001", Protocol::Icmp, 0},
                                {"DDOS TCP SYN flood", "1:9100002", Protocol::Tcp, 80},
                                {"UDP flood", "1:9100003", Protocol::Udp, 53}};
    const auto count = pick(0, 2);
    std::uint8_t next_plain = 1;
    for (std::int64_t n = 0; n < count; ++n) {
      const auto& sig = kAttacks[pick(0, std::size(kAttacks) - 1)];
      AttackSpec a;
      if (pick(0, 2) > 0) a.bot_index = static_cast<std::size_t>(pick(0, s.bots.size() - 1));
      else a.host_ip = Ipv4(10, 0, 3, next_plain++);
      a.signature_name = sig.name;
      a.signature_id = sig.sid;
      a.protocol = sig.proto;
      a.victim_ip = Ipv4(198, 18, static_cast<std::uint8_t>(pick(0, 3)),
                         static_cast<std::uint8_t>(pick(1, 254)));
      a.victim_port = sig.port;
      a.duration = static_cast<int>(pick(1, 8));
      a.start = static_cast<int>(pick(2, s.duration - a.duration));
      a.rate = static_cast<int>(pick(2, 6));
      s.attacks.push_back(a);
    }
  }

  const auto clients = pick(0, 3);
  for (std::int64_t n = 0; n < clients; ++n) {
    ChatClientSpec c;
    c.host_ip = Ipv4(10, 0, 2, static_cast<std::uint8_t>(n + 1));
    const bool share = !s.bots.empty() && PortRange{}.contains(s.bots[0].c2_port) && pick(0, 1);
    c.server_ip = share ? s.bots[0].c2_ip : Ipv4(192, 0, 2, 50);
    c.server_port = share ? s.bots[0].c2_port : 6667;
    c.rate = real(0.01, 0.08);
    c.start = static_cast<double>(pick(0, s.duration / 2));
    c.has_initial_nick = pick(0, 1) == 1;
    s.chat_clients.push_back(c);
  }
  s.noise_rate = real(0.0, 2.0);
  return s;
}

std::string spec_to_json(const ScenarioSpec& spec) {
  json j;
  j["name"] = spec.name;
  j["seed"] = spec.seed;
  j["duration"] = spec.duration;
  j["start_time"] = format_timestamp(spec.start_time);
  j["noise_rate"] = spec.noise_rate;
  j["noise_hosts"] = json::array();
  for (auto ip : spec.noise_hosts) j["noise_hosts"].push_back(ip_str(ip));
  j["bots"] = json::array();
  for (const auto& b : spec.bots)
    j["bots"].push_back({{"host_ip", ip_str(b.host_ip)},
                         {"kind", to_string(b.kind)},
                         {"c2_ip", ip_str(b.c2_ip)},
                         {"c2_port", b.c2_port},
                         {"has_initial_nick", b.has_initial_nick},
                         {"schedule",
                          {{"kind", b.schedule.kind == ScheduleKind::Periodic ? "periodic" : "random"},
                           {"rate", b.schedule.rate},
                           {"start", b.schedule.start}}}});
  j["chat_clients"] = json::array();
  for (const auto& c : spec.chat_clients)
    j["chat_clients"].push_back({{"host_ip", ip_str(c.host_ip)},
                                 {"server_ip", ip_str(c.server_ip)},
                                 {"server_port", c.server_port},
                                 {"rate", c.rate},
                                 {"start", c.start},
                                 {"has_initial_nick", c.has_initial_nick}});
  j["attacks"] = json::array();
  for (const auto& a : spec.attacks) {
    json e = {{"signature_name", a.signature_name},
              {"signature_id", a.signature_id},
              {"protocol", to_string(a.protocol)},
              {"victim_ip", ip_str(a.victim_ip)},
              {"victim_port", a.victim_port},
              {"start", a.start},
              {"rate", a.rate},
              {"duration", a.duration}};
    if (a.bot_index) e["bot_index"] = *a.bot_index;
    else e["host_ip"] = ip_str(a.host_ip);
    j["attacks"].push_back(e);
  }
  return j.dump(2);
}

ScenarioSpec spec_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec is not valid JSON: ") + e.what());
  }
  reject_unknown(j, {"name", "seed", "duration", "start_time", "noise_rate", "noise_hosts", "bots",
                     "chat_clients", "attacks"},
                 "spec");
  ScenarioSpec s;
  s.name = get_or<std::string>(j, "name", s.name);
  s.seed = get_or<std::uint64_t>(j, "seed", s.seed);
  s.duration = get_or<int>(j, "duration", s.duration);
  if (j.contains("start_time")) {
    auto ts = parse_timestamp(get_or<std::string>(j, "start_time", ""));
    if (!ts) throw SpecError("start_time: expected an ISO-8601 UTC timestamp");
    s.start_time = *ts;
  }
  s.noise_rate = get_or<double>(j, "noise_rate", s.noise_rate);
  if (j.contains("noise_hosts"))
    for (const auto& h : j.at("noise_hosts")) s.noise_hosts.push_back(ip_from(h, "noise_hosts"));

  try {
    if (j.contains("bots")) {
      for (const auto& e : j.at("bots")) {
        reject_unknown(e, {"host_ip", "kind", "c2_ip", "c2_port", "has_initial_nick", "schedule"},
                       "bots");
        BotSpec b;
        b.host_ip = ip_from(e.at("host_ip"), "host_ip");
        b.kind = bot_kind_from(get_or<std::string>(e, "kind", "rxbot"));
        b.c2_ip = ip_from(e.at("c2_ip"), "c2_ip");
        b.c2_port = get_or<std::uint16_t>(e, "c2_port", b.c2_port);
        b.has_initial_nick = get_or<bool>(e, "has_initial_nick", b.has_initial_nick);
        if (e.contains("schedule")) {
          const auto& sc = e.at("schedule");
          reject_unknown(sc, {"kind", "rate", "start"}, "schedule");
          const auto kind = get_or<std::string>(sc, "kind", "periodic");
          if (kind != "periodic" && kind != "random")
            throw SpecError("schedule.kind: expected periodic or random");
          b.schedule.kind = kind == "periodic" ? ScheduleKind::Periodic : ScheduleKind::Random;
          b.schedule.rate = get_or<double>(sc, "rate", b.schedule.rate);
          b.schedule.start = get_or<double>(sc, "start", b.schedule.start);
        }
        s.bots.push_back(b);
      }
    }
    if (j.contains("chat_clients")) {
      for (const auto& e : j.at("chat_clients")) {
        reject_unknown(e, {"host_ip", "server_ip", "server_port", "rate", "start", "has_initial_nick"},
                       "chat_clients");
        ChatClientSpec c;
        c.host_ip = ip_from(e.at("host_ip"), "host_ip");
        c.server_ip = ip_from(e.at("server_ip"), "server_ip");
        c.server_port = get_or<std::uint16_t>(e, "server_port", c.server_port);
        c.rate = get_or<double>(e, "rate", c.rate);
        c.start = get_or<double>(e, "start", c.start);
        c.has_initial_nick = get_or<bool>(e, "has_initial_nick", c.has_initial_nick);
        s.chat_clients.push_back(c);
      }
    }
    if (j.contains("attacks")) {
      for (const auto& e : j.at("attacks")) {
        reject_unknown(e, {"bot_index", "host_ip", "signature_name", "signature_id", "protocol",
                           "victim_ip", "victim_port", "start", "rate", "duration"},
                       "attacks");
        AttackSpec a;
        if (e.contains("bot_index")) a.bot_index = get_or<std::size_t>(e, "bot_index", 0);
        else if (e.contains("host_ip")) a.host_ip = ip_from(e.at("host_ip"), "host_ip");
        else throw SpecError("attacks: bot_index or host_ip is required");
        a.signature_name = get_or<std::string>(e, "signature_name", a.signature_name);
        a.signature_id = get_or<std::string>(e, "signature_id", a.signature_id);
        auto proto = protocol_from_string(get_or<std::string>(e, "protocol", "ICMP"));
        if (!proto) throw SpecError("attacks.protocol: unknown protocol");
        a.protocol = *proto;
        a.victim_ip = ip_from(e.at("victim_ip"), "victim_ip");
        a.victim_port = get_or<std::uint16_t>(e, "victim_port", a.victim_port);
        a.start = get_or<int>(e, "start", a.start);
        a.rate = get_or<int>(e, "rate", a.rate);
        a.duration = get_or<int>(e, "duration", a.duration);
        s.attacks.push_back(a);
      }
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("spec: ") + e.what());
  }
  validate_spec(s);
  return s;
}

std::string truth_to_json(const GroundTruth& t) {
  json j;
  j["scenario"] = t.scenario;
  j["seed"] = t.seed;
  j["year"] = t.year;
  j["bots"] = json::array();
  for (const auto& b : t.bots)
    j["bots"].push_back({{"pattern", flow_json(b.pattern)},
                         {"kind", to_string(b.kind)},
                         {"expected_path", to_string(b.expected_path)},
                         {"expected_attack", b.expected_attack},
                         {"messages", b.messages}});
  j["normal_flows"] = json::array();
  for (const auto& f : t.normal_flows) j["normal_flows"].push_back(flow_json(f));
  j["attackers"] = json::array();
  for (const auto& a : t.attackers)
    j["attackers"].push_back(
        {{"src_ip", ip_str(a.src_ip)}, {"signature_name", a.signature_name}, {"alerts", a.alerts}});
  j["malicious_irc"] = t.malicious_irc;
  j["normal_irc"] = t.normal_irc;
  j["total_alerts"] = t.total_alerts;
  j["nick_alerts"] = t.nick_alerts;
  j["tracked_alerts"] = t.tracked_alerts;
  j["any_alerts"] = t.any_alerts;
  j["other_alerts"] = t.other_alerts;
  return j.dump(2);
}

GroundTruth truth_from_json(std::string_view text) {
  GroundTruth t;
  try {
    const json j = json::parse(text);
    t.scenario = j.at("scenario").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.year = j.at("year").get<int>();
    for (const auto& b : j.at("bots"))
      t.bots.push_back({flow_from(b.at("pattern")), bot_kind_from(b.at("kind").get<std::string>()),
                        path_from(b.at("expected_path").get<std::string>()),
                        b.at("expected_attack").get<bool>(), b.at("messages").get<std::size_t>()});
    for (const auto& f : j.at("normal_flows")) t.normal_flows.push_back(flow_from(f));
    for (const auto& a : j.at("attackers"))
      t.attackers.push_back({ip_from(a.at("src_ip"), "src_ip"),
                             a.at("signature_name").get<std::string>(),
                             a.at("alerts").get<std::size_t>()});
    t.malicious_irc = j.at("malicious_irc").get<std::size_t>();
    t.normal_irc = j.at("normal_irc").get<std::size_t>();
    t.total_alerts = j.at("total_alerts").get<std::size_t>();
    t.nick_alerts = j.at("nick_alerts").get<std::size_t>();
    t.tracked_alerts = j.at("tracked_alerts").get<std::size_t>();
    t.any_alerts = j.at("any_alerts").get<std::size_t>();
    t.other_alerts = j.at("other_alerts").get<std::size_t>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("truth: ") + e.what());
  }
  return t;
}

void write_trace(std::span<const Alert> alerts, InputFormat format, std::ostream& out,
                 std::span<const std::string> csv_columns) {
  for (const auto& a : alerts)
    out << (format == InputFormat::Csv ? format_csv_alert(a, csv_columns) : format_fast_alert(a))
        << '\n';
}

}  // namespace botdet
