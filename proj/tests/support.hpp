#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "botdet/alert_ingest.hpp"
#include "botdet/detection_config.hpp"
#include "botdet/types.hpp"

namespace botdet {

inline void PrintTo(const Alert& a, std::ostream* os) {
  *os << "#" << a.id << " " << format_fast_alert(a) << " (" << to_string(a.direction) << ", "
      << to_string(a.kind) << ")";
}

}  // namespace botdet

namespace botdet::test {

inline Ipv4 ip(const char* text) { return *Ipv4::parse(text); }

inline Timestamp at(double seconds) {
  return make_timestamp(2012, 4, 5, 13, 0, 0) +
         Duration{static_cast<std::int64_t>(seconds * 1e6 + (seconds >= 0 ? 0.5 : -0.5))};
}

inline DetectionConfig config() {
  DetectionConfig cfg;
  cfg.year_default = 2012;
  return validated(cfg);
}

struct AlertBuilder {
  Alert a;

  AlertBuilder(std::uint64_t id, double seconds) {
    a.id = id;
    a.timestamp = at(seconds);
    a.signature_id = "1:384";
    a.signature_name = "ICMP PING";
    a.protocol = Protocol::Icmp;
    a.src_ip = ip("10.0.0.2");
    a.dst_ip = ip("8.8.8.8");
  }
  AlertBuilder& sig(const std::string& id, const std::string& name) {
    a.signature_id = id;
    a.signature_name = name;
    return *this;
  }
  AlertBuilder& from(const char* host, std::uint16_t port = 0) {
    a.src_ip = ip(host);
    a.src_port = port;
    return *this;
  }
  AlertBuilder& to(const char* host, std::uint16_t port = 0) {
    a.dst_ip = ip(host);
    a.dst_port = port;
    return *this;
  }
  AlertBuilder& proto(Protocol p) {
    a.protocol = p;
    return *this;
  }
  operator Alert() const { return a; }
};

/// Tracked PRIVMSG (rule 3 of the default bindings).
inline AlertBuilder tracked(std::uint64_t id, double s, const char* src, std::uint16_t sport,
                            const char* dst, std::uint16_t dport) {
  return AlertBuilder(id, s)
      .sig(std::string(kDefaultTrackedPrivmsgSid), "IRC PRIVMSG tracked")
      .proto(Protocol::Tcp)
      .from(src, sport)
      .to(dst, dport);
}

/// PRIVMSG on any port.
inline AlertBuilder privmsg(std::uint64_t id, double s, const char* src, std::uint16_t sport,
                            const char* dst, std::uint16_t dport) {
  return AlertBuilder(id, s)
      .sig(std::string(kDefaultAnyPrivmsgSid), "CHAT IRC message")
      .proto(Protocol::Tcp)
      .from(src, sport)
      .to(dst, dport);
}

inline AlertBuilder nick(std::uint64_t id, double s, const char* src, std::uint16_t sport,
                         const char* dst, std::uint16_t dport) {
  return AlertBuilder(id, s)
      .sig(std::string(kDefaultNickSid), "IRC NICK")
      .proto(Protocol::Tcp)
      .from(src, sport)
      .to(dst, dport);
}

inline AlertBuilder icmp_flood(std::uint64_t id, double s, const char* src, const char* victim) {
  return AlertBuilder(id, s).sig("1:9100001", "ICMP flood").from(src).to(victim);
}

inline std::vector<Alert> annotated(std::vector<Alert> alerts, const DetectionConfig& cfg) {
  annotate(alerts, cfg);
  return alerts;
}

}  // namespace botdet::test
