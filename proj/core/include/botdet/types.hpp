#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace botdet {

using Duration = std::chrono::microseconds;
using Timestamp = std::chrono::sys_time<Duration>;

/// IPv4 address in host byte order.
class Ipv4 {
 public:
  constexpr Ipv4() = default;
  constexpr explicit Ipv4(std::uint32_t value) : value_(value) {}
  constexpr Ipv4(std::uint8_t a, std::uint8_t b, std::uint8_t c, std::uint8_t d)
      : value_((std::uint32_t{a} << 24) | (std::uint32_t{b} << 16) |
               (std::uint32_t{c} << 8) | std::uint32_t{d}) {}

  /// Dotted quad only; no leading '+', no empty octets, each octet <= 255.
  static std::optional<Ipv4> parse(std::string_view text);

  constexpr std::uint32_t value() const { return value_; }
  std::string to_string() const;

  auto operator<=>(const Ipv4&) const = default;

 private:
  std::uint32_t value_ = 0;
};

struct Cidr {
  Ipv4 network;
  int prefix = 32;

  /// "a.b.c.d/n" or a bare address (treated as /32). Host bits are masked off.
  static std::optional<Cidr> parse(std::string_view text);

  bool contains(Ipv4 addr) const;
  std::string to_string() const;

  auto operator<=>(const Cidr&) const = default;
};

enum class Protocol { Tcp, Udp, Icmp, Other };
enum class Direction { Outgoing, Incoming, Internal, External };

/// Role an alert plays in the pipeline, resolved from configured rule bindings.
enum class Kind {
  IrcNickInitial,     // connection-time NICK tagging rule
  IrcPrivmsgTracked,  // PRIVMSG on a port tagged by the NICK rule
  IrcPrivmsgAny,      // PRIVMSG on any port
  Other,
};

struct Alert {
  std::uint64_t id = 0;
  Timestamp timestamp{};
  std::string signature_id;  // "gid:sid"
  std::string signature_name;
  Ipv4 src_ip;
  std::uint16_t src_port = 0;
  Ipv4 dst_ip;
  std::uint16_t dst_port = 0;
  Protocol protocol = Protocol::Other;
  // Derived at ingest; never read from the input.
  Direction direction = Direction::External;
  Kind kind = Kind::Other;

  bool operator==(const Alert&) const = default;
};

/// A bot's stable C&C flow identity.
struct FlowPattern {
  Ipv4 src_ip;
  std::uint16_t src_port = 0;
  Ipv4 dst_ip;
  std::uint16_t dst_port = 0;

  auto operator<=>(const FlowPattern&) const = default;
};

inline FlowPattern pattern_of(const Alert& a) {
  return {a.src_ip, a.src_port, a.dst_ip, a.dst_port};
}

/// Floor division of the timestamp into fixed-width buckets.
std::int64_t bucket_of(Timestamp ts, Duration width);

std::string to_string(Protocol p);
std::string to_string(Direction d);
std::string to_string(Kind k);
std::string to_string(const FlowPattern& p);
std::optional<Protocol> protocol_from_string(std::string_view s);
std::optional<Direction> direction_from_string(std::string_view s);
std::optional<Kind> kind_from_string(std::string_view s);

/// ISO-8601 UTC with microseconds, e.g. "2012-04-05T13:02:11.000000Z".
std::string format_timestamp(Timestamp ts);
std::optional<Timestamp> parse_timestamp(std::string_view iso);

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute,
                         int second, std::int64_t micros = 0);

int year_of(Timestamp ts);

}  // namespace botdet
