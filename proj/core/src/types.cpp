#include "botdet/types.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace botdet {

namespace {

template <typename T>
bool parse_uint(std::string_view s, T& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Ipv4> Ipv4::parse(std::string_view text) {
  std::uint32_t value = 0;
  int octets = 0;
  while (octets < 4) {
    auto dot = text.find('.');
    std::string_view part = text.substr(0, dot);
    if (part.size() > 3) return std::nullopt;
    unsigned octet = 0;
    if (!parse_uint(part, octet) || octet > 255) return std::nullopt;
    value = (value << 8) | octet;
    ++octets;
    if (dot == std::string_view::npos) {
      text = {};
      break;
    }
    text.remove_prefix(dot + 1);
    if (octets == 4) return std::nullopt;  // trailing component
  }
  if (octets != 4 || !text.empty()) return std::nullopt;
  return Ipv4{value};
}

std::string Ipv4::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%u.%u.%u.%u", (value_ >> 24) & 0xFF, (value_ >> 16) & 0xFF,
                (value_ >> 8) & 0xFF, value_ & 0xFF);
  return buf;
}

std::optional<Cidr> Cidr::parse(std::string_view text) {
  auto slash = text.find('/');
  auto addr = Ipv4::parse(text.substr(0, slash));
  if (!addr) return std::nullopt;
  int prefix = 32;
  if (slash != std::string_view::npos) {
    if (!parse_uint(text.substr(slash + 1), prefix) || prefix > 32) return std::nullopt;
  }
  std::uint32_t mask = prefix == 0 ? 0u : ~std::uint32_t{0} << (32 - prefix);
  return Cidr{Ipv4{addr->value() & mask}, prefix};
}

bool Cidr::contains(Ipv4 addr) const {
  std::uint32_t mask = prefix == 0 ? 0u : ~std::uint32_t{0} << (32 - prefix);
  return (addr.value() & mask) == network.value();
}

std::string Cidr::to_string() const { return network.to_string() + "/" + std::to_string(prefix); }

std::int64_t bucket_of(Timestamp ts, Duration width) {
  const std::int64_t t = ts.time_since_epoch().count();
  const std::int64_t w = width.count();
  std::int64_t q = t / w;
  if ((t % w != 0) && (t < 0)) --q;
  return q;
}

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::Tcp: return "TCP";
    case Protocol::Udp: return "UDP";
    case Protocol::Icmp: return "ICMP";
    case Protocol::Other: return "OTHER";
  }
  return "OTHER";
}

std::string to_string(Direction d) {
  switch (d) {
    case Direction::Outgoing: return "outgoing";
    case Direction::Incoming: return "incoming";
    case Direction::Internal: return "internal";
    case Direction::External: return "external";
  }
  return "external";
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::IrcNickInitial: return "irc_nick_initial";
    case Kind::IrcPrivmsgTracked: return "irc_privmsg_tracked";
    case Kind::IrcPrivmsgAny: return "irc_privmsg_any";
    case Kind::Other: return "other";
  }
  return "other";
}

std::string to_string(const FlowPattern& p) {
  return p.src_ip.to_string() + ":" + std::to_string(p.src_port) + " -> " +
         p.dst_ip.to_string() + ":" + std::to_string(p.dst_port);
}

std::optional<Protocol> protocol_from_string(std::string_view s) {
  std::string upper(s);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "TCP") return Protocol::Tcp;
  if (upper == "UDP") return Protocol::Udp;
  if (upper == "ICMP") return Protocol::Icmp;
  if (upper == "OTHER") return Protocol::Other;
  return std::nullopt;
}

std::optional<Direction> direction_from_string(std::string_view s) {
  for (auto d : {Direction::Outgoing, Direction::Incoming, Direction::Internal, Direction::External})
    if (to_string(d) == s) return d;
  return std::nullopt;
}

std::optional<Kind> kind_from_string(std::string_view s) {
  for (auto k : {Kind::IrcNickInitial, Kind::IrcPrivmsgTracked, Kind::IrcPrivmsgAny, Kind::Other})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

Timestamp make_timestamp(int year, unsigned month, unsigned day, int hour, int minute, int second,
                         std::int64_t micros) {
  using namespace std::chrono;
  const sys_days date = year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                       std::chrono::day{day}};
  return time_point_cast<Duration>(date) + hours{hour} + minutes{minute} + seconds{second} +
         Duration{micros};
}

int year_of(Timestamp ts) {
  using namespace std::chrono;
  const year_month_day ymd{floor<days>(ts)};
  return static_cast<int>(ymd.year());
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day = floor<days>(ts);
  const year_month_day ymd{day};
  const hh_mm_ss tod{ts - day};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02ld:%02ld:%02ld.%06ldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()), static_cast<long>(tod.seconds().count()),
                static_cast<long>(tod.subseconds().count()));
  return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view iso) {
  // YYYY-MM-DDTHH:MM:SS[.ffffff]Z
  if (iso.size() < 20 || iso.back() != 'Z') return std::nullopt;
  iso.remove_suffix(1);
  int year = 0;
  unsigned month = 0, day = 0;
  int hour = 0, minute = 0, second = 0;
  if (iso[4] != '-' || iso[7] != '-' || iso[10] != 'T' || iso[13] != ':' || iso[16] != ':')
    return std::nullopt;
  if (!parse_uint(iso.substr(0, 4), year) || !parse_uint(iso.substr(5, 2), month) ||
      !parse_uint(iso.substr(8, 2), day) || !parse_uint(iso.substr(11, 2), hour) ||
      !parse_uint(iso.substr(14, 2), minute) || !parse_uint(iso.substr(17, 2), second))
    return std::nullopt;
  std::int64_t micros = 0;
  if (iso.size() > 19) {
    if (iso[19] != '.') return std::nullopt;
    auto frac = iso.substr(20);
    if (frac.empty() || frac.size() > 6 || !parse_uint(frac, micros)) return std::nullopt;
    for (auto n = frac.size(); n < 6; ++n) micros *= 10;
  }
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                           std::chrono::day{day}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) return std::nullopt;
  return make_timestamp(year, month, day, hour, minute, second, micros);
}

}  // namespace botdet
