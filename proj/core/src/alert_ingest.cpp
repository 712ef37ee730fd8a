#include "botdet/alert_ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace botdet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n' || s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool parse_port(std::string_view s, std::uint16_t& out) {
  unsigned v = 0;
  if (!parse_number(s, v) || v > 65535) return false;
  out = static_cast<std::uint16_t>(v);
  return true;
}

// MM/DD[/YY]-HH:MM:SS[.ffffff]
std::optional<Timestamp> parse_snort_time(std::string_view s, int default_year) {
  auto dash = s.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  std::string_view date = s.substr(0, dash);
  std::string_view time = s.substr(dash + 1);

  unsigned month = 0, day = 0;
  int year = default_year;
  if (date.size() == 5 && date[2] == '/') {
    if (!parse_number(date.substr(0, 2), month) || !parse_number(date.substr(3, 2), day))
      return std::nullopt;
  } else if (date.size() == 8 && date[2] == '/' && date[5] == '/') {
    int yy = 0;
    if (!parse_number(date.substr(0, 2), month) || !parse_number(date.substr(3, 2), day) ||
        !parse_number(date.substr(6, 2), yy))
      return std::nullopt;
    year = 2000 + yy;
  } else {
    return std::nullopt;
  }

  if (time.size() < 8 || time[2] != ':' || time[5] != ':') return std::nullopt;
  int hour = 0, minute = 0, second = 0;
  if (!parse_number(time.substr(0, 2), hour) || !parse_number(time.substr(3, 2), minute) ||
      !parse_number(time.substr(6, 2), second))
    return std::nullopt;
  std::int64_t micros = 0;
  if (time.size() > 8) {
    if (time[8] != '.') return std::nullopt;
    auto frac = time.substr(9);
    if (frac.empty() || frac.size() > 6 || !parse_number(frac, micros)) return std::nullopt;
    for (auto n = frac.size(); n < 6; ++n) micros *= 10;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{day}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) return std::nullopt;
  return make_timestamp(year, month, day, hour, minute, second, micros);
}

std::string format_snort_time(Timestamp ts) {
  using namespace std::chrono;
  const auto day = floor<days>(ts);
  const year_month_day ymd{day};
  const hh_mm_ss tod{ts - day};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%02u/%02u/%02d-%02ld:%02ld:%02ld.%06ld",
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(ymd.year()) % 100, static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()), static_cast<long>(tod.seconds().count()),
                static_cast<long>(tod.subseconds().count()));
  return buf;
}

Protocol protocol_from_field(std::string_view s) {
  return protocol_from_string(s).value_or(Protocol::Other);
}

// "ip" or "ip:port"
bool parse_endpoint(std::string_view s, Ipv4& ip, std::uint16_t& port) {
  auto colon = s.find(':');
  auto addr = Ipv4::parse(s.substr(0, colon));
  if (!addr) return false;
  ip = *addr;
  port = 0;
  if (colon == std::string_view::npos) return true;
  return parse_port(s.substr(colon + 1), port);
}

ParseError error(std::size_t line_no, std::string reason) { return {line_no, std::move(reason)}; }

// Splits one CSV record. Returns false on an unterminated quote.
bool split_csv(std::string_view row, std::vector<std::string>& fields) {
  fields.clear();
  std::string cur;
  bool quoted = false;
  bool field_started_quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    char c = row[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < row.size() && row[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"' && cur.empty() && !field_started_quoted) {
      quoted = true;
      field_started_quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      field_started_quoted = false;
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) return false;
  fields.push_back(std::move(cur));
  return true;
}

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

ParseResult parse_fast_alert(std::string_view line, int year, std::size_t line_no) {
  line = trim(line);
  if (line.empty()) return error(line_no, "empty record");

  Alert a;
  auto space = line.find(' ');
  auto ts = parse_snort_time(line.substr(0, space), year);
  if (!ts) return error(line_no, "timestamp");
  a.timestamp = *ts;
  if (space == std::string_view::npos) return error(line_no, "truncated record");
  std::string_view rest = trim(line.substr(space));

  constexpr std::string_view kMarker = "[**]";
  if (!rest.starts_with(kMarker)) return error(line_no, "missing [**] marker");
  rest = trim(rest.substr(kMarker.size()));

  // [gid:sid:rev]
  if (!rest.starts_with('[')) return error(line_no, "signature");
  auto close = rest.find(']');
  if (close == std::string_view::npos) return error(line_no, "signature");
  {
    std::string_view sig = rest.substr(1, close - 1);
    auto c1 = sig.find(':');
    auto c2 = c1 == std::string_view::npos ? c1 : sig.find(':', c1 + 1);
    unsigned gid = 0, sid = 0, rev = 0;
    if (c2 == std::string_view::npos || !parse_number(sig.substr(0, c1), gid) ||
        !parse_number(sig.substr(c1 + 1, c2 - c1 - 1), sid) ||
        !parse_number(sig.substr(c2 + 1), rev))
      return error(line_no, "signature");
    a.signature_id = std::to_string(gid) + ":" + std::to_string(sid);
  }
  rest = rest.substr(close + 1);

  auto name_end = rest.find(kMarker);
  if (name_end == std::string_view::npos) return error(line_no, "missing [**] marker");
  a.signature_name = std::string(trim(rest.substr(0, name_end)));
  rest = trim(rest.substr(name_end + kMarker.size()));

  // Optional [Classification: ...] and [Priority: N] groups.
  while (rest.starts_with('[')) {
    close = rest.find(']');
    if (close == std::string_view::npos) return error(line_no, "unterminated bracket");
    rest = trim(rest.substr(close + 1));
  }

  if (!rest.starts_with('{')) return error(line_no, "protocol");
  close = rest.find('}');
  if (close == std::string_view::npos) return error(line_no, "protocol");
  a.protocol = protocol_from_field(rest.substr(1, close - 1));
  rest = trim(rest.substr(close + 1));

  auto arrow = rest.find(" -> ");
  if (arrow == std::string_view::npos) return error(line_no, "address");
  if (!parse_endpoint(trim(rest.substr(0, arrow)), a.src_ip, a.src_port))
    return error(line_no, "source address");
  if (!parse_endpoint(trim(rest.substr(arrow + 4)), a.dst_ip, a.dst_port))
    return error(line_no, "destination address");
  if (a.protocol == Protocol::Icmp) a.src_port = a.dst_port = 0;
  return a;
}

ParseResult parse_csv_alert(std::string_view row, std::span<const std::string> columns, int year,
                            std::size_t line_no) {
  row = trim(row);
  if (row.empty()) return error(line_no, "empty record");
  std::vector<std::string> fields;
  if (!split_csv(row, fields)) return error(line_no, "unterminated quote");
  if (fields.size() != columns.size())
    return error(line_no, "column count: expected " + std::to_string(columns.size()) + ", got " +
                              std::to_string(fields.size()));

  Alert a;
  std::string gid = "1";
  std::string sid;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const std::string& col = columns[i];
    std::string_view value = trim(fields[i]);
    if (col == "timestamp") {
      auto ts = parse_snort_time(value, year);
      if (!ts) ts = parse_timestamp(value);
      if (!ts) return error(line_no, "timestamp");
      a.timestamp = *ts;
    } else if (col == "sig_generator") {
      unsigned v = 0;
      if (!parse_number(value, v)) return error(line_no, "sig_generator");
      gid = std::to_string(v);
    } else if (col == "sig_id") {
      unsigned v = 0;
      if (!parse_number(value, v)) return error(line_no, "sig_id");
      sid = std::to_string(v);
    } else if (col == "sig_rev") {
      unsigned v = 0;
      if (!value.empty() && !parse_number(value, v)) return error(line_no, "sig_rev");
    } else if (col == "msg") {
      a.signature_name = std::string(value);
    } else if (col == "proto") {
      a.protocol = protocol_from_field(value);
    } else if (col == "src") {
      auto ip = Ipv4::parse(value);
      if (!ip) return error(line_no, "src");
      a.src_ip = *ip;
    } else if (col == "dst") {
      auto ip = Ipv4::parse(value);
      if (!ip) return error(line_no, "dst");
      a.dst_ip = *ip;
    } else if (col == "srcport") {
      if (!value.empty() && !parse_port(value, a.src_port)) return error(line_no, "srcport");
    } else if (col == "dstport") {
      if (!value.empty() && !parse_port(value, a.dst_port)) return error(line_no, "dstport");
    }
  }
  a.signature_id = gid + ":" + sid;
  if (a.protocol == Protocol::Icmp) a.src_port = a.dst_port = 0;
  return a;
}

std::string format_fast_alert(const Alert& a) {
  std::string out = format_snort_time(a.timestamp);
  out += " [**] [" + a.signature_id + ":1] " + a.signature_name + " [**] [Priority: 1] {" +
         to_string(a.protocol) + "} ";
  if (a.protocol == Protocol::Icmp) {
    out += a.src_ip.to_string() + " -> " + a.dst_ip.to_string();
  } else {
    out += a.src_ip.to_string() + ":" + std::to_string(a.src_port) + " -> " +
           a.dst_ip.to_string() + ":" + std::to_string(a.dst_port);
  }
  return out;
}

std::string format_csv_alert(const Alert& a, std::span<const std::string> columns) {
  auto colon = a.signature_id.find(':');
  std::string gid = colon == std::string::npos ? "1" : a.signature_id.substr(0, colon);
  std::string sid = colon == std::string::npos ? a.signature_id : a.signature_id.substr(colon + 1);
  const bool icmp = a.protocol == Protocol::Icmp;

  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out.push_back(',');
    const std::string& col = columns[i];
    if (col == "timestamp") out += format_snort_time(a.timestamp);
    else if (col == "sig_generator") out += gid;
    else if (col == "sig_id") out += sid;
    else if (col == "sig_rev") out += "1";
    else if (col == "msg") out += csv_escape(a.signature_name);
    else if (col == "proto") out += to_string(a.protocol);
    else if (col == "src") out += a.src_ip.to_string();
    else if (col == "dst") out += a.dst_ip.to_string();
    else if (col == "srcport") out += icmp ? "" : std::to_string(a.src_port);
    else if (col == "dstport") out += icmp ? "" : std::to_string(a.dst_port);
  }
  return out;
}

Direction classify_direction(const Alert& a, std::span<const Cidr> internal_nets) {
  auto inside = [&](Ipv4 ip) {
    return std::any_of(internal_nets.begin(), internal_nets.end(),
                       [&](const Cidr& net) { return net.contains(ip); });
  };
  const bool src_in = inside(a.src_ip);
  const bool dst_in = inside(a.dst_ip);
  if (src_in && dst_in) return Direction::Internal;
  if (src_in) return Direction::Outgoing;
  if (dst_in) return Direction::Incoming;
  return Direction::External;
}

AlertKind bind_kind(const Alert& a, const DetectionConfig& cfg) {
  auto it = cfg.rule_bindings.find(a.signature_id);
  if (it == cfg.rule_bindings.end() || it->second == Kind::Other) return {};
  return {it->second, it->first};
}

void annotate(std::vector<Alert>& alerts, const DetectionConfig& cfg) {
  for (auto& a : alerts) {
    a.direction = classify_direction(a, cfg.internal_nets);
    a.kind = bind_kind(a, cfg).kind;
  }
}

std::optional<InputFormat> input_format_from_string(std::string_view s) {
  if (s == "auto") return InputFormat::Auto;
  if (s == "fast") return InputFormat::Fast;
  if (s == "csv") return InputFormat::Csv;
  return std::nullopt;
}

InputFormat sniff_format(std::string_view first_record) {
  return first_record.find("[**]") != std::string_view::npos ? InputFormat::Fast
                                                             : InputFormat::Csv;
}

IngestResult ingest_stream(std::istream& in, InputFormat format, const DetectionConfig& cfg) {
  IngestResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (format == InputFormat::Auto && !trim(line).empty()) format = sniff_format(line);
    ParseResult parsed = format == InputFormat::Csv
                             ? parse_csv_alert(line, cfg.csv_columns, cfg.year_default, line_no)
                             : parse_fast_alert(line, cfg.year_default, line_no);
    if (auto* err = std::get_if<ParseError>(&parsed)) {
      if (cfg.malformed_policy == MalformedPolicy::Abort)
        throw IngestError("line " + std::to_string(err->line) + ": " + err->reason);
      result.errors.push_back(std::move(*err));
      continue;
    }
    Alert& a = std::get<Alert>(parsed);
    a.id = result.alerts.size() + 1;
    result.alerts.push_back(std::move(a));
  }
  result.records = line_no;
  annotate(result.alerts, cfg);
  return result;
}

IngestResult ingest_file(const std::filesystem::path& path, InputFormat format,
                         const DetectionConfig& cfg) {
  if (!std::filesystem::exists(path)) throw IngestError("no such file: " + path.string());
  // gzread passes uncompressed files through unchanged.
  gzFile file = gzopen(path.c_str(), "rb");
  if (!file) throw IngestError("cannot open " + path.string());
  std::string content;
  char buf[1 << 16];
  int n = 0;
  while ((n = gzread(file, buf, sizeof buf)) > 0) content.append(buf, static_cast<std::size_t>(n));
  int errnum = 0;
  const char* msg = n < 0 ? gzerror(file, &errnum) : nullptr;
  std::string message = msg ? msg : "";
  gzclose(file);
  if (n < 0) throw IngestError("read error in " + path.string() + ": " + message);

  std::istringstream stream(std::move(content));
  return ingest_stream(stream, format, cfg);
}

}  // namespace botdet
