#include "botdet/detection_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace botdet {

using nlohmann::json;

std::map<std::string, Kind> default_rule_bindings() {
  return {
      {std::string(kDefaultNickSid), Kind::IrcNickInitial},
      {std::string(kDefaultTrackedPrivmsgSid), Kind::IrcPrivmsgTracked},
      {std::string(kDefaultAnyPrivmsgSid), Kind::IrcPrivmsgAny},
  };
}

std::vector<Cidr> default_internal_nets() {
  return {*Cidr::parse("10.0.0.0/8"), *Cidr::parse("172.16.0.0/12"),
          *Cidr::parse("192.168.0.0/16")};
}

std::vector<std::string> default_csv_columns() {
  return {"timestamp", "sig_generator", "sig_id", "sig_rev", "msg",
          "proto",     "src",           "srcport", "dst",    "dstport"};
}

namespace {

int current_year() {
  using namespace std::chrono;
  return static_cast<int>(year_month_day{floor<days>(system_clock::now())}.year());
}

}  // namespace

DetectionConfig validated(DetectionConfig cfg) {
  const auto& ports = cfg.standard_irc_ports;
  if (ports.low < 1 || ports.low > ports.high)
    throw ConfigError("standard_irc_ports", "range must be non-empty and within 1-65535");
  if (cfg.internal_nets.empty()) throw ConfigError("internal_nets", "at least one CIDR required");
  if (cfg.time_bucket.count() <= 0) throw ConfigError("time_bucket", "must be positive");
  if (cfg.min_concurrent_attackers < 1)
    throw ConfigError("min_concurrent_attackers", "must be at least 1");
  if (!(cfg.pps_max_cc > 0.0)) throw ConfigError("pps_max_cc", "must be positive");

  std::set<std::string> seen;
  for (const auto& col : cfg.csv_columns)
    if (!seen.insert(col).second) throw ConfigError("csv_columns", "duplicate column '" + col + "'");
  for (const char* required : {"timestamp", "sig_id", "msg", "proto", "src", "dst"})
    if (!seen.contains(required))
      throw ConfigError("csv_columns", std::string("missing required column '") + required + "'");

  for (const auto& [sid, kind] : cfg.rule_bindings)
    if (sid.empty()) throw ConfigError("rule_bindings", "empty signature id");

  if (cfg.year_default == 0) cfg.year_default = current_year();
  if (cfg.year_default < 1970 || cfg.year_default > 9999)
    throw ConfigError("year_default", "out of range");
  return cfg;
}

std::optional<PortRange> parse_port_range(std::string_view text) {
  auto dash = text.find('-');
  auto parse_port = [](std::string_view s) -> std::optional<unsigned> {
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v > 65535)
      return std::nullopt;
    return v;
  };
  auto low = parse_port(text.substr(0, dash));
  auto high = dash == std::string_view::npos ? low : parse_port(text.substr(dash + 1));
  if (!low || !high || *low > *high) return std::nullopt;
  return PortRange{static_cast<std::uint16_t>(*low), static_cast<std::uint16_t>(*high)};
}

std::optional<MalformedPolicy> malformed_policy_from_string(std::string_view s) {
  if (s == "skip") return MalformedPolicy::Skip;
  if (s == "abort") return MalformedPolicy::Abort;
  return std::nullopt;
}

std::string to_string(MalformedPolicy p) { return p == MalformedPolicy::Skip ? "skip" : "abort"; }

namespace {

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

}  // namespace

DetectionConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");

  DetectionConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "standard_irc_ports") {
      std::optional<PortRange> range;
      if (value.is_string()) {
        range = parse_port_range(value.get<std::string>());
      } else if (value.is_array() && value.size() == 2 && value[0].is_number_unsigned() &&
                 value[1].is_number_unsigned() && value[0].get<unsigned>() <= 65535 &&
                 value[1].get<unsigned>() <= 65535) {
        range = PortRange{value[0].get<std::uint16_t>(), value[1].get<std::uint16_t>()};
      }
      if (!range) throw ConfigError(key, "expected \"low-high\" or [low, high]");
      cfg.standard_irc_ports = *range;
    } else if (key == "rule_bindings") {
      if (!value.is_object()) throw ConfigError(key, "expected an object");
      cfg.rule_bindings.clear();
      for (const auto& [sid, role] : value.items()) {
        auto kind = role.is_string() ? kind_from_string(role.get<std::string>()) : std::nullopt;
        if (!kind) throw ConfigError(key, "unknown role for '" + sid + "'");
        cfg.rule_bindings[sid] = *kind;
      }
    } else if (key == "internal_nets") {
      cfg.internal_nets.clear();
      for (const auto& s : get_as<std::vector<std::string>>(value, "internal_nets")) {
        auto cidr = Cidr::parse(s);
        if (!cidr) throw ConfigError(key, "bad CIDR '" + s + "'");
        cfg.internal_nets.push_back(*cidr);
      }
    } else if (key == "attack_filter_list") {
      auto list = get_as<std::vector<std::string>>(value, "attack_filter_list");
      cfg.attack_filter_list = {list.begin(), list.end()};
    } else if (key == "time_bucket") {
      if (!value.is_number()) throw ConfigError(key, "expected seconds");
      cfg.time_bucket = Duration{std::llround(value.get<double>() * 1e6)};
    } else if (key == "min_concurrent_attackers") {
      if (!value.is_number_integer()) throw ConfigError(key, "expected an integer");
      cfg.min_concurrent_attackers = value.get<int>();
    } else if (key == "pps_max_cc") {
      if (value.is_string() && value.get<std::string>() == "inf") {
        cfg.pps_max_cc = std::numeric_limits<double>::infinity();
      } else if (value.is_number()) {
        cfg.pps_max_cc = value.get<double>();
      } else {
        throw ConfigError(key, "expected a number or \"inf\"");
      }
    } else if (key == "csv_columns") {
      cfg.csv_columns = get_as<std::vector<std::string>>(value, "csv_columns");
    } else if (key == "year_default") {
      if (!value.is_number_integer()) throw ConfigError(key, "expected an integer");
      cfg.year_default = value.get<int>();
    } else if (key == "malformed_policy") {
      auto policy =
          value.is_string() ? malformed_policy_from_string(value.get<std::string>()) : std::nullopt;
      if (!policy) throw ConfigError(key, "expected \"skip\" or \"abort\"");
      cfg.malformed_policy = *policy;
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  return validated(std::move(cfg));
}

std::string serialize_config(const DetectionConfig& cfg) {
  json doc;
  doc["standard_irc_ports"] = std::to_string(cfg.standard_irc_ports.low) + "-" +
                              std::to_string(cfg.standard_irc_ports.high);
  json bindings = json::object();
  for (const auto& [sid, kind] : cfg.rule_bindings) bindings[sid] = to_string(kind);
  doc["rule_bindings"] = bindings;
  json nets = json::array();
  for (const auto& net : cfg.internal_nets) nets.push_back(net.to_string());
  doc["internal_nets"] = nets;
  doc["attack_filter_list"] = cfg.attack_filter_list;
  doc["time_bucket"] = static_cast<double>(cfg.time_bucket.count()) / 1e6;
  doc["min_concurrent_attackers"] = cfg.min_concurrent_attackers;
  if (std::isinf(cfg.pps_max_cc))
    doc["pps_max_cc"] = "inf";
  else
    doc["pps_max_cc"] = cfg.pps_max_cc;
  doc["csv_columns"] = cfg.csv_columns;
  doc["year_default"] = cfg.year_default;
  doc["malformed_policy"] = to_string(cfg.malformed_policy);
  return doc.dump(2) + "\n";
}

DetectionConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void save_config(const DetectionConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("<file>", "cannot write " + path.string());
  out << serialize_config(cfg);
}

bool is_standard_irc_port(std::uint16_t port, const DetectionConfig& cfg) {
  return cfg.standard_irc_ports.contains(port);
}

bool is_attack_filtered(const Alert& alert, const DetectionConfig& cfg) {
  if (auto it = cfg.rule_bindings.find(alert.signature_id);
      it != cfg.rule_bindings.end() && it->second != Kind::Other)
    return true;
  return cfg.attack_filter_list.contains(alert.signature_name) ||
         cfg.attack_filter_list.contains(alert.signature_id);
}

}  // namespace botdet
