#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "botdet/types.hpp"

namespace botdet {

struct PortRange {
  std::uint16_t low = 6661;
  std::uint16_t high = 6668;

  constexpr bool contains(std::uint16_t port) const { return port >= low && port <= high; }
  auto operator<=>(const PortRange&) const = default;
};

enum class MalformedPolicy { Skip, Abort };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Default signature ids for the three IRC rules the generator emits.
inline constexpr std::string_view kDefaultNickSid = "1:9000001";
inline constexpr std::string_view kDefaultTrackedPrivmsgSid = "1:9000003";
inline constexpr std::string_view kDefaultAnyPrivmsgSid = "1:1463";

std::map<std::string, Kind> default_rule_bindings();
std::vector<Cidr> default_internal_nets();
std::vector<std::string> default_csv_columns();

struct DetectionConfig {
  PortRange standard_irc_ports{};
  std::map<std::string, Kind> rule_bindings = default_rule_bindings();
  std::vector<Cidr> internal_nets = default_internal_nets();
  // Signature names or "gid:sid" ids never treated as attacks. Signatures bound
  // to an IRC kind are always excluded in addition to these.
  std::set<std::string> attack_filter_list;
  Duration time_bucket = std::chrono::seconds{1};
  int min_concurrent_attackers = 2;
  double pps_max_cc = 2.0;  // may be +inf to disable the ceiling
  std::vector<std::string> csv_columns = default_csv_columns();
  int year_default = 0;  // 0 resolves to the current year on validation
  MalformedPolicy malformed_policy = MalformedPolicy::Skip;

  bool operator==(const DetectionConfig&) const = default;
};

/// Throws ConfigError naming the first offending key. Resolves year_default.
DetectionConfig validated(DetectionConfig cfg);

/// Structured-text (JSON object) form. Absent keys take their defaults.
DetectionConfig parse_config(std::string_view text);
std::string serialize_config(const DetectionConfig& cfg);

DetectionConfig load_config(const std::filesystem::path& path);
void save_config(const DetectionConfig& cfg, const std::filesystem::path& path);

bool is_standard_irc_port(std::uint16_t port, const DetectionConfig& cfg);

/// True when the alert's signature must never count towards botnet attacks.
bool is_attack_filtered(const Alert& alert, const DetectionConfig& cfg);

std::optional<PortRange> parse_port_range(std::string_view text);
std::optional<MalformedPolicy> malformed_policy_from_string(std::string_view s);
std::string to_string(MalformedPolicy p);

}  // namespace botdet
