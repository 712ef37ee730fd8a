#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "botdet/detection_config.hpp"
#include "botdet/trace_gen.hpp"
#include "botdet/types.hpp"

namespace botdet::oracle {

/// Default config with thresholds varied by `seed` (bucket width, pps ceiling,
/// attack threshold, port range, filter list).
DetectionConfig varied_config(std::uint64_t seed);

/// Annotated alerts of the random scenario for `seed`, shuffled for odd seeds.
std::vector<Alert> random_trace(std::uint64_t seed, const DetectionConfig& cfg);

/// Runs every filter, cluster and correlation step of the library against its
/// oracle on identical inputs. Returns the names of the steps that disagree.
std::vector<std::string> mismatches(const std::vector<Alert>& alerts, const DetectionConfig& cfg);

}  // namespace botdet::oracle
