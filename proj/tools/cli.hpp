#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "botdet/correlation.hpp"
#include "botdet/trace_gen.hpp"

namespace botdet::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;  // I/O, missing input or sidecar
inline constexpr int kUsageError = 2;    // bad flags or config
inline constexpr int kRecallBelowOne = 3;

/// Environment variable naming a config file, used when --config is absent.
inline constexpr const char* kConfigEnv = "BOTDET_CONFIG";

struct Evaluation {
  std::size_t bots_present = 0;
  std::size_t bots_detected = 0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t status_agreement = 0;  // true positives whose status matches the truth

  double precision() const;  // 1 when nothing was detected
  double recall() const;     // 1 when no bot was present
};

/// True when `status` belongs to the expected detection path and carries the
/// attack flag exactly when the truth says the bot attacked.
bool status_matches(StatusId status, ExpectedPath path, bool attack);

Evaluation evaluate(const FinalReport& report, const GroundTruth& truth);

/// `args` excludes the program name, e.g. {"detect", "trace.log", "-o", "out"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace botdet::cli
