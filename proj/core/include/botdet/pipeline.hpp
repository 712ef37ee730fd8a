#pragma once

#include <optional>
#include <span>

#include "botdet/correlation.hpp"
#include "botdet/detection_config.hpp"
#include "botdet/phase1.hpp"
#include "botdet/phase2.hpp"

namespace botdet {

struct PipelineResult {
  PhaseOneOutput phase1;
  PhaseTwoOutput phase2;
  FinalReport report5;
};

/// Runs both phases and the correlation engine over annotated alerts.
PipelineResult run_pipeline(std::span<const Alert> alerts, const DetectionConfig& cfg,
                            std::optional<std::size_t> bots_present = std::nullopt);

}  // namespace botdet
