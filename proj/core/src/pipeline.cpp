#include "botdet/pipeline.hpp"

namespace botdet {

PipelineResult run_pipeline(std::span<const Alert> alerts, const DetectionConfig& cfg,
                            std::optional<std::size_t> bots_present) {
  PipelineResult result;
  result.phase1 = run_phase1(alerts, cfg);
  result.phase2 = run_phase2(alerts, result.phase1.time_log, cfg);
  result.report5 = correlate(result.phase1, result.phase2, alerts.size(), cfg, bots_present);
  return result;
}

}  // namespace botdet
