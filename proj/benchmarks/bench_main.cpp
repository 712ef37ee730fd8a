#include <benchmark/benchmark.h>

#include <sstream>
#include <string>
#include <vector>

#include "botdet/alert_ingest.hpp"
#include "botdet/pipeline.hpp"
#include "botdet/trace_gen.hpp"

namespace {

using namespace botdet;

DetectionConfig config() {
  DetectionConfig cfg;
  cfg.year_default = 2012;
  return validated(cfg);
}

std::string fast_text(const std::string& scenario) {
  std::ostringstream out;
  write_trace(generate(builtin_specs().at(scenario)).alerts, InputFormat::Fast, out, {});
  return out.str();
}

void BM_ParseFast(benchmark::State& state) {
  const auto text = fast_text("scenario1");
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  for (auto _ : state)
    for (const auto& l : lines) benchmark::DoNotOptimize(parse_fast_alert(l, 2012));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(lines.size()));
}
BENCHMARK(BM_ParseFast)->Unit(benchmark::kMillisecond);

void BM_IngestScenario1(benchmark::State& state) {
  const auto text = fast_text("scenario1");
  const auto cfg = config();
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(ingest_stream(in, InputFormat::Auto, cfg));
  }
}
BENCHMARK(BM_IngestScenario1)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state, const char* scenario) {
  const auto cfg = config();
  auto alerts = generate(builtin_specs().at(scenario)).alerts;
  annotate(alerts, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(alerts, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(alerts.size()));
}
BENCHMARK_CAPTURE(BM_Pipeline, scenario1, "scenario1")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Pipeline, scenario3, "scenario3")->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  const auto spec = builtin_specs().at("scenario3");
  for (auto _ : state) benchmark::DoNotOptimize(generate(spec));
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
