#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "botdet/alert_ingest.hpp"
#include "botdet/detection_config.hpp"
#include "botdet/pipeline.hpp"
#include "botdet/report_io.hpp"
#include "botdet/trace_gen.hpp"

namespace botdet::cli {

namespace {

struct ConfigFlags {
  std::string config;
  std::string standard_ports;
  std::vector<std::string> bindings;
  std::vector<std::string> internal_nets;
  std::vector<std::string> attack_filter;
  std::optional<double> time_bucket;
  std::optional<int> min_concurrent_attackers;
  std::string pps_max_cc;
  std::string csv_columns;
  std::optional<int> year;
  std::string on_malformed;
  std::string format = "auto";
};

void add_config_flags(CLI::App& app, ConfigFlags& f) {
  app.add_option("-c,--config", f.config, std::string("Config file (JSON); defaults to $") + kConfigEnv);
  app.add_option("--standard-ports", f.standard_ports, "Standard IRC port range, e.g. 6661-6668");
  app.add_option("--bind", f.bindings,
                 "Rule binding SID=KIND (irc_nick_initial, irc_privmsg_tracked, irc_privmsg_any)");
  app.add_option("--internal-net", f.internal_nets, "Internal CIDR; replaces the defaults");
  app.add_option("--attack-filter", f.attack_filter, "Signature name or gid:sid never counted as attack");
  app.add_option("--time-bucket", f.time_bucket, "Correlation bucket width in seconds");
  app.add_option("--min-concurrent-attackers", f.min_concurrent_attackers,
                 "Alerts per (bucket, victim, port, signature) that make an attack");
  app.add_option("--pps-max-cc", f.pps_max_cc, "Ceiling on C&C alerts per second, or inf");
  app.add_option("--csv-columns", f.csv_columns, "Comma-separated CSV column order");
  app.add_option("--year", f.year, "Year for records without one");
  app.add_option("--on-malformed", f.on_malformed, "skip or abort");
  app.add_option("--format", f.format, "Input format")->check(CLI::IsMember({"auto", "fast", "csv"}));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

DetectionConfig build_config(const ConfigFlags& f) {
  DetectionConfig cfg;
  std::string path = f.config;
  if (path.empty())
    if (const char* env = std::getenv(kConfigEnv); env && *env) path = env;
  if (!path.empty()) cfg = load_config(path);

  if (!f.standard_ports.empty()) {
    auto range = parse_port_range(f.standard_ports);
    if (!range) throw ConfigError("standard_irc_ports", "expected low-high, got '" + f.standard_ports + "'");
    cfg.standard_irc_ports = *range;
  }
  for (const auto& b : f.bindings) {
    auto eq = b.find('=');
    auto kind = eq == std::string::npos ? std::nullopt : kind_from_string(b.substr(eq + 1));
    if (!kind) throw ConfigError("rule_bindings", "expected SID=KIND, got '" + b + "'");
    cfg.rule_bindings[b.substr(0, eq)] = *kind;
  }
  if (!f.internal_nets.empty()) {
    cfg.internal_nets.clear();
    for (const auto& n : f.internal_nets) {
      auto cidr = Cidr::parse(n);
      if (!cidr) throw ConfigError("internal_nets", "invalid CIDR '" + n + "'");
      cfg.internal_nets.push_back(*cidr);
    }
  }
  cfg.attack_filter_list.insert(f.attack_filter.begin(), f.attack_filter.end());
  if (f.time_bucket) {
    if (!(*f.time_bucket > 0) || !std::isfinite(*f.time_bucket))
      throw ConfigError("time_bucket", "must be a positive number of seconds");
    cfg.time_bucket = Duration{static_cast<std::int64_t>(std::llround(*f.time_bucket * 1e6))};
  }
  if (f.min_concurrent_attackers) cfg.min_concurrent_attackers = *f.min_concurrent_attackers;
  if (!f.pps_max_cc.empty()) {
    if (f.pps_max_cc == "inf") {
      cfg.pps_max_cc = std::numeric_limits<double>::infinity();
    } else {
      try {
        std::size_t used = 0;
        cfg.pps_max_cc = std::stod(f.pps_max_cc, &used);
        if (used != f.pps_max_cc.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("pps_max_cc", "expected a number or inf");
      }
    }
  }
  if (!f.csv_columns.empty()) cfg.csv_columns = split(f.csv_columns, ',');
  if (f.year) cfg.year_default = *f.year;
  if (!f.on_malformed.empty()) {
    auto policy = malformed_policy_from_string(f.on_malformed);
    if (!policy) throw ConfigError("malformed_policy", "expected skip or abort");
    cfg.malformed_policy = *policy;
  }
  return validated(std::move(cfg));
}

InputFormat format_of(const std::string& s) {
  return input_format_from_string(s).value_or(InputFormat::Auto);
}

struct Loaded {
  std::vector<Alert> alerts;
  std::size_t parse_errors = 0;
};

Loaded load_alerts(const std::vector<std::string>& inputs, InputFormat format,
                   const DetectionConfig& cfg, std::ostream& err) {
  Loaded out;
  for (const auto& input : inputs) {
    auto result = ingest_file(input, format, cfg);
    for (const auto& e : result.errors)
      err << input << ":" << e.line << ": skipped malformed record (" << e.reason << ")\n";
    out.parse_errors += result.errors.size();
    for (auto& a : result.alerts) {
      a.id = out.alerts.size() + 1;
      out.alerts.push_back(std::move(a));
    }
  }
  return out;
}

GroundTruth load_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ground-truth sidecar " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return truth_from_json(buf.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixed3(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

}  // namespace

Evaluation evaluate(const FinalReport& report, const GroundTruth& truth) {
  std::map<FlowPattern, const TruthBot*> bots;
  for (const auto& b : truth.bots) bots[b.pattern] = &b;

  Evaluation ev;
  ev.bots_present = truth.bots.size();
  ev.bots_detected = report.bots.size();
  for (const auto& r : report.bots) {
    auto it = bots.find(r.pattern);
    if (it == bots.end()) {
      ++ev.false_positives;
      continue;
    }
    ++ev.true_positives;
    if (status_matches(r.status, it->second->expected_path, it->second->expected_attack))
      ++ev.status_agreement;
  }
  return ev;
}

bool status_matches(StatusId status, ExpectedPath path, bool attack) {
  const auto& m = status_message(status);
  if (m.has_attack != attack) return false;
  switch (path) {
    case ExpectedPath::CoherentNonStandard:
      return m.mode == Mode::Coherent && m.port_class == PortClass::NonStandard;
    case ExpectedPath::CoherentStandard:
      return m.mode == Mode::Coherent && m.port_class == PortClass::Standard;
    case ExpectedPath::NonCoherent: return m.mode == Mode::NonCoherent;
    case ExpectedPath::SingleNonStandard:
      return m.mode == Mode::Single && m.port_class == PortClass::NonStandard;
    case ExpectedPath::SingleStandard:
      return m.mode == Mode::Single && m.port_class == PortClass::Standard;
    case ExpectedPath::Undetectable: return false;
  }
  return false;
}

double Evaluation::precision() const {
  return bots_detected == 0 ? 1.0 : static_cast<double>(true_positives) / bots_detected;
}

double Evaluation::recall() const {
  return bots_present == 0 ? 1.0 : static_cast<double>(true_positives) / bots_present;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"IRC botnet and botnet behavior detection over IDS alert logs", "botdet"};
  app.require_subcommand(1);

  ConfigFlags detect_flags;
  std::vector<std::string> detect_inputs;
  std::string detect_out, detect_truth;
  auto* detect = app.add_subcommand("detect", "Run the detection pipeline over alert files");
  detect->add_option("inputs", detect_inputs, "Alert files (fast or CSV, optionally gzip)")->required();
  detect->add_option("-o,--output", detect_out, "Report directory")->required();
  detect->add_option("--truth", detect_truth, "Ground-truth sidecar, fills the I-B column");
  add_config_flags(*detect, detect_flags);

  std::string gen_scenario, gen_spec, gen_out, gen_format = "fast", gen_columns;
  std::optional<std::uint64_t> gen_seed;
  bool gen_list = false;
  auto* gen = app.add_subcommand("generate", "Write a synthetic alert trace and its ground truth");
  gen->add_option("scenario", gen_scenario, "Builtin scenario name");
  gen->add_option("--spec", gen_spec, "Scenario spec file (JSON)");
  gen->add_option("--seed", gen_seed, "Override the scenario seed");
  gen->add_option("-o,--output", gen_out, "Trace path; truth goes to <path>.truth.json");
  gen->add_option("--format", gen_format, "Trace format")->check(CLI::IsMember({"fast", "csv"}));
  gen->add_option("--csv-columns", gen_columns, "Comma-separated CSV column order");
  gen->add_flag("--list", gen_list, "List builtin scenarios");

  ConfigFlags eval_flags;
  std::string eval_trace, eval_truth, eval_out;
  bool eval_strict = false;
  auto* eval = app.add_subcommand("eval", "Score detection on a generated trace against its truth");
  eval->add_option("trace", eval_trace, "Trace file")->required();
  eval->add_option("--truth", eval_truth, "Ground-truth sidecar; defaults to <trace>.truth.json");
  eval->add_option("-o,--output", eval_out, "Also write reports to this directory");
  eval->add_flag("--strict", eval_strict, "Exit nonzero when recall is below 1");
  add_config_flags(*eval, eval_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (detect->parsed()) {
      const auto cfg = build_config(detect_flags);
      auto loaded = load_alerts(detect_inputs, format_of(detect_flags.format), cfg, err);
      std::optional<std::size_t> present;
      if (!detect_truth.empty()) present = load_truth(detect_truth).bots.size();
      const auto result = run_pipeline(loaded.alerts, cfg, present);
      write_reports(result, detect_out);
      out << summary_text(result.report5);
      return kOk;
    }

    if (gen->parsed()) {
      if (gen_list) {
        for (const auto& [name, spec] : builtin_specs()) out << name << "\n";
        return kOk;
      }
      ScenarioSpec spec;
      if (!gen_spec.empty()) {
        spec = spec_from_json(read_file(gen_spec));
      } else {
        const auto specs = builtin_specs();
        auto it = specs.find(gen_scenario);
        if (it == specs.end()) {
          err << "unknown scenario '" << gen_scenario << "'; choose one of:";
          for (const auto& [name, s] : specs) err << " " << name;
          err << "\n";
          return kUsageError;
        }
        spec = it->second;
      }
      if (gen_seed) spec.seed = *gen_seed;
      if (gen_out.empty()) {
        err << "generate: --output is required\n";
        return kUsageError;
      }
      const auto trace = generate(spec);
      auto columns = gen_columns.empty() ? default_csv_columns() : split(gen_columns, ',');
      {
        std::ofstream f(gen_out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + gen_out);
        write_trace(trace.alerts, format_of(gen_format), f, columns);
      }
      {
        std::ofstream f(gen_out + ".truth.json", std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + gen_out + ".truth.json");
        f << truth_to_json(trace.truth) << "\n";
      }
      out << "wrote " << trace.alerts.size() << " alerts to " << gen_out << " ("
          << trace.truth.bots.size() << " bots)\n";
      return kOk;
    }

    if (eval->parsed()) {
      const auto cfg = build_config(eval_flags);
      const auto truth = load_truth(eval_truth.empty() ? eval_trace + ".truth.json" : eval_truth);
      auto loaded = load_alerts({eval_trace}, format_of(eval_flags.format), cfg, err);
      const auto result = run_pipeline(loaded.alerts, cfg, truth.bots.size());
      if (!eval_out.empty()) write_reports(result, eval_out);
      const auto ev = evaluate(result.report5, truth);
      out << statistics_header() << "\n" << statistics_row(result.report5.stats) << "\n";
      out << "precision\t" << fixed3(ev.precision()) << "\n";
      out << "recall\t" << fixed3(ev.recall()) << "\n";
      out << "false_positives\t" << ev.false_positives << "\n";
      out << "status_agreement\t" << ev.status_agreement << "/" << ev.true_positives << "\n";
      if (eval_strict && ev.true_positives < ev.bots_present) return kRecallBelowOne;
      return kOk;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageError;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace botdet::cli
