// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "v2xloc/config.hpp"
#include "v2xloc/error.hpp"
#include "v2xloc/records.hpp"
#include "v2xloc/runner.hpp"
#include "v2xloc/units.hpp"

namespace v2xloc::cli {

namespace fs = std::filesystem;

namespace {

struct CampaignArgs {
  std::string config;
  int drops = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = -1;
};

void add_campaign_args(CLI::App* cmd, CampaignArgs& a) {
  cmd->add_option("config", a.config, "Scenario config file or preset name")->required();
  cmd->add_option("--drops", a.drops, "Number of Monte Carlo drops")->check(CLI::PositiveNumber);
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&a](std::uint64_t s) { a.seed = s, a.seed_set = true; }, "Base seed");
  cmd->add_option("--workers", a.workers, "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

struct Loaded {
  Scenario scenario;
  int drops;
  std::uint64_t seed;
  int workers;
};

Loaded load(const CampaignArgs& a, std::optional<double> eta_ns = std::nullopt) {
  ScenarioConfig cfg = load_config(resolve_config_path(a.config));
  if (eta_ns) cfg.policy.eta_ns = *eta_ns;
  Loaded l{build_scenario(cfg), a.drops > 0 ? a.drops : cfg.campaign.n_drops,
           a.seed_set ? a.seed : cfg.campaign.base_seed,
           a.workers >= 0 ? a.workers : cfg.campaign.workers};
  return l;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw Error("write failed for '" + path.string() + "'");
}

int cmd_run(const CampaignArgs& a, std::string out_dir, std::optional<double> eta_ns,
            std::ostream& out) {
  const Loaded l = load(a, eta_ns);
  if (const char* env = std::getenv(kOutDirEnv); env && *env) out_dir = env;
  CampaignOptions opts;
  opts.workers = l.workers;
  const CampaignResult result = run_campaign(l.scenario, l.drops, l.seed, opts);
  const std::string text = summary_text(result.summary);
  out << text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_records((fs::path(out_dir) / "records.csv").string(), result.records);
    write_text(fs::path(out_dir) / "summary.txt", text);
    write_text(fs::path(out_dir) / "summary.json", summary_json(result.summary));
    out << "wrote " << (fs::path(out_dir) / "records.csv").string() << '\n';
  }
  return 0;
}

int cmd_calibrate(const CampaignArgs& a, std::ostream& out) {
  const Loaded l = load(a);
  CampaignOptions opts;
  opts.workers = l.workers;
  opts.mask = {false, true, false};
  const CampaignResult result = run_campaign(l.scenario, l.drops, l.seed, opts);
  const std::vector<double> zetas = class_a_zetas(result.records, l.scenario.policy.epsilon_acc);
  if (zetas.empty()) throw Error("no class-A UEs with a defined neighbor gap; cannot calibrate");
  const double eta = calibrate_eta(zetas);
  out << "ues " << result.records.size() << "  class_a " << result.summary.class_a.count
      << "  class_a_with_zeta " << zetas.size() << '\n';
  out << "eta_ns " << format_number(eta / kNanosecond) << '\n';
  return 0;
}

int cmd_sweep(const CampaignArgs& a, const std::vector<double>& values_ns, double threshold,
              std::ostream& out) {
  Loaded l = load(a);
  CampaignOptions opts;
  opts.workers = l.workers;
  opts.keep_outcomes = true;
  opts.mask = {true, true, false};
  l.scenario.policy.eta_update_period = 0;
  const CampaignResult result = run_campaign(l.scenario, l.drops, l.seed, opts);

  out << std::left << std::setw(10) << "eta_ns" << std::setw(12)
      << ("avail@" + format_number(threshold) + "m") << std::setw(10) << "p50_m" << std::setw(10)
      << "p90_m" << "tdoa_fraction\n";
  for (double v : values_ns) {
    const auto records =
        reselect(l.scenario, result.outcomes, result.drop_indices, v * kNanosecond);
    const auto errors = errors_of(records, Method::kSpntv);
    const double tdoa = static_cast<double>(std::count_if(
                            records.begin(), records.end(),
                            [](const UeRecord& r) { return r.selected_spntv == Technology::kTdoa; })) /
                        static_cast<double>(records.size());
    const auto p50 = finite_percentile(errors, 50.0);
    const auto p90 = finite_percentile(errors, 90.0);
    out << std::setw(10) << format_number(v) << std::setw(12)
        << format_number(availability(errors, threshold)) << std::setw(10)
        << (p50 ? format_number(*p50) : "-") << std::setw(10) << (p90 ? format_number(*p90) : "-")
        << format_number(tdoa) << '\n';
  }
  return 0;
}

int cmd_report(const std::string& path, std::vector<double> thresholds, const std::string& baseline,
               double percentile, const std::string& method, std::ostream& out) {
  const std::vector<UeRecord> records = read_records(path);
  if (records.empty()) throw Error(path + ": no records");
  CampaignSummary summary = summarize(records, thresholds);
  if (!baseline.empty()) {
    const std::vector<UeRecord> base = read_records(baseline);
    if (method.empty()) {
      for (Method m : kAllMethods)
        summary.tail.push_back({m, percentile, tail_improvement(base, records, m, percentile)});
    } else {
      const Method m = method_from_string(method);
      summary.tail.push_back({m, percentile, tail_improvement(base, records, m, percentile)});
    }
  }
  out << summary_text(summary);
  return 0;
}

}  // namespace

std::string resolve_config_path(const std::string& name) {
  if (fs::exists(name)) return name;
  const fs::path preset = fs::path(V2XLOC_PRESET_DIR) / name;
  if (fs::exists(preset)) return preset.string();
  throw Error("config file '" + name + "' not found");
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid GNSS / cellular vehicle positioning simulator"};
  app.require_subcommand(1);

  CampaignArgs run_args;
  std::string out_dir;
  std::optional<double> run_eta;
  auto* run = app.add_subcommand("run", "Run a campaign and print its summary");
  add_campaign_args(run, run_args);
  run->add_option("--out", out_dir, "Directory for records.csv and summary files");
  run->add_option_function<double>("--eta", [&run_eta](double v) { run_eta = v; },
                                   "Override the selection threshold (ns)");

  CampaignArgs cal_args;
  auto* cal = app.add_subcommand("calibrate-eta", "Derive the selection threshold from class-A UEs");
  add_campaign_args(cal, cal_args);

  CampaignArgs sweep_args;
  std::vector<double> sweep_values;
  double sweep_threshold = 3.0;
  auto* sweep = app.add_subcommand("sweep-eta", "Availability of the selector for each threshold");
  add_campaign_args(sweep, sweep_args);
  sweep->add_option("--values", sweep_values, "Thresholds in ns, comma separated")
      ->required()
      ->delimiter(',');
  sweep->add_option("--threshold", sweep_threshold, "Availability threshold (m)");

  std::string report_path, report_baseline, report_method;
  std::vector<double> report_thresholds{3.0};
  double report_percentile = 95.0;
  auto* report = app.add_subcommand("report", "Recompute metrics from a records file");
  report->add_option("records", report_path, "records.csv")->required();
  report->add_option("--threshold", report_thresholds, "Availability thresholds (m)")
      ->delimiter(',');
  report->add_option("--baseline", report_baseline,
                     "Records of a reference campaign for tail improvement");
  report->add_option("--percentile", report_percentile, "Tail percentile")
      ->check(CLI::Range(0.0, 100.0));
  report->add_option("--method", report_method, "Method for tail improvement (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*run) return cmd_run(run_args, out_dir, run_eta, out);
    if (*cal) return cmd_calibrate(cal_args, out);
    if (*sweep) return cmd_sweep(sweep_args, sweep_values, sweep_threshold, out);
    if (*report)
      return cmd_report(report_path, report_thresholds, report_baseline, report_percentile,
                        report_method, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace v2xloc::cli
