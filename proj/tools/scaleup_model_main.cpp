// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// scaleup-model: training-time estimates for MoE transformer scenarios across
// parallelism strategies and scale-up interconnect designs.
//
//   scaleup-model run <file> [--baseline <file>] [--set key=value ...]
//   scaleup-model sweep <dir> --baseline <id> [--set key=value ...]
//   scaleup-model reproduce <target> [--check]
//
// CSV goes to stdout (or --out <path>); diagnostics go to stderr.
// Exit codes: 0 success, 2 validation failure, 3 reproduction-tolerance
// failure under --check.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "scaleup/error.hpp"
#include "scaleup/report.hpp"
#include "scaleup/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

void emit(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw scaleup::ValidationError("cannot open output file: " + out_path);
  out << csv;
}

scaleup::Scenario load_with_overrides(const std::string& path,
                                      const std::vector<std::string>& overrides) {
  nlohmann::json j = scaleup::read_scenario_json(path);
  for (const std::string& o : overrides) scaleup::apply_override(j, o);
  scaleup::Scenario s = scaleup::scenario_from_json(j);
  if (s.id.empty()) s.id = std::filesystem::path(path).stem().string();
  return s;
}

int cmd_run(const std::string& path, const std::string& baseline_path,
            const std::vector<std::string>& overrides, const std::string& out_path) {
  scaleup::Scenario s = load_with_overrides(path, overrides);
  std::cerr << scaleup::describe(s);
  std::vector<scaleup::ResultRow> rows{scaleup::evaluate(s)};
  if (!baseline_path.empty()) {
    const scaleup::Scenario base = load_with_overrides(baseline_path, overrides);
    const scaleup::ResultRow base_row = scaleup::evaluate(base);
    rows[0].normalized = rows[0].time_to_train_s / base_row.time_to_train_s;
  }
  emit(scaleup::results_to_csv(rows), out_path);
  return 0;
}

int cmd_sweep(const std::string& dir, const std::string& baseline_id,
              const std::vector<std::string>& overrides, const std::string& out_path) {
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path().string());
    }
  }
  if (files.empty()) throw scaleup::ValidationError("no .json scenarios in " + dir);
  std::sort(files.begin(), files.end());
  std::vector<scaleup::Scenario> scenarios;
  scenarios.reserve(files.size());
  for (const std::string& f : files) scenarios.push_back(load_with_overrides(f, overrides));
  const auto rows = scaleup::evaluate_all(scenarios, baseline_id);
  emit(scaleup::results_to_csv(rows), out_path);
  return 0;
}

int cmd_reproduce(const std::string& target, bool check, const std::string& out_path) {
  scaleup::CheckOutcome outcome;
  const std::string csv = scaleup::reproduce(target, check ? &outcome : nullptr);
  emit(csv, out_path);
  if (check) {
    for (const std::string& line : outcome.messages) std::cerr << line << '\n';
    if (!outcome.ok) return kExitCheckFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytical training-time model for MoE transformers on scale-up fabrics"};
  app.require_subcommand(1);

  std::string run_file, run_baseline, sweep_dir, sweep_baseline, target, out_path;
  std::vector<std::string> overrides;
  bool check = false;

  CLI::App* run = app.add_subcommand("run", "Evaluate one scenario file");
  run->add_option("file", run_file, "Scenario JSON file")->required();
  run->add_option("--baseline", run_baseline, "Scenario file to normalize against");
  run->add_option("--set", overrides, "Override, e.g. --set cluster.pod_size=256");
  run->add_option("--out", out_path, "Write CSV here instead of stdout");

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate every scenario in a directory");
  sweep->add_option("dir", sweep_dir, "Directory of scenario JSON files")->required();
  sweep->add_option("--baseline", sweep_baseline, "Scenario id to normalize against")->required();
  sweep->add_option("--set", overrides, "Override applied to every scenario");
  sweep->add_option("--out", out_path, "Write CSV here instead of stdout");

  CLI::App* rep = app.add_subcommand("reproduce", "Emit a bundled comparison table");
  rep->add_option("target", target, "One of: table4, fig7, fig8-area, fig8, fig9")->required();
  rep->add_flag("--check", check, "Verify tolerances; exit 3 on failure");
  rep->add_option("--out", out_path, "Write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    if (run->parsed()) return cmd_run(run_file, run_baseline, overrides, out_path);
    if (sweep->parsed()) return cmd_sweep(sweep_dir, sweep_baseline, overrides, out_path);
    return cmd_reproduce(target, check, out_path);
  } catch (const scaleup::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
