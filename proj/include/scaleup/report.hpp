// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario evaluation, sweeps, reproduction tables, and CSV rendering.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scaleup/scenario.hpp"
#include "scaleup/step_time.hpp"

namespace scaleup {

struct ResultRow {
  std::string id;
  StepBreakdown step;
  std::int64_t steps = 0;
  double time_to_train_s = 0.0;
  double normalized = 0.0;  // time_to_train / baseline time_to_train
};

ResultRow evaluate(const Scenario& s);

/// Evaluate scenarios (concurrently, bounded by SCALEUP_MODEL_THREADS) and
/// normalize against the row whose id equals baseline_id. Output order is the
/// input order regardless of completion order.
std::vector<ResultRow> evaluate_all(const std::vector<Scenario>& scenarios,
                                    const std::string& baseline_id);

/// RFC-4180-style CSV with a header row; all times in seconds.
std::string results_to_csv(const std::vector<ResultRow>& rows);

/// Outcome of a --check run; messages carry one line per clause.
struct CheckOutcome {
  bool ok = true;
  std::vector<std::string> messages;

  void require(bool condition, const std::string& message);
};

// Reproduction targets. Each returns the CSV body; check clauses are
// evaluated only when `check` is non-null.
std::string reproduce_table4(CheckOutcome* check);
std::string reproduce_fig7(CheckOutcome* check);
std::string reproduce_fig8_area(CheckOutcome* check);
std::string reproduce_fig8(CheckOutcome* check);
std::string reproduce_fig9(CheckOutcome* check);  // also verifies the fig8 bands when checking

std::vector<std::string> reproduce_targets();
std::string reproduce(const std::string& target, CheckOutcome* check);

/// Band checks shared by reproduce and the acceptance suite. Rows must be in
/// grid order: passage 1..4 followed by alternative 1..4.
void check_fig8_rows(const std::vector<ResultRow>& rows, CheckOutcome& out);
void check_fig9_rows(const std::vector<ResultRow>& rows, CheckOutcome& out);

}  // namespace scaleup
