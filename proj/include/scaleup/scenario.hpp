// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Scenario files: a JSON document describing one model/workload/parallelism/
// cluster combination plus model knobs. Loading is fail-closed: unknown keys
// are rejected and every module invariant is validated up front.
#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "scaleup/model_accounting.hpp"
#include "scaleup/placement.hpp"
#include "scaleup/step_time.hpp"
#include "scaleup/technology.hpp"

namespace scaleup {

struct Scenario {
  std::string id;
  ModelConfig model;
  WorkloadConfig workload;
  ParallelismConfig parallelism;
  ClusterConfig cluster;
  ModelKnobs knobs;
  std::map<std::string, TechnologyProfile> technologies;  // optional extras

  /// Cross-module invariants (degree product, token divisibility, placement).
  void validate() const;
};

/// Parse and fully validate a scenario document.
Scenario scenario_from_json(const nlohmann::json& j);

/// Load from disk. Parse errors carry the position; validation errors name
/// the violated invariant.
Scenario load_scenario(const std::string& path);

/// Parse a file into raw JSON without validating (for override application).
nlohmann::json read_scenario_json(const std::string& path);

/// Apply a `key.path=value` override onto a raw scenario document. The value
/// is parsed as JSON if possible, else taken as a string.
void apply_override(nlohmann::json& j, const std::string& assignment);

/// Serialize back to the documented schema (round-trips losslessly).
nlohmann::json scenario_to_json(const Scenario& s);

nlohmann::json technology_to_json(const TechnologyProfile& t);
TechnologyProfile technology_from_json(const nlohmann::json& j);

/// One "key=value" line per effective field, defaults applied.
std::string describe(const Scenario& s);

}  // namespace scaleup
