// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Reference training scenarios: a 120-layer 4.7T-parameter MoE decoder on a
// 32,768-GPU cluster, swept over four expert-granularity configurations and
// two scale-up network designs (512-GPU optical pods at 32 Tb/s per GPU vs
// 144-GPU electrical pods at 14.4 Tb/s per GPU).
#pragma once

#include <vector>

#include "scaleup/scenario.hpp"

namespace scaleup {

/// Expert-granularity configurations 1..4: m in {1,2,4,8}, active/total
/// experts 1/32 .. 8/256, experts per DP rank = m.
Scenario passage_scenario(int config);             // pod 512 @ 32 Tb/s
Scenario alternative_radix512_scenario(int config);  // pod 512 @ 14.4 Tb/s
Scenario alternative_scenario(int config);           // pod 144 @ 14.4 Tb/s

/// Same-radix grid: passage_config1..4 then alternative_radix512_config1..4.
std::vector<Scenario> fig8_grid();

/// System-specific-radix grid: passage_config1..4 then alternative_config1..4.
std::vector<Scenario> fig9_grid();

/// All distinct bundled scenarios.
std::vector<Scenario> all_presets();

}  // namespace scaleup
