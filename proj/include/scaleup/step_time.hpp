// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Composes compute, memory, and communication costs into per-step time and
// total time-to-train.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "scaleup/model_accounting.hpp"
#include "scaleup/placement.hpp"

namespace scaleup {

enum class EpSpill {
  kHierarchical,   // split EP traffic between scale-up and scale-out by locality
  kScaleOutOnly,   // once the EP group spills past one pod, all its traffic
                   // goes over the scale-out network
};

struct ModelKnobs {
  double efficiency = 1.0;        // global calibration scalar on the FLOP rate
  double overlap_fraction = 0.0;  // fraction of TP+EP comm hidden under compute
  EpSpill ep_spill = EpSpill::kHierarchical;
  std::optional<double> alpha_scale_up;   // overrides the link startup latencies
  std::optional<double> alpha_scale_out;

  void validate() const;
};

struct StepBreakdown {
  double compute = 0.0;
  double tp_comm = 0.0;   // raw (pre-overlap) tensor/expert-TP collective time
  double ep_comm = 0.0;   // raw expert all-to-all time
  double pp_bubble = 0.0; // pipeline fill/drain time
  double dp_sync = 0.0;   // gradient synchronization time
  double total = 0.0;     // (compute + tp + ep)*(1 + bubble) + dp_sync at zero overlap
};

/// Cluster links with any knob-level alpha overrides applied.
Links effective_links(const ClusterConfig& cluster, const ModelKnobs& knobs);

/// Per-GPU compute time per step: FLOPs/(rate*efficiency) with a per-block
/// memory floor max(flop_time, bytes_touched/hbm_bandwidth).
double compute_time(const ModelConfig& model, const ParallelismConfig& par,
                    const ClusterConfig& cluster, const WorkloadConfig& work,
                    const ModelKnobs& knobs);

/// Tensor-parallel collective time per step: per layer per microbatch, two
/// all-reduces forward (attention out over tp ranks, expert/FFN combine over
/// the expert-TP subgroup) and the mirror pair backward, on the scale-up link.
double tp_time(const ModelConfig& model, const ParallelismConfig& par,
               const ClusterConfig& cluster, const WorkloadConfig& work,
               const ModelKnobs& knobs);

/// Expert-parallel all-to-all time per step: dispatch + combine, forward and
/// backward (4 all-to-alls per layer per microbatch) over the EP group.
double ep_time(const ModelConfig& model, const ParallelismConfig& par,
               const ClusterConfig& cluster, const WorkloadConfig& work,
               const PlacementMap& placement, const ModelKnobs& knobs);

/// 1F1B pipeline bubble fraction: (pp-1)/(microbatches + pp - 1).
double pp_bubble_factor(const ParallelismConfig& par);

/// Gradient sync: hierarchical all-reduce of attention+router gradients over
/// the DP group plus hierarchical all-reduce of expert gradients over the
/// expert replica group.
double dp_sync_time(const ModelConfig& model, const ParallelismConfig& par,
                    const ClusterConfig& cluster, const PlacementMap& placement,
                    const ModelKnobs& knobs);

StepBreakdown step_time(const ModelConfig& model, const ParallelismConfig& par,
                        const ClusterConfig& cluster, const WorkloadConfig& work,
                        const ModelKnobs& knobs);

/// Optimizer steps needed for the corpus, rounded up.
std::int64_t steps_for(const WorkloadConfig& work);

double time_to_train(const WorkloadConfig& work, const StepBreakdown& step);

}  // namespace scaleup
