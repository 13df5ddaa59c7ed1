// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/step_time.hpp"

#include <algorithm>
#include <cmath>

#include "scaleup/error.hpp"

namespace scaleup {

namespace {

constexpr double kFwdBwdFactor = 1.0 + kBackwardFlopsFactor;  // forward + backward

std::int64_t layers_per_stage(const ModelConfig& model, const ParallelismConfig& par) {
  if (model.layers % par.pp != 0) {
    throw ValidationError("model.layers=" + std::to_string(model.layers) +
                          " not divisible by pp=" + std::to_string(par.pp));
  }
  return model.layers / par.pp;
}

double roofline(double flops, double bytes, double rate, double hbm) {
  return std::max(flops / rate, bytes / hbm);
}

}  // namespace

void ModelKnobs::validate() const {
  if (!(efficiency > 0.0)) throw ValidationError("knobs.efficiency must be > 0");
  if (overlap_fraction < 0.0 || overlap_fraction > 1.0) {
    throw ValidationError("knobs.overlap_fraction must be in [0,1]");
  }
  if (alpha_scale_up && *alpha_scale_up < 0.0) {
    throw ValidationError("knobs.alpha_scale_up must be >= 0");
  }
  if (alpha_scale_out && *alpha_scale_out < 0.0) {
    throw ValidationError("knobs.alpha_scale_out must be >= 0");
  }
}

Links effective_links(const ClusterConfig& cluster, const ModelKnobs& knobs) {
  Links links{cluster.scale_up_link, cluster.scale_out_link};
  if (knobs.alpha_scale_up) links.scale_up.latency_alpha_s = *knobs.alpha_scale_up;
  if (knobs.alpha_scale_out) links.scale_out.latency_alpha_s = *knobs.alpha_scale_out;
  return links;
}

double compute_time(const ModelConfig& model, const ParallelismConfig& par,
                    const ClusterConfig& cluster, const WorkloadConfig& work,
                    const ModelKnobs& knobs) {
  knobs.validate();
  const CommVolumes vol = comm_volumes(model, par, work);
  const FlopsPerToken f = flops_breakdown(model);
  const double tokens = static_cast<double>(vol.tokens_per_rank_per_microbatch);
  const double tp = static_cast<double>(par.tp);
  const double d = static_cast<double>(model.d_model);
  const double dff = static_cast<double>(model.effective_d_ff());
  const double e_eff = static_cast<double>(model.effective_total_experts());
  const double ba = static_cast<double>(model.bytes_per_activation);
  const double bp = static_cast<double>(model.bytes_per_param);
  const double rate = cluster.flops_per_gpu * knobs.efficiency;
  const double hbm = cluster.hbm_bandwidth;

  // Per layer per microbatch per GPU, forward+backward. Bytes touched are the
  // weight shard plus the main activation streams of each block.
  const double att_flops = f.attention_proj_per_layer + f.attention_seq_per_layer;
  const double t_attention =
      roofline(kFwdBwdFactor * att_flops * tokens / tp,
               kFwdBwdFactor * (4.0 * d * d * bp / tp + 2.0 * tokens * d * ba), rate, hbm);
  const double t_router =
      roofline(kFwdBwdFactor * f.router_per_layer * tokens / tp,
               kFwdBwdFactor * (d * e_eff * bp / tp + tokens * e_eff * ba), rate, hbm);
  const double t_expert =
      roofline(kFwdBwdFactor * f.expert_per_layer * tokens / tp,
               kFwdBwdFactor * (static_cast<double>(par.experts_per_dp_rank) * 2.0 * d * dff *
                                    bp / tp +
                                3.0 * tokens * d * ba),
               rate, hbm);

  const double blocks = t_attention + t_router + t_expert;
  return static_cast<double>(layers_per_stage(model, par)) *
         static_cast<double>(par.microbatches) * blocks;
}

double tp_time(const ModelConfig& model, const ParallelismConfig& par,
               const ClusterConfig& cluster, const WorkloadConfig& work,
               const ModelKnobs& knobs) {
  knobs.validate();
  if (par.tp == 1) return 0.0;
  const CommVolumes vol = comm_volumes(model, par, work);
  const Links links = effective_links(cluster, knobs);
  const double per_direction =
      all_reduce(par.tp, vol.tp_allreduce_bytes, links.scale_up).time_s +
      all_reduce(par.expert_tp_size(), vol.tp_allreduce_bytes, links.scale_up).time_s;
  return static_cast<double>(layers_per_stage(model, par)) *
         static_cast<double>(par.microbatches) * 2.0 * per_direction;
}

double ep_time(const ModelConfig& model, const ParallelismConfig& par,
               const ClusterConfig& cluster, const WorkloadConfig& work,
               const PlacementMap& placement, const ModelKnobs& knobs) {
  knobs.validate();
  if (model.effective_active_experts() == 0) return 0.0;
  const CommVolumes vol = comm_volumes(model, par, work);
  const Links links = effective_links(cluster, knobs);
  const std::int64_t ep_gpus = placement.ep.group_size;
  double fraction = placement.ep_in_domain_fraction;
  if (knobs.ep_spill == EpSpill::kScaleOutOnly && placement.ep.domains > 1) {
    fraction = 0.0;
  }
  const double dispatch =
      hierarchical_all_to_all(ep_gpus, vol.ep_dispatch_bytes_per_gpu, fraction, links).time_s;
  const double combine =
      hierarchical_all_to_all(ep_gpus, vol.ep_combine_bytes_per_gpu, fraction, links).time_s;
  // Dispatch + combine, forward and backward.
  return static_cast<double>(layers_per_stage(model, par)) *
         static_cast<double>(par.microbatches) * 2.0 * (dispatch + combine);
}

double pp_bubble_factor(const ParallelismConfig& par) {
  par.validate();
  return static_cast<double>(par.pp - 1) /
         static_cast<double>(par.microbatches + par.pp - 1);
}

double dp_sync_time(const ModelConfig& model, const ParallelismConfig& par,
                    const ClusterConfig& cluster, const PlacementMap& placement,
                    const ModelKnobs& knobs) {
  knobs.validate();
  const Links links = effective_links(cluster, knobs);
  // comm_volumes needs a workload only for activation volumes; gradient bytes
  // depend on the model shard alone.
  const std::int64_t ls = layers_per_stage(model, par);
  const ParamCounts pc = param_counts(model);
  const double bp = static_cast<double>(model.bytes_per_param);
  const double attention_bytes =
      static_cast<double>(pc.attention_per_layer + pc.router_per_layer) /
      static_cast<double>(par.tp) * static_cast<double>(ls) * bp;
  double t = 0.0;
  if (par.dp > 1) {
    t += hierarchical_all_reduce(placement.dp, attention_bytes, links).time_s;
  }
  const std::int64_t replicas = placement.expert_replica.group_size;
  if (replicas > 1) {
    const double expert_bytes = static_cast<double>(par.experts_per_dp_rank) * 2.0 *
                                static_cast<double>(model.d_model) *
                                static_cast<double>(model.effective_d_ff()) /
                                static_cast<double>(par.tp) * static_cast<double>(ls) * bp;
    t += hierarchical_all_reduce(placement.expert_replica, expert_bytes, links).time_s;
  }
  return t;
}

StepBreakdown step_time(const ModelConfig& model, const ParallelismConfig& par,
                        const ClusterConfig& cluster, const WorkloadConfig& work,
                        const ModelKnobs& knobs) {
  knobs.validate();
  const PlacementMap placement = build_placement(cluster, par, model);
  StepBreakdown s;
  s.compute = compute_time(model, par, cluster, work, knobs);
  s.tp_comm = tp_time(model, par, cluster, work, knobs);
  s.ep_comm = ep_time(model, par, cluster, work, placement, knobs);
  s.dp_sync = dp_sync_time(model, par, cluster, placement, knobs);
  const double visible_comm = (s.tp_comm + s.ep_comm) * (1.0 - knobs.overlap_fraction);
  s.pp_bubble = (s.compute + visible_comm) * pp_bubble_factor(par);
  s.total = s.compute + visible_comm + s.pp_bubble + s.dp_sync;
  return s;
}

std::int64_t steps_for(const WorkloadConfig& work) {
  work.validate();
  const std::int64_t per_step = work.tokens_per_step();
  return (work.total_tokens + per_step - 1) / per_step;
}

double time_to_train(const WorkloadConfig& work, const StepBreakdown& step) {
  return static_cast<double>(steps_for(work)) * step.total;
}

}  // namespace scaleup
