// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/model_accounting.hpp"

#include <string>

#include "scaleup/error.hpp"

namespace scaleup {

namespace {

void require_positive(std::int64_t v, const char* name) {
  if (v <= 0) {
    throw ValidationError(std::string(name) + " must be > 0, got " + std::to_string(v));
  }
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw ValidationError(std::string("overflow computing ") + what);
  }
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) {
    throw ValidationError(std::string("overflow computing ") + what);
  }
  return r;
}

}  // namespace

void ModelConfig::validate() const {
  require_positive(layers, "model.layers");
  require_positive(d_model, "model.d_model");
  require_positive(heads, "model.heads");
  require_positive(d_ff_base, "model.d_ff_base");
  require_positive(seq_len, "model.seq_len");
  require_positive(total_experts_base, "model.total_experts_base");
  require_positive(granularity_m, "model.granularity_m");
  require_positive(bytes_per_param, "model.bytes_per_param");
  require_positive(bytes_per_activation, "model.bytes_per_activation");
  if (active_experts_base < 0) {
    throw ValidationError("model.active_experts_base must be >= 0");
  }
  if (active_experts_base > total_experts_base) {
    throw ValidationError("model.active_experts_base=" + std::to_string(active_experts_base) +
                          " exceeds total_experts_base=" + std::to_string(total_experts_base));
  }
  if (d_model % heads != 0) {
    throw ValidationError("model.d_model=" + std::to_string(d_model) +
                          " not divisible by heads=" + std::to_string(heads));
  }
  if (d_ff_base % granularity_m != 0) {
    throw ValidationError("model.d_ff_base=" + std::to_string(d_ff_base) +
                          " not divisible by granularity_m=" + std::to_string(granularity_m));
  }
}

void WorkloadConfig::validate() const {
  require_positive(global_batch, "workload.global_batch");
  require_positive(seq_len, "workload.seq_len");
  if (total_tokens < 0) {
    throw ValidationError("workload.total_tokens must be >= 0, got " +
                          std::to_string(total_tokens));
  }
}

void ParallelismConfig::validate() const {
  require_positive(tp, "parallelism.tp");
  require_positive(dp, "parallelism.dp");
  require_positive(pp, "parallelism.pp");
  require_positive(experts_per_dp_rank, "parallelism.experts_per_dp_rank");
  require_positive(microbatches, "parallelism.microbatches");
  if (tp % experts_per_dp_rank != 0) {
    throw ValidationError("parallelism.tp=" + std::to_string(tp) +
                          " not divisible by experts_per_dp_rank=" +
                          std::to_string(experts_per_dp_rank));
  }
}

ParamCounts param_counts(const ModelConfig& model) {
  model.validate();
  ParamCounts c;
  c.attention_per_layer = checked_mul(4, checked_mul(model.d_model, model.d_model, "d_model^2"),
                                      "attention params");
  c.router_per_layer = checked_mul(model.d_model, model.total_experts_base, "router params");
  c.experts_per_layer =
      checked_mul(model.effective_total_experts(),
                  checked_mul(2, checked_mul(model.d_model, model.effective_d_ff(), "expert matmul"),
                              "expert params"),
                  "experts per layer");
  c.per_layer = checked_add(checked_add(c.attention_per_layer, c.router_per_layer, "per-layer"),
                            c.experts_per_layer, "per-layer");
  c.total = checked_mul(model.layers, c.per_layer, "total params");
  return c;
}

std::int64_t param_count(const ModelConfig& model) { return param_counts(model).total; }

FlopsPerToken flops_breakdown(const ModelConfig& model) {
  model.validate();
  const double d = static_cast<double>(model.d_model);
  FlopsPerToken f;
  f.attention_proj_per_layer = 8.0 * d * d;
  f.attention_seq_per_layer = 4.0 * static_cast<double>(model.seq_len) * d;
  f.router_per_layer = 2.0 * d * static_cast<double>(model.effective_total_experts());
  f.expert_per_layer = static_cast<double>(model.effective_active_experts()) * 4.0 * d *
                       static_cast<double>(model.effective_d_ff());
  f.per_layer = f.attention_proj_per_layer + f.attention_seq_per_layer + f.router_per_layer +
                f.expert_per_layer;
  f.forward_total = f.per_layer * static_cast<double>(model.layers);
  return f;
}

double flops_per_token_forward(const ModelConfig& model) {
  return flops_breakdown(model).forward_total;
}

CommVolumes comm_volumes(const ModelConfig& model, const ParallelismConfig& par,
                         const WorkloadConfig& work) {
  model.validate();
  par.validate();
  work.validate();

  CommVolumes v;
  const std::int64_t step_tokens = work.tokens_per_step();
  const std::int64_t rank_div = par.dp * par.microbatches;
  if (step_tokens % rank_div != 0) {
    throw ValidationError("tokens per DP rank per microbatch not integral: global_batch*seq_len=" +
                          std::to_string(step_tokens) + " not divisible by dp*microbatches=" +
                          std::to_string(rank_div));
  }
  v.tokens_per_rank_per_microbatch = step_tokens / rank_div;
  if (v.tokens_per_rank_per_microbatch % par.tp != 0) {
    throw ValidationError("tokens per GPU not integral: tokens per rank per microbatch=" +
                          std::to_string(v.tokens_per_rank_per_microbatch) +
                          " not divisible by tp=" + std::to_string(par.tp));
  }
  v.tokens_per_gpu_per_microbatch = v.tokens_per_rank_per_microbatch / par.tp;

  const double ba = static_cast<double>(model.bytes_per_activation);
  const double bp = static_cast<double>(model.bytes_per_param);
  const double d = static_cast<double>(model.d_model);

  v.tp_allreduce_bytes = static_cast<double>(v.tokens_per_rank_per_microbatch) * d * ba;
  v.ep_dispatch_bytes_per_gpu = static_cast<double>(v.tokens_per_gpu_per_microbatch) *
                                static_cast<double>(model.effective_active_experts()) * d * ba;
  v.ep_combine_bytes_per_gpu = v.ep_dispatch_bytes_per_gpu;

  if (model.layers % par.pp != 0) {
    throw ValidationError("model.layers=" + std::to_string(model.layers) +
                          " not divisible by pp=" + std::to_string(par.pp));
  }
  const double layers_per_stage = static_cast<double>(model.layers / par.pp);
  const ParamCounts pc = param_counts(model);
  v.dp_attention_router_grad_bytes =
      static_cast<double>(pc.attention_per_layer + pc.router_per_layer) /
      static_cast<double>(par.tp) * layers_per_stage * bp;
  // Each GPU holds one expert shard per layer: experts_per_dp_rank experts of
  // 2*d_model*d_ff_eff params, sharded over the whole TP group.
  v.dp_expert_grad_bytes = static_cast<double>(par.experts_per_dp_rank) * 2.0 * d *
                           static_cast<double>(model.effective_d_ff()) /
                           static_cast<double>(par.tp) * layers_per_stage * bp;
  return v;
}

}  // namespace scaleup
