// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Parameter counts, FLOP counts, and communication volumes for a
// dense-attention + sparse-MoE decoder, including fine-grained expert
// segmentation (each expert split into m slices of hidden size d_ff/m while
// activating m times more experts, which keeps compute constant).
#pragma once

#include <cstdint>

namespace scaleup {

struct ModelConfig {
  std::int64_t layers = 0;
  std::int64_t d_model = 0;
  std::int64_t heads = 0;
  std::int64_t d_ff_base = 0;  // pre-segmentation FFN hidden size, default 4*d_model
  std::int64_t seq_len = 0;
  std::int64_t total_experts_base = 0;
  std::int64_t active_experts_base = 0;
  std::int64_t granularity_m = 1;
  std::int64_t bytes_per_param = 2;       // BF16
  std::int64_t bytes_per_activation = 2;  // BF16

  std::int64_t effective_total_experts() const { return total_experts_base * granularity_m; }
  std::int64_t effective_active_experts() const { return active_experts_base * granularity_m; }
  std::int64_t effective_d_ff() const { return d_ff_base / granularity_m; }

  void validate() const;
};

struct WorkloadConfig {
  std::int64_t global_batch = 0;  // sequences per step
  std::int64_t seq_len = 0;       // tokens per sequence
  std::int64_t total_tokens = 0;  // training corpus size

  std::int64_t tokens_per_step() const { return global_batch * seq_len; }
  void validate() const;
};

struct ParallelismConfig {
  std::int64_t tp = 1;
  std::int64_t dp = 1;
  std::int64_t pp = 1;
  std::int64_t experts_per_dp_rank = 1;
  std::int64_t microbatches = 1;

  std::int64_t world_size() const { return tp * dp * pp; }
  std::int64_t expert_tp_size() const { return tp / experts_per_dp_rank; }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Parameters.
//
//   attention (per layer):  4 * d_model^2                 (QKV + out proj)
//   router    (per layer):  d_model * total_experts_base  (see note below)
//   experts   (per layer):  E_eff * 2 * d_model * d_ff_eff
//
// The expert term is invariant under the granularity m because
// E_eff * d_ff_eff = (E_base*m) * (d_ff_base/m). The router term is counted
// against the base expert pool so the total is exactly m-invariant as well.
// Embedding/unembedding parameters are excluded.
// ---------------------------------------------------------------------------
struct ParamCounts {
  std::int64_t attention_per_layer = 0;
  std::int64_t router_per_layer = 0;
  std::int64_t experts_per_layer = 0;  // all experts of one layer
  std::int64_t per_layer = 0;
  std::int64_t total = 0;
};

ParamCounts param_counts(const ModelConfig& model);
std::int64_t param_count(const ModelConfig& model);

// ---------------------------------------------------------------------------
// Forward FLOPs per token. Matmul of (m,n,k) costs 2mnk.
//
//   attention projections: 8 * d_model^2           (4 matmuls of d x d)
//   attention scores/vals: 4 * seq_len * d_model   (QK^T and AV, per token)
//   router:                2 * d_model * E_eff
//   active expert FFN:     k_eff * 4 * d_model * d_ff_eff   (m-invariant)
//
// Backward is modeled as 2x forward.
// ---------------------------------------------------------------------------
struct FlopsPerToken {
  double attention_proj_per_layer = 0.0;
  double attention_seq_per_layer = 0.0;
  double router_per_layer = 0.0;
  double expert_per_layer = 0.0;
  double per_layer = 0.0;
  double forward_total = 0.0;  // summed over layers
};

FlopsPerToken flops_breakdown(const ModelConfig& model);
double flops_per_token_forward(const ModelConfig& model);

/// Ratio of backward to forward FLOPs (and comm volume is 1x forward per
/// collective class).
inline constexpr double kBackwardFlopsFactor = 2.0;

// ---------------------------------------------------------------------------
// Communication volumes, per layer per microbatch unless stated otherwise.
//
// Token bookkeeping: a microbatch is processed jointly by one TP group, so
// the tensor-parallel all-reduce payload is the full microbatch activation
// (tokens_per_rank * d_model * bytes_per_activation). For expert dispatch the
// token set is deduplicated across the TP group (each token leaves the group
// once per destination expert-TP group), so the per-GPU all-to-all payload is
// tokens_per_rank / tp * k_eff * d_model * bytes_per_activation.
// ---------------------------------------------------------------------------
struct CommVolumes {
  std::int64_t tokens_per_rank_per_microbatch = 0;  // per DP rank
  std::int64_t tokens_per_gpu_per_microbatch = 0;   // per GPU after TP dedup

  double tp_allreduce_bytes = 0.0;       // payload of one TP/expert-TP all-reduce
  double ep_dispatch_bytes_per_gpu = 0.0;  // payload of one dispatch all-to-all
  double ep_combine_bytes_per_gpu = 0.0;   // payload of one combine all-to-all

  // Gradient bytes per GPU per step (this GPU's pipeline-stage shard).
  double dp_attention_router_grad_bytes = 0.0;
  double dp_expert_grad_bytes = 0.0;
};

CommVolumes comm_volumes(const ModelConfig& model, const ParallelismConfig& par,
                         const WorkloadConfig& work);

}  // namespace scaleup
