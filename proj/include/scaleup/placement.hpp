// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Maps TP/DP/PP/EP process groups onto a cluster of scale-up pods.
//
// Ranks are laid out contiguously, TP innermost: the DP ranks holding one
// complete expert set form consecutive blocks, remaining DP next, PP
// outermost. Pods are filled with whole TP groups, so tensor-parallel groups
// never straddle a pod whenever tp <= pod_size.
#pragma once

#include <cstdint>
#include <vector>

#include "scaleup/collectives.hpp"
#include "scaleup/model_accounting.hpp"

namespace scaleup {

struct ClusterConfig {
  std::int64_t total_gpus = 0;
  std::int64_t pod_size = 0;  // GPU packages per scale-up domain
  LinkClass scale_up_link;
  LinkClass scale_out_link;
  double flops_per_gpu = 0.0;      // FLOPs/second
  double hbm_bandwidth = 0.0;      // bytes/second

  std::int64_t num_pods() const { return (total_gpus + pod_size - 1) / pod_size; }
  void validate() const;
};

/// Domain spans of every group kind plus the expert-parallel locality share.
struct PlacementMap {
  GroupSpan tp;
  GroupSpan expert_tp;
  GroupSpan ep;       // GPUs hosting one complete expert set
  GroupSpan dp;
  GroupSpan pp;
  GroupSpan expert_replica;  // corresponding expert copies across expert sets

  // Share of a sender's expert-parallel peer GPUs (EP group members outside
  // its own TP group) that sit in the sender's pod, averaged over all senders
  // of all EP groups under the contiguous layout.
  double ep_in_domain_fraction = 1.0;
};

PlacementMap build_placement(const ClusterConfig& cluster, const ParallelismConfig& par,
                             const ModelConfig& model);

/// Number of copies of each unique expert: dp * experts_per_dp_rank / E_eff.
std::int64_t expert_replica_count(const ClusterConfig& cluster, const ParallelismConfig& par,
                                  const ModelConfig& model);

/// DP ranks holding one complete expert set.
std::int64_t expert_set_size(const ParallelismConfig& par, const ModelConfig& model);

/// Scale-up domain of a global rank under the contiguous layout.
inline std::int64_t pod_of(std::int64_t rank, const ClusterConfig& cluster) {
  return rank / cluster.pod_size;
}

}  // namespace scaleup
