// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/placement.hpp"

#include <algorithm>
#include <string>

#include "scaleup/error.hpp"

namespace scaleup {

namespace {

// Span of a contiguous rank interval [start, start+size) over pods.
GroupSpan interval_span(std::int64_t start, std::int64_t size, std::int64_t pod) {
  GroupSpan s;
  s.group_size = size;
  const std::int64_t first = start / pod;
  const std::int64_t last = (start + size - 1) / pod;
  s.domains = last - first + 1;
  s.max_ranks_per_domain = 0;
  for (std::int64_t k = first; k <= last; ++k) {
    const std::int64_t lo = std::max(start, k * pod);
    const std::int64_t hi = std::min(start + size, (k + 1) * pod);
    s.max_ranks_per_domain = std::max(s.max_ranks_per_domain, hi - lo);
  }
  return s;
}

// Span of a strided member set {start + i*stride : i < count} over pods.
GroupSpan strided_span(std::int64_t start, std::int64_t stride, std::int64_t count,
                       std::int64_t pod) {
  GroupSpan s;
  s.group_size = count;
  std::int64_t domains = 0;
  std::int64_t max_per = 0;
  std::int64_t current_pod = -1;
  std::int64_t current = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t p = (start + i * stride) / pod;
    if (p != current_pod) {
      ++domains;
      max_per = std::max(max_per, current);
      current_pod = p;
      current = 0;
    }
    ++current;
  }
  max_per = std::max(max_per, current);
  s.domains = domains;
  s.max_ranks_per_domain = max_per;
  return s;
}

// Average in-pod peer fraction over all expert-parallel groups. A sender's
// peers are the EP group members outside its own TP group; traffic to those
// peers does not include the intra-TP exchanges already accounted to the
// tensor-parallel collectives.
double ep_fraction(std::int64_t total_gpus, std::int64_t pod, std::int64_t tp,
                   std::int64_t ep_gpus) {
  if (ep_gpus <= tp) return 1.0;
  double num = 0.0;
  double den = 0.0;
  for (std::int64_t base = 0; base + ep_gpus <= total_gpus; base += ep_gpus) {
    // Walk the group one TP group at a time; a TP group can straddle at most
    // two pods (none when pods are tp-aligned).
    for (std::int64_t t0 = base; t0 < base + ep_gpus; t0 += tp) {
      const std::int64_t first = t0 / pod;
      const std::int64_t last = (t0 + tp - 1) / pod;
      for (std::int64_t k = first; k <= last; ++k) {
        const std::int64_t tp_in_pod =
            std::min(t0 + tp, (k + 1) * pod) - std::max(t0, k * pod);
        const std::int64_t ep_in_pod =
            std::min(base + ep_gpus, (k + 1) * pod) - std::max(base, k * pod);
        num += static_cast<double>(tp_in_pod) * static_cast<double>(ep_in_pod - tp_in_pod);
        den += static_cast<double>(tp_in_pod) * static_cast<double>(ep_gpus - tp);
      }
    }
  }
  return den > 0.0 ? num / den : 1.0;
}

}  // namespace

void ClusterConfig::validate() const {
  if (total_gpus <= 0) throw ValidationError("cluster.total_gpus must be > 0");
  if (pod_size <= 0) throw ValidationError("cluster.pod_size must be > 0");
  scale_up_link.validate();
  scale_out_link.validate();
  if (!(flops_per_gpu > 0.0)) throw ValidationError("cluster.flops_per_gpu must be > 0");
  if (!(hbm_bandwidth > 0.0)) throw ValidationError("cluster.hbm_bandwidth must be > 0");
}

std::int64_t expert_set_size(const ParallelismConfig& par, const ModelConfig& model) {
  return model.effective_total_experts() / par.experts_per_dp_rank;
}

std::int64_t expert_replica_count(const ClusterConfig& cluster, const ParallelismConfig& par,
                                  const ModelConfig& model) {
  cluster.validate();
  par.validate();
  model.validate();
  const std::int64_t e = model.effective_total_experts();
  const std::int64_t instances = par.dp * par.experts_per_dp_rank;
  if (instances % e != 0) {
    throw ValidationError("expert replica count not integral: dp*experts_per_dp_rank=" +
                          std::to_string(instances) + " not divisible by effective experts=" +
                          std::to_string(e));
  }
  const std::int64_t replicas = instances / e;
  if (replicas < 1) {
    throw ValidationError("expert replica count must be >= 1 (dp too small for one expert set)");
  }
  return replicas;
}

PlacementMap build_placement(const ClusterConfig& cluster, const ParallelismConfig& par,
                             const ModelConfig& model) {
  cluster.validate();
  par.validate();
  model.validate();

  if (par.world_size() != cluster.total_gpus) {
    throw ValidationError("parallelism degrees do not cover the cluster: tp*dp*pp=" +
                          std::to_string(par.world_size()) + " but total_gpus=" +
                          std::to_string(cluster.total_gpus));
  }
  if (model.effective_total_experts() % par.experts_per_dp_rank != 0) {
    throw ValidationError("effective total experts=" +
                          std::to_string(model.effective_total_experts()) +
                          " not divisible by experts_per_dp_rank=" +
                          std::to_string(par.experts_per_dp_rank));
  }
  const std::int64_t set_ranks = expert_set_size(par, model);
  if (par.dp % set_ranks != 0) {
    throw ValidationError("dp=" + std::to_string(par.dp) +
                          " not divisible by expert-set size=" + std::to_string(set_ranks));
  }
  if (cluster.pod_size % par.tp != 0 && par.tp % cluster.pod_size != 0) {
    throw ValidationError("pod_size=" + std::to_string(cluster.pod_size) +
                          " cannot be filled with whole TP groups of tp=" +
                          std::to_string(par.tp));
  }
  (void)expert_replica_count(cluster, par, model);

  const std::int64_t pod = cluster.pod_size;
  PlacementMap map;
  map.tp = interval_span(0, par.tp, pod);
  map.expert_tp = interval_span(0, par.expert_tp_size(), pod);
  const std::int64_t ep_gpus = set_ranks * par.tp;
  map.ep = interval_span(0, ep_gpus, pod);
  map.dp = strided_span(0, par.tp, par.dp, pod);
  map.pp = strided_span(0, par.dp * par.tp, par.pp, pod);
  const std::int64_t replicas = par.dp / set_ranks;
  map.expert_replica = strided_span(0, ep_gpus, replicas, pod);
  map.ep_in_domain_fraction = ep_fraction(cluster.total_gpus, pod, par.tp, ep_gpus);
  return map;
}

}  // namespace scaleup
