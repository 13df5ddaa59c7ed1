// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/presets.hpp"

#include "scaleup/error.hpp"

namespace scaleup {

namespace {

ModelConfig base_model(int config) {
  ModelConfig m;
  m.layers = 120;
  m.d_model = 12288;
  m.heads = 128;
  m.d_ff_base = 4 * m.d_model;
  m.seq_len = 8192;
  m.total_experts_base = 32;
  m.active_experts_base = 1;
  m.granularity_m = std::int64_t{1} << (config - 1);  // 1, 2, 4, 8
  m.bytes_per_param = 2;
  m.bytes_per_activation = 2;
  return m;
}

WorkloadConfig base_workload() {
  WorkloadConfig w;
  w.global_batch = 4096;
  w.seq_len = 8192;
  w.total_tokens = 13'000'000'000'000;
  return w;
}

ParallelismConfig base_parallelism(int config) {
  ParallelismConfig p;
  p.tp = 16;
  p.dp = 256;
  p.pp = 8;
  p.experts_per_dp_rank = std::int64_t{1} << (config - 1);
  p.microbatches = 16;
  return p;
}

ClusterConfig cluster(std::int64_t pod, double up_bw) {
  ClusterConfig c;
  c.total_gpus = 32768;
  c.pod_size = pod;
  c.scale_up_link = {up_bw, 250e-9};
  c.scale_out_link = {1.6e12, 2e-6};
  c.flops_per_gpu = 8.5e15;
  c.hbm_bandwidth = 26e12;
  return c;
}

Scenario make(const std::string& id, int config, std::int64_t pod, double up_bw) {
  if (config < 1 || config > 4) {
    throw ValidationError("preset config index must be in 1..4, got " + std::to_string(config));
  }
  Scenario s;
  s.id = id + std::to_string(config);
  s.model = base_model(config);
  s.workload = base_workload();
  s.parallelism = base_parallelism(config);
  s.cluster = cluster(pod, up_bw);
  s.validate();
  return s;
}

}  // namespace

Scenario passage_scenario(int config) {
  return make("passage_config", config, 512, 32e12);
}

Scenario alternative_radix512_scenario(int config) {
  return make("alternative_radix512_config", config, 512, 14.4e12);
}

Scenario alternative_scenario(int config) {
  return make("alternative_config", config, 144, 14.4e12);
}

std::vector<Scenario> fig8_grid() {
  std::vector<Scenario> v;
  for (int c = 1; c <= 4; ++c) v.push_back(passage_scenario(c));
  for (int c = 1; c <= 4; ++c) v.push_back(alternative_radix512_scenario(c));
  return v;
}

std::vector<Scenario> fig9_grid() {
  std::vector<Scenario> v;
  for (int c = 1; c <= 4; ++c) v.push_back(passage_scenario(c));
  for (int c = 1; c <= 4; ++c) v.push_back(alternative_scenario(c));
  return v;
}

std::vector<Scenario> all_presets() {
  std::vector<Scenario> v;
  for (int c = 1; c <= 4; ++c) v.push_back(passage_scenario(c));
  for (int c = 1; c <= 4; ++c) v.push_back(alternative_radix512_scenario(c));
  for (int c = 1; c <= 4; ++c) v.push_back(alternative_scenario(c));
  return v;
}

}  // namespace scaleup
