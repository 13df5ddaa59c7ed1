// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/placement.hpp"

#include <cmath>

#include <doctest.h>

#include "oracle_sim.hpp"
#include "scaleup/error.hpp"

using namespace scaleup;

namespace {

ModelConfig base_model(std::int64_t m) {
  ModelConfig cfg;
  cfg.layers = 120;
  cfg.d_model = 12288;
  cfg.heads = 128;
  cfg.d_ff_base = 49152;
  cfg.seq_len = 8192;
  cfg.total_experts_base = 32;
  cfg.active_experts_base = 1;
  cfg.granularity_m = m;
  return cfg;
}

ParallelismConfig base_parallelism(std::int64_t epr) {
  ParallelismConfig p;
  p.tp = 16;
  p.dp = 256;
  p.pp = 8;
  p.experts_per_dp_rank = epr;
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

oracle::LayoutSpec spec_for(const ClusterConfig& c, const ParallelismConfig& p,
                            const ModelConfig& m) {
  return {c.total_gpus, c.pod_size, p.tp, p.dp, p.pp, p.experts_per_dp_rank,
          m.effective_total_experts()};
}

}  // namespace

TEST_CASE("EP group of config 4 fills one optical pod exactly") {
  const auto map = build_placement(cluster(512, 32e12), base_parallelism(8), base_model(8));
  CHECK(map.ep.group_size == 512);  // (256/8) * 16
  CHECK(map.ep.domains == 1);
  CHECK(map.ep_in_domain_fraction == 1.0);
}

TEST_CASE("EP locality matches the materialized-table oracle on electrical pods") {
  for (std::int64_t m : {1, 8}) {
    const auto par = base_parallelism(m);
    const auto model = base_model(m);
    const auto clu = cluster(144, 14.4e12);
    const auto map = build_placement(clu, par, model);
    CHECK(map.ep.group_size == 512);
    CHECK(map.ep.domains > 1);
    const double want = oracle::ep_in_domain_fraction(spec_for(clu, par, model));
    CHECK(map.ep_in_domain_fraction == doctest::Approx(want).epsilon(1e-12));
    // Contiguous layout over 144-GPU pods keeps under a quarter of EP peer
    // traffic pod-local.
    CHECK(map.ep_in_domain_fraction == doctest::Approx(0.23128780241935484).epsilon(1e-12));
  }
}

TEST_CASE("tp equal to pod size makes each pod one TP group") {
  ParallelismConfig par = base_parallelism(1);
  par.tp = 64;
  par.dp = 64;
  par.pp = 8;
  const auto clu = cluster(64, 14.4e12);
  const auto model = base_model(1);
  const auto map = build_placement(clu, par, model);
  CHECK(map.tp.domains == 1);
  CHECK(map.tp.max_ranks_per_domain == 64);
  // All EP peers outside the sender's own TP group live in other pods.
  CHECK(map.ep_in_domain_fraction == 0.0);
  CHECK(map.ep_in_domain_fraction ==
        doctest::Approx(oracle::ep_in_domain_fraction(spec_for(clu, par, model))));
}

TEST_CASE("TP groups never span pods when tp <= pod_size") {
  for (std::int64_t pod : {144, 512}) {
    for (std::int64_t m : {1, 2, 4, 8}) {
      const auto map = build_placement(cluster(pod, 14.4e12), base_parallelism(m), base_model(m));
      CHECK(map.tp.domains == 1);
      CHECK(map.expert_tp.domains == 1);
    }
  }
}

TEST_CASE("expert replica count") {
  for (std::int64_t m : {1, 2, 4, 8}) {
    const auto clu = cluster(512, 32e12);
    CHECK(expert_replica_count(clu, base_parallelism(m), base_model(m)) == 8);
    CHECK(oracle::replica_count_from_table(256, m, 32 * m) == 8);
  }
  SUBCASE("single replica when dp holds exactly one expert set") {
    ParallelismConfig par = base_parallelism(1);
    par.dp = 32;
    par.pp = 8;
    ClusterConfig clu = cluster(512, 32e12);
    clu.total_gpus = 16 * 32 * 8;
    CHECK(expert_replica_count(clu, par, base_model(1)) == 1);
  }
  SUBCASE("non-integer replica count is rejected") {
    ParallelismConfig par = base_parallelism(1);
    par.dp = 48;  // 48 / 32 expert sets
    ClusterConfig clu = cluster(512, 32e12);
    clu.total_gpus = 16 * 48 * 8;
    CHECK_THROWS_WITH_AS(expert_replica_count(clu, par, base_model(1)),
                         doctest::Contains("not divisible"), ValidationError);
  }
}

TEST_CASE("replica groups sit one per pod on the optical cluster") {
  const auto map = build_placement(cluster(512, 32e12), base_parallelism(1), base_model(1));
  CHECK(map.expert_replica.group_size == 8);
  CHECK(map.expert_replica.domains == 8);
  CHECK(map.expert_replica.max_ranks_per_domain == 1);
}

TEST_CASE("DP group span") {
  const auto map512 = build_placement(cluster(512, 32e12), base_parallelism(1), base_model(1));
  // 256 members spaced tp apart cover one pipeline-stage block of 4096 ranks.
  CHECK(map512.dp.group_size == 256);
  CHECK(map512.dp.domains == 8);
  CHECK(map512.dp.max_ranks_per_domain == 32);
  const auto map144 = build_placement(cluster(144, 14.4e12), base_parallelism(1), base_model(1));
  CHECK(map144.dp.domains == 29);
  CHECK(map144.dp.max_ranks_per_domain == 9);
}

TEST_CASE("layout is a bijection and pods exhaust the cluster") {
  for (std::int64_t pod : {144, 512}) {
    const auto clu = cluster(pod, 14.4e12);
    CHECK(oracle::layout_is_consistent(spec_for(clu, base_parallelism(1), base_model(1))));
  }
}

TEST_CASE("first violated divisibility constraint is named") {
  SUBCASE("degree product") {
    ClusterConfig clu = cluster(512, 32e12);
    clu.total_gpus = 32768 + 512;
    CHECK_THROWS_WITH_AS(build_placement(clu, base_parallelism(1), base_model(1)),
                         doctest::Contains("tp*dp*pp"), ValidationError);
  }
  SUBCASE("expert tensor subgroup") {
    ParallelismConfig par = base_parallelism(3);
    CHECK_THROWS_WITH_AS(build_placement(cluster(512, 32e12), par, base_model(1)),
                         doctest::Contains("experts_per_dp_rank"), ValidationError);
  }
  SUBCASE("pods must hold whole TP groups") {
    ClusterConfig clu = cluster(24, 32e12);
    ParallelismConfig par = base_parallelism(1);
    CHECK_THROWS_WITH_AS(build_placement(clu, par, base_model(1)),
                         doctest::Contains("whole TP groups"), ValidationError);
  }
}

TEST_CASE("cluster validation") {
  ClusterConfig c = cluster(512, 32e12);
  c.total_gpus = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = cluster(512, 32e12);
  c.hbm_bandwidth = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
