// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "oracle_sim.hpp"
#include "scaleup/collectives.hpp"
#include "scaleup/model_accounting.hpp"
#include "scaleup/placement.hpp"
#include "scaleup/presets.hpp"
#include "scaleup/report.hpp"
#include "scaleup/step_time.hpp"
#include "scaleup/technology.hpp"

using namespace scaleup;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("[%2d] %s  %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
}

std::string f3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

// --- criterion 1: component energy stacks sum to the published totals -------
void criterion_energy_totals() {
  const double lpo = lpo_profile().total_pj_per_bit();
  const double cpo = cpo_profile().total_pj_per_bit();
  const double psg = passage_profile().total_pj_per_bit();
  const bool ok = std::abs(lpo - 13.0) < 1e-9 && std::abs(cpo - 12.0) < 1e-9 &&
                  std::abs(psg - 4.3) < 1e-9;
  report(1, ok,
         "energy totals lpo/cpo/passage = " + f3(lpo) + "/" + f3(cpo) + "/" + f3(psg) +
             " pJ/bit (expect 13/12/4.3)");
}

// --- criterion 2: GPU I/O power ratio at 32 Tb/s ----------------------------
void criterion_power_ratio() {
  const double ratio =
      link_power(32e12, cpo_profile()).total_w / link_power(32e12, passage_profile()).total_w;
  report(2, ratio >= 2.74 && ratio <= 2.84,
         "32 Tb/s GPU power cpo/passage = " + f3(ratio) + " (expect 2.79 +- 0.05)");
}

// --- criterion 3: optics areas and package expansion ------------------------
void criterion_areas() {
  const double base = gpu_base_package_sqmm();
  const double lpo = optics_area_sqmm(32e12, lpo_profile());
  const double cpo = optics_area_sqmm(32e12, cpo_profile());
  const double psg = optics_area_sqmm(32e12, passage_profile());
  const double cpo_pct = package_expansion_pct(base, 32e12, cpo_profile());
  const double psg_pct = package_expansion_pct(base, 32e12, passage_profile());
  const bool ok = std::abs(lpo - 23890.0) < 1e-6 && lpo > 20000.0 && std::abs(cpo - 1311.0) <= 5.0 &&
                  std::abs(psg - 200.0) < 1e-9 && std::abs(cpo_pct - 22.9) <= 0.5 &&
                  std::abs(psg_pct - 3.50) <= 0.05;
  report(3, ok,
         "areas lpo/cpo/passage = " + f3(lpo) + "/" + f3(cpo) + "/" + f3(psg) +
             " sqmm; expansion cpo/passage = " + f3(cpo_pct) + "%/" + f3(psg_pct) + "%");
}

// --- criterion 4: switch package power delta --------------------------------
void criterion_switch_delta() {
  const double delta = switch_power_delta_w(200e12, cpo_profile(), passage_profile());
  report(4, std::abs(delta - 1500.0) / 1500.0 <= 0.05,
         "200 Tb/s switch delta cpo->passage = " + f3(delta) + " W (expect 1.5 kW +- 5%)");
}

// --- criterion 5: parameter count and its granularity invariance ------------
void criterion_param_count() {
  const std::vector<Scenario> grid = {passage_scenario(1), passage_scenario(2),
                                      passage_scenario(3), passage_scenario(4)};
  const std::int64_t p1 = param_count(grid[0].model);
  bool invariant = true;
  for (const Scenario& s : grid) invariant = invariant && param_count(s.model) == p1;
  const bool in_band = std::abs(static_cast<double>(p1) - 4.7e12) <= 0.02 * 4.7e12;
  report(5, invariant && in_band,
         "param count = " + std::to_string(p1) + " (4.7e12 +- 2%), invariant across configs 1-4: " +
             (invariant ? "yes" : "no"));
}

// --- criteria 6/7: relative step-time grids ---------------------------------
bool criterion_fig8() {
  CheckOutcome out;
  const auto rows = evaluate_all(fig8_grid(), "passage_config1");
  check_fig8_rows(rows, out);
  for (const std::string& line : out.messages) std::printf("      %s\n", line.c_str());
  report(6, out.ok, "same-radix grid bands (see clauses above)");
  return out.ok;
}

bool criterion_fig9() {
  CheckOutcome out;
  const auto rows = evaluate_all(fig9_grid(), "passage_config1");
  check_fig9_rows(rows, out);
  for (const std::string& line : out.messages) std::printf("      %s\n", line.c_str());
  report(7, out.ok, "system-specific-radix grid bands (see clauses above)");
  return out.ok;
}

// --- criterion 8: reproduce fig9 --check exit code ---------------------------
void criterion_check_exit(bool criteria67_hold) {
  const std::string cmd = std::string(SCALEUP_CLI_PATH) +
                          " reproduce fig9 --check >/dev/null 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  const int exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  const int expected = criteria67_hold ? 0 : 3;
  report(8, exit_code == expected,
         "reproduce fig9 --check exit = " + std::to_string(exit_code) + " (expect " +
             std::to_string(expected) + " given criteria 6-7 " +
             (criteria67_hold ? "hold" : "do not hold") + ")");
}

// --- criterion 9: collective closed forms vs discrete-event oracle ----------
void criterion_oracle_grid() {
  const LinkClass link{8e9, 1e-6};
  const oracle::SimLink sim{link.latency_alpha_s, link.beta_s_per_byte()};
  double worst = 0.0;
  bool composition = true;
  for (std::int64_t p = 1; p <= 8; ++p) {
    for (std::int64_t shard : {0, 64, 4096, 65536}) {
      const std::int64_t total = p * shard;
      worst = std::max(worst, rel_err(all_gather(p, total, link).time_s,
                                      oracle::ring_all_gather(p, static_cast<double>(total), sim)));
      worst = std::max(worst,
                       rel_err(reduce_scatter(p, total, link).time_s,
                               oracle::ring_reduce_scatter(p, static_cast<double>(total), sim)));
      worst = std::max(worst, rel_err(all_reduce(p, static_cast<double>(shard), link).time_s,
                                      oracle::ring_all_reduce(p, static_cast<double>(shard), sim)));
      worst = std::max(worst, rel_err(all_to_all(p, static_cast<double>(shard), link).time_s,
                                      oracle::switch_all_to_all(p, static_cast<double>(shard), sim)));
      const double sum = reduce_scatter(p, total, link).time_s + all_gather(p, total, link).time_s;
      composition = composition &&
                    all_reduce(p, static_cast<double>(total), link).time_s == sum;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", worst);
  report(9, worst <= 1e-12 && composition,
         std::string("oracle grid p<=8, worst relative error = ") + buf +
             ", all_reduce == reduce_scatter + all_gather: " + (composition ? "exact" : "BROKEN"));
}

// --- criterion 10: hierarchical collapse over randomized one-domain groups --
void criterion_hierarchical_collapse() {
  std::mt19937_64 rng(0x5ca1eu);
  const Links links{{32e12, 2.5e-7}, {1.6e12, 2e-6}};
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 128);
    const std::vector<std::int64_t> domains(p, static_cast<std::int64_t>(rng() % 4096));
    const std::int64_t n = p * static_cast<std::int64_t>(rng() % 262144);
    if (hierarchical_collective(CollectiveKind::kAllGather, domains, n, links).time_s !=
        all_gather(p, n, links.scale_up).time_s) {
      ++bad;
    }
    if (hierarchical_collective(CollectiveKind::kAllReduce, domains, n, links).time_s !=
        all_reduce(p, static_cast<double>(n), links.scale_up).time_s) {
      ++bad;
    }
    if (hierarchical_collective(CollectiveKind::kAllToAll, domains, n, links).time_s !=
        all_to_all(p, static_cast<double>(n), links.scale_up).time_s) {
      ++bad;
    }
  }
  report(10, bad == 0,
         "one-domain hierarchical == flat over 100 random groups, mismatches = " +
             std::to_string(bad));
}

// --- criterion 11: monotonicity over a randomized scenario grid -------------
void criterion_monotonicity() {
  std::mt19937_64 rng(0xdeadbeefu);
  int violations = 0;
  int evaluated = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ModelConfig model;
    model.layers = 8 * (1 + static_cast<std::int64_t>(rng() % 4));
    model.d_model = 1024 * (1 + static_cast<std::int64_t>(rng() % 4));
    model.heads = 8;
    model.d_ff_base = 4 * model.d_model;
    model.seq_len = 2048;
    model.total_experts_base = (rng() % 2) ? 8 : 16;
    model.active_experts_base = 1;
    model.granularity_m = std::int64_t{1} << (rng() % 3);

    ParallelismConfig par;
    par.experts_per_dp_rank = model.granularity_m;
    par.tp = (rng() % 2) ? 8 : 16;
    if (par.tp % par.experts_per_dp_rank != 0) par.tp = 16;
    par.dp = model.total_experts_base * (1 + static_cast<std::int64_t>(rng() % 4));
    par.pp = std::int64_t{1} << (rng() % 3);
    if (model.layers % par.pp != 0) par.pp = 1;
    par.microbatches = 4;

    WorkloadConfig work;
    work.global_batch = par.dp * par.microbatches;
    work.seq_len = model.seq_len;
    work.total_tokens = work.tokens_per_step() * 10;

    ClusterConfig clu;
    clu.total_gpus = par.world_size();
    clu.scale_up_link = {14.4e12, 250e-9};
    clu.scale_out_link = {1.6e12, 2e-6};
    clu.flops_per_gpu = 8.5e15;
    clu.hbm_bandwidth = 26e12;
    const std::int64_t max_pod = clu.total_gpus / par.tp;
    clu.pod_size = par.tp * (1 + static_cast<std::int64_t>(rng() % std::max<std::int64_t>(
                                                               1, std::min<std::int64_t>(
                                                                      8, max_pod))));

    ++evaluated;
    // Nonincreasing in scale-up bandwidth.
    double prev = 1e300;
    for (double scale : {1.0, 2.0, 4.0}) {
      ClusterConfig c = clu;
      c.scale_up_link.per_gpu_bandwidth_bps *= scale;
      const double t = step_time(model, par, c, work, ModelKnobs{}).total;
      if (t > prev * (1.0 + 1e-12)) ++violations;
      prev = t;
    }
    // Nonincreasing in pod size along nested doublings.
    prev = 1e300;
    for (std::int64_t scale : {1, 2, 4}) {
      ClusterConfig c = clu;
      c.pod_size = clu.pod_size * scale;
      const double t = step_time(model, par, c, work, ModelKnobs{}).total;
      if (t > prev * (1.0 + 1e-12)) ++violations;
      prev = t;
    }
  }
  report(11, violations == 0,
         "monotonicity in scale-up bandwidth and pod size over " + std::to_string(evaluated) +
             " random scenarios, violations = " + std::to_string(violations));
}

// --- criterion 12: fine-graining invariance and replica structure -----------
void criterion_fine_graining() {
  const std::int64_t p1 = param_count(passage_scenario(1).model);
  const double e1 = flops_breakdown(passage_scenario(1).model).expert_per_layer;
  bool ok = true;
  for (int c = 1; c <= 4; ++c) {
    const Scenario s = passage_scenario(c);
    ok = ok && param_count(s.model) == p1;
    ok = ok && flops_breakdown(s.model).expert_per_layer == e1;
    const std::int64_t formula =
        expert_replica_count(s.cluster, s.parallelism, s.model);
    const std::int64_t table = oracle::replica_count_from_table(
        s.parallelism.dp, s.parallelism.experts_per_dp_rank,
        s.model.effective_total_experts());
    ok = ok && formula == 8 && table == 8;
  }
  report(12, ok,
         "params and active-expert FLOPs/token exactly granularity-invariant; expert replicas = 8"
         " via table oracle");
}

// --- criterion 13: infinite-bandwidth limit ----------------------------------
void criterion_limit() {
  Scenario s = passage_scenario(1);
  s.cluster.scale_up_link = {1e30, 0.0};
  s.cluster.scale_out_link = {1e30, 0.0};
  const StepBreakdown b =
      step_time(s.model, s.parallelism, s.cluster, s.workload, s.knobs);
  const double limit = b.compute * (1.0 + pp_bubble_factor(s.parallelism));
  const double err = rel_err(b.total, limit);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2e", err);
  report(13, err <= 1e-9,
         std::string("infinite-bandwidth limit: |total - compute*(1+bubble)|/limit = ") + buf);
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion_energy_totals();
  criterion_power_ratio();
  criterion_areas();
  criterion_switch_delta();
  criterion_param_count();
  const bool ok6 = criterion_fig8();
  const bool ok7 = criterion_fig9();
  criterion_check_exit(ok6 && ok7);
  criterion_oracle_grid();
  criterion_hierarchical_collapse();
  criterion_monotonicity();
  criterion_fine_graining();
  criterion_limit();
  std::printf("%d criteria failed\n", g_failures);
  return g_failures;
}
