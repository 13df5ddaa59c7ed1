// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "scaleup/error.hpp"
#include "scaleup/presets.hpp"
#include "scaleup/technology.hpp"

namespace scaleup {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

unsigned thread_budget(std::size_t work_items) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("SCALEUP_MODEL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  if (work_items < n) n = static_cast<unsigned>(work_items);
  return n == 0 ? 1 : n;
}

}  // namespace

void CheckOutcome::require(bool condition, const std::string& message) {
  if (!condition) ok = false;
  messages.push_back(std::string(condition ? "PASS " : "FAIL ") + message);
}

ResultRow evaluate(const Scenario& s) {
  ResultRow r;
  r.id = s.id;
  r.step = step_time(s.model, s.parallelism, s.cluster, s.workload, s.knobs);
  r.steps = steps_for(s.workload);
  r.time_to_train_s = time_to_train(s.workload, r.step);
  r.normalized = 1.0;
  return r;
}

std::vector<ResultRow> evaluate_all(const std::vector<Scenario>& scenarios,
                                    const std::string& baseline_id) {
  std::vector<ResultRow> rows(scenarios.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= scenarios.size()) return;
      try {
        rows[i] = evaluate(scenarios[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const unsigned n = thread_budget(scenarios.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  const ResultRow* baseline = nullptr;
  for (const ResultRow& r : rows) {
    if (r.id == baseline_id) baseline = &r;
  }
  if (!baseline) {
    throw ValidationError("baseline id \"" + baseline_id + "\" not among the scenarios");
  }
  for (ResultRow& r : rows) r.normalized = r.time_to_train_s / baseline->time_to_train_s;
  return rows;
}

std::string results_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "id,compute_s,tp_comm_s,ep_comm_s,pp_bubble_s,dp_sync_s,step_total_s,steps,"
         "time_to_train_s,normalized\n";
  for (const ResultRow& r : rows) {
    out << r.id << ',' << fmt(r.step.compute) << ',' << fmt(r.step.tp_comm) << ','
        << fmt(r.step.ep_comm) << ',' << fmt(r.step.pp_bubble) << ',' << fmt(r.step.dp_sync)
        << ',' << fmt(r.step.total) << ',' << r.steps << ',' << fmt(r.time_to_train_s) << ','
        << fmt(r.normalized) << '\n';
  }
  return out.str();
}

std::string reproduce_table4(CheckOutcome* check) {
  std::ostringstream out;
  out << "technology,in_package_pj_per_bit,off_package_pj_per_bit,total_pj_per_bit\n";
  const TechnologyProfile profiles[] = {lpo_profile(), cpo_profile(), passage_profile()};
  for (const auto& t : profiles) {
    out << t.name << ',' << fmt4(t.in_package_pj_per_bit) << ','
        << fmt4(t.off_package_pj_per_bit) << ',' << fmt4(t.total_pj_per_bit()) << '\n';
  }
  if (check) {
    const double expected[] = {13.0, 12.0, 4.3};
    for (int i = 0; i < 3; ++i) {
      const double got = profiles[i].total_pj_per_bit();
      check->require(std::abs(got - expected[i]) < 1e-9,
                     "energy total " + profiles[i].name + " = " + fmt4(got) + " (expect " +
                         fmt4(expected[i]) + ")");
    }
  }
  return out.str();
}

std::string reproduce_fig7(CheckOutcome* check) {
  constexpr double kGpuBandwidth = 32e12;  // unidirectional scale-up I/O per GPU
  std::ostringstream out;
  out << "technology,in_package_w,off_package_w,total_w\n";
  const TechnologyProfile profiles[] = {lpo_profile(), cpo_profile(), passage_profile()};
  for (const auto& t : profiles) {
    const LinkPower p = link_power(kGpuBandwidth, t);
    out << t.name << ',' << fmt4(p.in_package_w) << ',' << fmt4(p.off_package_w) << ','
        << fmt4(p.total_w) << '\n';
  }
  if (check) {
    const double ratio = link_power(kGpuBandwidth, cpo_profile()).total_w /
                         link_power(kGpuBandwidth, passage_profile()).total_w;
    check->require(ratio >= 2.74 && ratio <= 2.84,
                   "cpo/passage GPU power ratio = " + fmt4(ratio) + " in [2.74, 2.84]");
  }
  return out.str();
}

std::string reproduce_fig8_area(CheckOutcome* check) {
  constexpr double kGpuBandwidth = 32e12;
  const double base = gpu_base_package_sqmm();
  std::ostringstream out;
  out << "technology,placement,optics_area_sqmm,base_package_sqmm,package_expansion_pct\n";
  const TechnologyProfile profiles[] = {lpo_profile(), cpo_profile(), passage_profile()};
  for (const auto& t : profiles) {
    const double area = optics_area_sqmm(kGpuBandwidth, t);
    const double pct = package_expansion_pct(base, kGpuBandwidth, t);
    out << t.name << ',' << (t.board_level ? "board" : "package") << ',' << fmt4(area) << ','
        << fmt4(base) << ',' << fmt4(pct) << '\n';
  }
  if (check) {
    const double lpo = optics_area_sqmm(kGpuBandwidth, lpo_profile());
    check->require(std::abs(lpo - 23890.0) < 1e-6 && lpo > 20000.0,
                   "lpo board area = " + fmt4(lpo) + " (expect 23890)");
    const double cpo = optics_area_sqmm(kGpuBandwidth, cpo_profile());
    check->require(cpo >= 1306.0 && cpo <= 1316.0,
                   "cpo optics area = " + fmt4(cpo) + " in [1306, 1316]");
    const double psg = optics_area_sqmm(kGpuBandwidth, passage_profile());
    check->require(std::abs(psg - 200.0) < 1e-9, "passage optics area = " + fmt4(psg) +
                                                     " (expect 200)");
    const double cpo_pct = package_expansion_pct(base, kGpuBandwidth, cpo_profile());
    check->require(cpo_pct >= 22.4 && cpo_pct <= 23.4,
                   "cpo package expansion = " + fmt4(cpo_pct) + "% in [22.4, 23.4]");
    const double psg_pct = package_expansion_pct(base, kGpuBandwidth, passage_profile());
    check->require(psg_pct >= 3.45 && psg_pct <= 3.55,
                   "passage package expansion = " + fmt4(psg_pct) + "% in [3.45, 3.55]");
    const double lpo_pct = package_expansion_pct(base, kGpuBandwidth, lpo_profile());
    check->require(lpo_pct == 0.0, "lpo package expansion = " + fmt4(lpo_pct) + "% (board-level)");
  }
  return out.str();
}

void check_fig8_rows(const std::vector<ResultRow>& rows, CheckOutcome& out) {
  // rows: passage config 1..4, then the same-radix alternative config 1..4.
  for (int c = 0; c < 4; ++c) {
    const double ratio = rows[4 + c].time_to_train_s / rows[c].time_to_train_s;
    const double mid = c < 2 ? 1.4 : 1.3;
    out.require(ratio >= mid * 0.8 && ratio <= mid * 1.2,
                "same-radix alternative/passage config" + std::to_string(c + 1) + " = " +
                    fmt4(ratio) + " in [" + fmt4(mid * 0.8) + ", " + fmt4(mid * 1.2) + "]");
  }
  const double p41 = rows[3].time_to_train_s / rows[0].time_to_train_s;
  out.require(p41 >= 1.00 && p41 <= 1.10,
              "passage config4/config1 = " + fmt4(p41) + " in [1.00, 1.10]");
}

void check_fig9_rows(const std::vector<ResultRow>& rows, CheckOutcome& out) {
  // rows: passage config 1..4, then the system-specific alternative config 1..4.
  double ratios[4];
  for (int c = 0; c < 4; ++c) {
    ratios[c] = rows[4 + c].time_to_train_s / rows[c].time_to_train_s;
  }
  out.require(ratios[0] >= 1.6 * 0.8 && ratios[0] <= 1.6 * 1.2,
              "system-radix alternative/passage config1 = " + fmt4(ratios[0]) +
                  " in [1.28, 1.92]");
  out.require(ratios[3] >= 2.7 * 0.8 && ratios[3] <= 2.7 * 1.2,
              "system-radix alternative/passage config4 = " + fmt4(ratios[3]) +
                  " in [2.16, 3.24]");
  out.require(ratios[0] < ratios[1] && ratios[1] < ratios[2] && ratios[2] < ratios[3],
              "alternative/passage ratio strictly increasing: " + fmt4(ratios[0]) + " < " +
                  fmt4(ratios[1]) + " < " + fmt4(ratios[2]) + " < " + fmt4(ratios[3]));
}

std::string reproduce_fig8(CheckOutcome* check) {
  const std::vector<ResultRow> rows = evaluate_all(fig8_grid(), "passage_config1");
  if (check) check_fig8_rows(rows, *check);
  return results_to_csv(rows);
}

std::string reproduce_fig9(CheckOutcome* check) {
  const std::vector<ResultRow> rows = evaluate_all(fig9_grid(), "passage_config1");
  if (check) {
    // The check gate covers both grids: the same-radix bands and the
    // system-specific bands must hold together.
    const std::vector<ResultRow> rows8 = evaluate_all(fig8_grid(), "passage_config1");
    check_fig8_rows(rows8, *check);
    check_fig9_rows(rows, *check);
  }
  return results_to_csv(rows);
}

std::vector<std::string> reproduce_targets() {
  return {"table4", "fig7", "fig8-area", "fig8", "fig9"};
}

std::string reproduce(const std::string& target, CheckOutcome* check) {
  if (target == "table4") return reproduce_table4(check);
  if (target == "fig7") return reproduce_fig7(check);
  if (target == "fig8-area") return reproduce_fig8_area(check);
  if (target == "fig8") return reproduce_fig8(check);
  if (target == "fig9") return reproduce_fig9(check);
  std::string msg = "unknown reproduce target \"" + target + "\"; available:";
  for (const auto& t : reproduce_targets()) msg += " " + t;
  throw ValidationError(msg);
}

}  // namespace scaleup
