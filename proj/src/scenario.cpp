// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "scaleup/error.hpp"

namespace scaleup {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& context) {
  if (!j.is_object()) {
    throw ValidationError(context + ": expected an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (allowed.find(key) == allowed.end()) {
      throw ValidationError(context + ": unknown key \"" + key + "\"");
    }
  }
}

std::int64_t get_count(const json& j, const std::string& key, const std::string& context) {
  const json& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_unsigned()) return static_cast<std::int64_t>(v.get<std::uint64_t>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9.0e18) return static_cast<std::int64_t>(d);
  }
  throw ValidationError(context + "." + key + ": expected an integer count");
}

std::int64_t get_count_or(const json& j, const std::string& key, std::int64_t fallback,
                          const std::string& context) {
  if (!j.contains(key)) return fallback;
  return get_count(j, key, context);
}

double get_number(const json& j, const std::string& key, const std::string& context) {
  const json& v = j.at(key);
  if (!v.is_number()) throw ValidationError(context + "." + key + ": expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback,
                     const std::string& context) {
  if (!j.contains(key)) return fallback;
  return get_number(j, key, context);
}

void require_key(const json& j, const std::string& key, const std::string& context) {
  if (!j.contains(key)) throw ValidationError(context + ": missing required key \"" + key + "\"");
}

// Table-derived startup latencies: the conservative end of the scale-up class
// and the near end of the scale-out class.
constexpr double kDefaultAlphaScaleUp = 250e-9;
constexpr double kDefaultAlphaScaleOut = 2e-6;

LinkClass link_from_json(const json& j, double default_alpha, const std::string& context) {
  reject_unknown_keys(j, {"per_gpu_bandwidth", "latency_alpha"}, context);
  require_key(j, "per_gpu_bandwidth", context);
  LinkClass l;
  l.per_gpu_bandwidth_bps = get_number(j, "per_gpu_bandwidth", context);
  l.latency_alpha_s = get_number_or(j, "latency_alpha", default_alpha, context);
  return l;
}

json link_to_json(const LinkClass& l) {
  return json{{"per_gpu_bandwidth", l.per_gpu_bandwidth_bps},
              {"latency_alpha", l.latency_alpha_s}};
}

}  // namespace

void Scenario::validate() const {
  model.validate();
  workload.validate();
  parallelism.validate();
  cluster.validate();
  knobs.validate();
  if (workload.seq_len != model.seq_len) {
    throw ValidationError("workload.seq_len=" + std::to_string(workload.seq_len) +
                          " differs from model.seq_len=" + std::to_string(model.seq_len));
  }
  for (const auto& [name, tech] : technologies) tech.validate();
  // Placement and token divisibility checks so every invariant fails at load.
  (void)build_placement(cluster, parallelism, model);
  (void)comm_volumes(model, parallelism, workload);
}

Scenario scenario_from_json(const json& j) {
  reject_unknown_keys(j, {"id", "model", "workload", "parallelism", "cluster", "knobs",
                          "technologies"},
                      "scenario");
  for (const char* key : {"model", "workload", "parallelism", "cluster"}) {
    require_key(j, key, "scenario");
  }

  Scenario s;
  if (j.contains("id")) {
    if (!j.at("id").is_string()) throw ValidationError("scenario.id: expected a string");
    s.id = j.at("id").get<std::string>();
  }

  {
    const json& m = j.at("model");
    reject_unknown_keys(m,
                        {"layers", "d_model", "heads", "d_ff_base", "seq_len",
                         "total_experts_base", "active_experts_base", "granularity_m",
                         "bytes_per_param", "bytes_per_activation"},
                        "model");
    for (const char* key : {"layers", "d_model", "heads", "seq_len", "total_experts_base",
                            "active_experts_base"}) {
      require_key(m, key, "model");
    }
    s.model.layers = get_count(m, "layers", "model");
    s.model.d_model = get_count(m, "d_model", "model");
    s.model.heads = get_count(m, "heads", "model");
    s.model.d_ff_base = get_count_or(m, "d_ff_base", 4 * s.model.d_model, "model");
    s.model.seq_len = get_count(m, "seq_len", "model");
    s.model.total_experts_base = get_count(m, "total_experts_base", "model");
    s.model.active_experts_base = get_count(m, "active_experts_base", "model");
    s.model.granularity_m = get_count_or(m, "granularity_m", 1, "model");
    s.model.bytes_per_param = get_count_or(m, "bytes_per_param", 2, "model");
    s.model.bytes_per_activation = get_count_or(m, "bytes_per_activation", 2, "model");
  }

  {
    const json& w = j.at("workload");
    reject_unknown_keys(w, {"global_batch", "seq_len", "total_tokens"}, "workload");
    for (const char* key : {"global_batch", "seq_len", "total_tokens"}) {
      require_key(w, key, "workload");
    }
    s.workload.global_batch = get_count(w, "global_batch", "workload");
    s.workload.seq_len = get_count(w, "seq_len", "workload");
    s.workload.total_tokens = get_count(w, "total_tokens", "workload");
  }

  {
    const json& p = j.at("parallelism");
    reject_unknown_keys(p, {"tp", "dp", "pp", "experts_per_dp_rank", "microbatches"},
                        "parallelism");
    for (const char* key : {"tp", "dp", "pp"}) require_key(p, key, "parallelism");
    s.parallelism.tp = get_count(p, "tp", "parallelism");
    s.parallelism.dp = get_count(p, "dp", "parallelism");
    s.parallelism.pp = get_count(p, "pp", "parallelism");
    s.parallelism.experts_per_dp_rank = get_count_or(p, "experts_per_dp_rank", 1, "parallelism");
    if (s.parallelism.dp <= 0 || s.workload.global_batch % s.parallelism.dp != 0) {
      if (!p.contains("microbatches")) {
        throw ValidationError("parallelism.microbatches: no default available, global_batch=" +
                              std::to_string(s.workload.global_batch) + " not divisible by dp=" +
                              std::to_string(s.parallelism.dp));
      }
    }
    const std::int64_t default_microbatches =
        (s.parallelism.dp > 0 && s.workload.global_batch % s.parallelism.dp == 0)
            ? s.workload.global_batch / s.parallelism.dp
            : 1;
    s.parallelism.microbatches = get_count_or(p, "microbatches", default_microbatches,
                                              "parallelism");
  }

  {
    const json& c = j.at("cluster");
    reject_unknown_keys(c,
                        {"total_gpus", "pod_size", "scale_up_link", "scale_out_link",
                         "flops_per_gpu", "hbm_bandwidth"},
                        "cluster");
    for (const char* key : {"total_gpus", "pod_size", "scale_up_link", "scale_out_link",
                            "flops_per_gpu"}) {
      require_key(c, key, "cluster");
    }
    s.cluster.total_gpus = get_count(c, "total_gpus", "cluster");
    s.cluster.pod_size = get_count(c, "pod_size", "cluster");
    s.cluster.scale_up_link =
        link_from_json(c.at("scale_up_link"), kDefaultAlphaScaleUp, "cluster.scale_up_link");
    s.cluster.scale_out_link =
        link_from_json(c.at("scale_out_link"), kDefaultAlphaScaleOut, "cluster.scale_out_link");
    s.cluster.flops_per_gpu = get_number(c, "flops_per_gpu", "cluster");
    // Reference HBM4 design point: 26 TB/s per package.
    s.cluster.hbm_bandwidth = get_number_or(c, "hbm_bandwidth", 26e12, "cluster");
  }

  if (j.contains("knobs")) {
    const json& k = j.at("knobs");
    reject_unknown_keys(k,
                        {"efficiency", "overlap_fraction", "ep_spill", "alpha_scale_up",
                         "alpha_scale_out"},
                        "knobs");
    s.knobs.efficiency = get_number_or(k, "efficiency", 1.0, "knobs");
    s.knobs.overlap_fraction = get_number_or(k, "overlap_fraction", 0.0, "knobs");
    if (k.contains("ep_spill")) {
      const std::string mode = k.at("ep_spill").get<std::string>();
      if (mode == "hierarchical") {
        s.knobs.ep_spill = EpSpill::kHierarchical;
      } else if (mode == "scale_out_only") {
        s.knobs.ep_spill = EpSpill::kScaleOutOnly;
      } else {
        throw ValidationError("knobs.ep_spill: expected \"hierarchical\" or \"scale_out_only\","
                              " got \"" + mode + "\"");
      }
    }
    if (k.contains("alpha_scale_up")) {
      s.knobs.alpha_scale_up = get_number(k, "alpha_scale_up", "knobs");
    }
    if (k.contains("alpha_scale_out")) {
      s.knobs.alpha_scale_out = get_number(k, "alpha_scale_out", "knobs");
    }
  }

  if (j.contains("technologies")) {
    const json& arr = j.at("technologies");
    if (!arr.is_array()) throw ValidationError("technologies: expected an array");
    for (const json& tj : arr) {
      TechnologyProfile t = technology_from_json(tj);
      if (!s.technologies.emplace(t.name, t).second) {
        throw ValidationError("technologies: duplicate profile \"" + t.name + "\"");
      }
    }
  }

  s.validate();
  return s;
}

nlohmann::json read_scenario_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scenario file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("parse error in " + path + ": " + e.what());
  }
  return j;
}

Scenario load_scenario(const std::string& path) {
  Scenario s = scenario_from_json(read_scenario_json(path));
  if (s.id.empty()) {
    // Default id: file stem.
    std::string stem = path;
    const auto slash = stem.find_last_of('/');
    if (slash != std::string::npos) stem = stem.substr(slash + 1);
    const auto dot = stem.find_last_of('.');
    if (dot != std::string::npos) stem = stem.substr(0, dot);
    s.id = stem;
  }
  return s;
}

void apply_override(nlohmann::json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("override must look like key.path=value, got \"" + assignment + "\"");
  }
  std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  for (char& c : path) {
    if (c == '.') c = '/';
  }
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare strings (e.g. ep_spill=hierarchical)
  }
  j[json::json_pointer("/" + path)] = value;
}

nlohmann::json technology_to_json(const TechnologyProfile& t) {
  json j{{"name", t.name},
         {"in_package_pj_per_bit", t.in_package_pj_per_bit},
         {"off_package_pj_per_bit", t.off_package_pj_per_bit},
         {"areal_density_gbps_per_sqmm", t.areal_density_gbps_per_sqmm},
         {"board_level", t.board_level}};
  if (t.module_quantum_bps) j["module_quantum_bw"] = *t.module_quantum_bps;
  if (t.module_area_sqmm) j["module_area_sqmm"] = *t.module_area_sqmm;
  return j;
}

TechnologyProfile technology_from_json(const nlohmann::json& j) {
  reject_unknown_keys(j,
                      {"name", "in_package_pj_per_bit", "off_package_pj_per_bit",
                       "areal_density_gbps_per_sqmm", "module_quantum_bw", "module_area_sqmm",
                       "board_level"},
                      "technology");
  require_key(j, "name", "technology");
  TechnologyProfile t;
  t.name = j.at("name").get<std::string>();
  t.in_package_pj_per_bit = get_number(j, "in_package_pj_per_bit", "technology");
  t.off_package_pj_per_bit = get_number(j, "off_package_pj_per_bit", "technology");
  t.areal_density_gbps_per_sqmm =
      get_number_or(j, "areal_density_gbps_per_sqmm", 0.0, "technology");
  if (j.contains("module_quantum_bw")) {
    t.module_quantum_bps = get_number(j, "module_quantum_bw", "technology");
  }
  if (j.contains("module_area_sqmm")) {
    t.module_area_sqmm = get_number(j, "module_area_sqmm", "technology");
  }
  if (j.contains("board_level")) {
    if (!j.at("board_level").is_boolean()) {
      throw ValidationError("technology.board_level: expected a boolean");
    }
    t.board_level = j.at("board_level").get<bool>();
  }
  t.validate();
  return t;
}

nlohmann::json scenario_to_json(const Scenario& s) {
  json j;
  j["id"] = s.id;
  j["model"] = {{"layers", s.model.layers},
                {"d_model", s.model.d_model},
                {"heads", s.model.heads},
                {"d_ff_base", s.model.d_ff_base},
                {"seq_len", s.model.seq_len},
                {"total_experts_base", s.model.total_experts_base},
                {"active_experts_base", s.model.active_experts_base},
                {"granularity_m", s.model.granularity_m},
                {"bytes_per_param", s.model.bytes_per_param},
                {"bytes_per_activation", s.model.bytes_per_activation}};
  j["workload"] = {{"global_batch", s.workload.global_batch},
                   {"seq_len", s.workload.seq_len},
                   {"total_tokens", s.workload.total_tokens}};
  j["parallelism"] = {{"tp", s.parallelism.tp},
                      {"dp", s.parallelism.dp},
                      {"pp", s.parallelism.pp},
                      {"experts_per_dp_rank", s.parallelism.experts_per_dp_rank},
                      {"microbatches", s.parallelism.microbatches}};
  j["cluster"] = {{"total_gpus", s.cluster.total_gpus},
                  {"pod_size", s.cluster.pod_size},
                  {"scale_up_link", link_to_json(s.cluster.scale_up_link)},
                  {"scale_out_link", link_to_json(s.cluster.scale_out_link)},
                  {"flops_per_gpu", s.cluster.flops_per_gpu},
                  {"hbm_bandwidth", s.cluster.hbm_bandwidth}};
  json knobs{{"efficiency", s.knobs.efficiency},
             {"overlap_fraction", s.knobs.overlap_fraction},
             {"ep_spill", s.knobs.ep_spill == EpSpill::kHierarchical ? "hierarchical"
                                                                     : "scale_out_only"}};
  if (s.knobs.alpha_scale_up) knobs["alpha_scale_up"] = *s.knobs.alpha_scale_up;
  if (s.knobs.alpha_scale_out) knobs["alpha_scale_out"] = *s.knobs.alpha_scale_out;
  j["knobs"] = knobs;
  if (!s.technologies.empty()) {
    json arr = json::array();
    for (const auto& [name, tech] : s.technologies) arr.push_back(technology_to_json(tech));
    j["technologies"] = arr;
  }
  return j;
}

std::string describe(const Scenario& s) {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  out << "id=" << s.id << '\n';
  out << "model.layers=" << s.model.layers << '\n';
  out << "model.d_model=" << s.model.d_model << '\n';
  out << "model.heads=" << s.model.heads << '\n';
  out << "model.d_ff_base=" << s.model.d_ff_base << '\n';
  out << "model.seq_len=" << s.model.seq_len << '\n';
  out << "model.total_experts_base=" << s.model.total_experts_base << '\n';
  out << "model.active_experts_base=" << s.model.active_experts_base << '\n';
  out << "model.granularity_m=" << s.model.granularity_m << '\n';
  out << "model.bytes_per_param=" << s.model.bytes_per_param << '\n';
  out << "model.bytes_per_activation=" << s.model.bytes_per_activation << '\n';
  out << "workload.global_batch=" << s.workload.global_batch << '\n';
  out << "workload.seq_len=" << s.workload.seq_len << '\n';
  out << "workload.total_tokens=" << s.workload.total_tokens << '\n';
  out << "parallelism.tp=" << s.parallelism.tp << '\n';
  out << "parallelism.dp=" << s.parallelism.dp << '\n';
  out << "parallelism.pp=" << s.parallelism.pp << '\n';
  out << "parallelism.experts_per_dp_rank=" << s.parallelism.experts_per_dp_rank << '\n';
  out << "parallelism.microbatches=" << s.parallelism.microbatches << '\n';
  out << "cluster.total_gpus=" << s.cluster.total_gpus << '\n';
  out << "cluster.pod_size=" << s.cluster.pod_size << '\n';
  out << "cluster.scale_up_link.per_gpu_bandwidth=" << num(s.cluster.scale_up_link.per_gpu_bandwidth_bps)
      << '\n';
  out << "cluster.scale_up_link.latency_alpha=" << num(s.cluster.scale_up_link.latency_alpha_s)
      << '\n';
  out << "cluster.scale_out_link.per_gpu_bandwidth="
      << num(s.cluster.scale_out_link.per_gpu_bandwidth_bps) << '\n';
  out << "cluster.scale_out_link.latency_alpha=" << num(s.cluster.scale_out_link.latency_alpha_s)
      << '\n';
  out << "cluster.flops_per_gpu=" << num(s.cluster.flops_per_gpu) << '\n';
  out << "cluster.hbm_bandwidth=" << num(s.cluster.hbm_bandwidth) << '\n';
  out << "knobs.efficiency=" << num(s.knobs.efficiency) << '\n';
  out << "knobs.overlap_fraction=" << num(s.knobs.overlap_fraction) << '\n';
  out << "knobs.ep_spill="
      << (s.knobs.ep_spill == EpSpill::kHierarchical ? "hierarchical" : "scale_out_only") << '\n';
  return out.str();
}

}  // namespace scaleup
