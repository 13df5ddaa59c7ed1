// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/technology.hpp"

#include <cmath>

#include "scaleup/error.hpp"

namespace scaleup {

void TechnologyProfile::validate() const {
  if (name.empty()) throw ValidationError("technology: name must not be empty");
  if (in_package_pj_per_bit < 0.0 || off_package_pj_per_bit < 0.0) {
    throw ValidationError("technology " + name + ": pJ/bit values must be >= 0");
  }
  if (!(areal_density_gbps_per_sqmm > 0.0) && !module_quantum_bps) {
    throw ValidationError("technology " + name +
                          ": needs areal_density > 0 or a module quantum");
  }
  if (module_quantum_bps.has_value() != module_area_sqmm.has_value()) {
    throw ValidationError("technology " + name +
                          ": module_quantum_bw and module_area must be set together");
  }
  if (module_quantum_bps && !(*module_quantum_bps > 0.0)) {
    throw ValidationError("technology " + name + ": module_quantum_bw must be > 0");
  }
  if (module_area_sqmm && !(*module_area_sqmm > 0.0)) {
    throw ValidationError("technology " + name + ": module_area must be > 0");
  }
}

TechnologyProfile lpo_profile() {
  TechnologyProfile t;
  t.name = "lpo";
  t.in_package_pj_per_bit = 5.0;   // 224G-LR host SerDes with DSP
  t.off_package_pj_per_bit = 8.0;  // DR8 module
  t.areal_density_gbps_per_sqmm = 1.3;
  t.module_quantum_bps = 3.2e12;
  t.module_area_sqmm = 2389.0;  // 105.8 mm x 22.58 mm form factor
  t.board_level = true;
  return t;
}

TechnologyProfile cpo_profile() {
  TechnologyProfile t;
  t.name = "cpo";
  t.in_package_pj_per_bit = 9.7;   // 4.7 PIC + 5 host SerDes
  t.off_package_pj_per_bit = 2.3;  // external laser
  t.areal_density_gbps_per_sqmm = 24.4;
  return t;
}

TechnologyProfile passage_profile() {
  TechnologyProfile t;
  t.name = "passage";
  t.in_package_pj_per_bit = 3.2;   // 1.2 PIC + 2 short-reach SerDes
  t.off_package_pj_per_bit = 1.1;  // external laser
  t.areal_density_gbps_per_sqmm = 160.0;  // 4 fibers/mm of fiber-attach shoreline
  return t;
}

std::map<std::string, TechnologyProfile> builtin_profiles() {
  std::map<std::string, TechnologyProfile> m;
  for (const auto& t : {lpo_profile(), cpo_profile(), passage_profile()}) m.emplace(t.name, t);
  return m;
}

LinkPower link_power(double bandwidth_bps, const TechnologyProfile& tech) {
  tech.validate();
  if (bandwidth_bps < 0.0) throw ValidationError("link_power: bandwidth must be >= 0");
  LinkPower p;
  p.in_package_w = bandwidth_bps * tech.in_package_pj_per_bit * 1e-12;
  p.off_package_w = bandwidth_bps * tech.off_package_pj_per_bit * 1e-12;
  p.total_w = bandwidth_bps * tech.total_pj_per_bit() * 1e-12;
  return p;
}

double optics_area_sqmm(double bandwidth_bps, const TechnologyProfile& tech) {
  tech.validate();
  if (bandwidth_bps < 0.0) throw ValidationError("optics_area: bandwidth must be >= 0");
  if (bandwidth_bps == 0.0) return 0.0;
  if (tech.module_quantum_bps) {
    const double modules = std::ceil(bandwidth_bps / *tech.module_quantum_bps - 1e-9);
    return modules * *tech.module_area_sqmm;
  }
  return (bandwidth_bps / 1e9) / tech.areal_density_gbps_per_sqmm;
}

double package_expansion_pct(double base_package_sqmm, double bandwidth_bps,
                             const TechnologyProfile& tech) {
  if (!(base_package_sqmm > 0.0)) {
    throw ValidationError("package_expansion: base_package must be > 0");
  }
  if (tech.board_level) return 0.0;
  return 100.0 * optics_area_sqmm(bandwidth_bps, tech) / base_package_sqmm;
}

double switch_power_delta_w(double switch_bandwidth_bps, const TechnologyProfile& a,
                            const TechnologyProfile& b) {
  a.validate();
  b.validate();
  if (switch_bandwidth_bps < 0.0) {
    throw ValidationError("switch_power_delta: bandwidth must be >= 0");
  }
  return switch_bandwidth_bps * (a.total_pj_per_bit() - b.total_pj_per_bit()) * 1e-12;
}

double gpu_base_package_sqmm() {
  return 4.0 * (26.0 * 33.0) + 16.0 * (13.0 * 11.0);
}

}  // namespace scaleup
