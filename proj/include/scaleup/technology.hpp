// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Interconnect technology power and area models: pJ/bit stacks, areal
// bandwidth densities, package expansion, and switch power deltas for linear
// pluggable optics, 2.5D co-packaged optics, and a 3D optical interposer.
#pragma once

#include <map>
#include <optional>
#include <string>

namespace scaleup {

struct TechnologyProfile {
  std::string name;
  double in_package_pj_per_bit = 0.0;
  double off_package_pj_per_bit = 0.0;   // laser/module power kept off package
  double areal_density_gbps_per_sqmm = 0.0;  // beachfront-inclusive where applicable
  std::optional<double> module_quantum_bps;  // bandwidth per discrete module
  std::optional<double> module_area_sqmm;
  bool board_level = false;  // modules sit on the board, not the package

  double total_pj_per_bit() const { return in_package_pj_per_bit + off_package_pj_per_bit; }
  void validate() const;
};

// Built-in profiles for the reference design points.

/// 1.6T DR8 linear pluggable optics, 224G/lane host SerDes. A 3.2T pairing of
/// modules occupies 2389 sqmm of board area (1.3 Gb/s/sqmm).
TechnologyProfile lpo_profile();

/// 2.5D co-packaged optics with 2D integration, 224G host SerDes driving a
/// long beachfront (24.4 Gb/s/sqmm including beachfront expansion).
TechnologyProfile cpo_profile();

/// 3D optical interposer, 56G x 8-lambda short-reach SerDes. Fiber-attach
/// shoreline yields 160 Gb/s/sqmm of expansion area.
TechnologyProfile passage_profile();

std::map<std::string, TechnologyProfile> builtin_profiles();

struct LinkPower {
  double in_package_w = 0.0;
  double off_package_w = 0.0;
  double total_w = 0.0;
};

/// Power to drive `bandwidth_bps` of unidirectional I/O with the given
/// technology: component = bandwidth * pJ/bit * 1e-12.
LinkPower link_power(double bandwidth_bps, const TechnologyProfile& tech);

/// Area needed for the optics at the given bandwidth. Module-based
/// technologies round up to whole modules; integrated ones scale with the
/// areal density.
double optics_area_sqmm(double bandwidth_bps, const TechnologyProfile& tech);

/// Package growth needed to host the optics, as a percentage of the base
/// package. Board-level technologies expand the board, not the package.
double package_expansion_pct(double base_package_sqmm, double bandwidth_bps,
                             const TechnologyProfile& tech);

/// Power saved per switch package when replacing technology `a` with `b`.
double switch_power_delta_w(double switch_bandwidth_bps, const TechnologyProfile& a,
                            const TechnologyProfile& b);

/// Reference GPU package: four 26x33 mm reticles plus sixteen 13x11 mm HBM
/// stacks = 5720 sqmm.
double gpu_base_package_sqmm();

}  // namespace scaleup
