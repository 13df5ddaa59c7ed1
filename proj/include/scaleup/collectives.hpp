// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0
//
// Alpha-beta cost models for the collectives used in distributed training:
// ring all-gather / reduce-scatter / all-reduce and switch-based all-to-all,
// on a flat link or on a two-level (scale-up pod + scale-out) hierarchy.
#pragma once

#include <cstdint>
#include <vector>

namespace scaleup {

/// One class of interconnect as seen by a single GPU.
struct LinkClass {
  double per_gpu_bandwidth_bps = 0.0;  // unidirectional, bits/second
  double latency_alpha_s = 0.0;        // startup latency per transfer, seconds

  /// Transfer cost per byte, seconds. Full duplex; TX and RX do not contend.
  double beta_s_per_byte() const { return 8.0 / per_gpu_bandwidth_bps; }

  void validate() const;
};

struct Links {
  LinkClass scale_up;
  LinkClass scale_out;
};

/// Cost of one collective. For single-link collectives the identity
/// time = alpha_terms * alpha + bytes_on_wire * beta holds exactly; for
/// hierarchical results the fields are diagnostic sums over both link classes.
struct CollectiveCost {
  double time_s = 0.0;
  double alpha_terms = 0.0;
  double bytes_on_wire = 0.0;  // per GPU
};

/// Point-to-point transfer time: alpha + beta * n.
double hockney(double alpha_s, double beta_s_per_byte, double n_bytes);

/// Ring all-gather of a final buffer of n_total bytes over p ranks.
/// n_total must be divisible by p (ring chunk size).
CollectiveCost all_gather(std::int64_t p, std::int64_t n_total, const LinkClass& link);

/// Ring reduce-scatter; same cost shape as all-gather. Reduction arithmetic
/// time is ignored (communication-dominated regime).
CollectiveCost reduce_scatter(std::int64_t p, std::int64_t n_total, const LinkClass& link);

/// Ring all-reduce of n bytes per rank: reduce-scatter followed by all-gather,
/// time = 2(p-1)*alpha + 2*n*(p-1)/p*beta.
CollectiveCost all_reduce(std::int64_t p, double n_bytes, const LinkClass& link);

/// All-to-all on a full-bandwidth single-switch-layer domain. n_per_gpu is
/// the total payload each GPU holds (1/p of it stays local), all peers are
/// served in parallel and the TX port is the bottleneck:
/// time = alpha + n_per_gpu*(p-1)/p*beta.
CollectiveCost all_to_all(std::int64_t p, double n_per_gpu, const LinkClass& link);

enum class CollectiveKind { kAllGather, kReduceScatter, kAllReduce, kAllToAll };

/// Shape of a rank group as mapped onto scale-up domains.
struct GroupSpan {
  std::int64_t group_size = 1;
  std::int64_t domains = 1;              // scale-up domains the group touches
  std::int64_t max_ranks_per_domain = 1;
};

/// Two-phase-per-direction hierarchical all-reduce over a group spanning
/// several scale-up domains: intra-domain reduce-scatter, inter-domain
/// all-reduce over per-position counterparts, intra-domain all-gather.
/// Collapses exactly to the flat ring all-reduce when domains == 1.
CollectiveCost hierarchical_all_reduce(const GroupSpan& span, double n_bytes,
                                       const Links& links);

CollectiveCost hierarchical_all_gather(const GroupSpan& span, double n_total,
                                       const Links& links);

CollectiveCost hierarchical_reduce_scatter(const GroupSpan& span, double n_total,
                                           const Links& links);

/// Hierarchical all-to-all with the given fraction of peer traffic staying
/// inside the sender's scale-up domain. The two link classes are physically
/// disjoint, so the phases run in parallel:
/// time = max(alpha_up + f*nhat*beta_up, alpha_out + (1-f)*nhat*beta_out),
/// nhat = n_per_gpu*(p-1)/p. A phase with zero bytes is dropped entirely.
CollectiveCost hierarchical_all_to_all(std::int64_t p, double n_per_gpu,
                                       double in_domain_fraction, const Links& links);

/// Generic entry point: group members are identified by index, domain_of[i]
/// gives the scale-up domain of member i. For all-to-all the in-domain
/// fraction is the average same-domain peer share over members.
CollectiveCost hierarchical_collective(CollectiveKind kind,
                                       const std::vector<std::int64_t>& domain_of,
                                       double n_bytes, const Links& links);

/// Average fraction of a member's peers that share its domain.
double in_domain_peer_fraction(const std::vector<std::int64_t>& domain_of);

GroupSpan span_of(const std::vector<std::int64_t>& domain_of);

}  // namespace scaleup
