// Copyright (c) 2026 scaleup-model contributors
// SPDX-License-Identifier: Apache-2.0

#include "scaleup/collectives.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "scaleup/error.hpp"

namespace scaleup {

namespace {

void check_ranks(std::int64_t p, const char* op) {
  if (p < 1) {
    throw ValidationError(std::string(op) + ": rank count must be >= 1, got " +
                          std::to_string(p));
  }
}

// Ring all-gather / reduce-scatter cost without divisibility checks, so the
// hierarchical phases can operate on fractional shard sizes.
CollectiveCost ring_gather_cost(std::int64_t p, double n_total, const LinkClass& link) {
  if (p == 1) return {};
  CollectiveCost c;
  c.alpha_terms = static_cast<double>(p - 1);
  c.bytes_on_wire = n_total * static_cast<double>(p - 1) / static_cast<double>(p);
  c.time_s = c.alpha_terms * link.latency_alpha_s + c.bytes_on_wire * link.beta_s_per_byte();
  return c;
}

CollectiveCost ring_all_reduce_cost(std::int64_t p, double n, const LinkClass& link) {
  CollectiveCost rs = ring_gather_cost(p, n, link);
  CollectiveCost ag = ring_gather_cost(p, n, link);
  return {rs.time_s + ag.time_s, rs.alpha_terms + ag.alpha_terms,
          rs.bytes_on_wire + ag.bytes_on_wire};
}

CollectiveCost accumulate(const CollectiveCost& a, const CollectiveCost& b) {
  return {a.time_s + b.time_s, a.alpha_terms + b.alpha_terms,
          a.bytes_on_wire + b.bytes_on_wire};
}

}  // namespace

void LinkClass::validate() const {
  if (!(per_gpu_bandwidth_bps > 0.0)) {
    throw ValidationError("link: per_gpu_bandwidth must be > 0, got " +
                          std::to_string(per_gpu_bandwidth_bps));
  }
  if (latency_alpha_s < 0.0) {
    throw ValidationError("link: latency_alpha must be >= 0, got " +
                          std::to_string(latency_alpha_s));
  }
}

double hockney(double alpha_s, double beta_s_per_byte, double n_bytes) {
  if (alpha_s < 0.0 || beta_s_per_byte < 0.0 || n_bytes < 0.0) {
    throw ValidationError("hockney: negative input");
  }
  return alpha_s + beta_s_per_byte * n_bytes;
}

CollectiveCost all_gather(std::int64_t p, std::int64_t n_total, const LinkClass& link) {
  check_ranks(p, "all_gather");
  link.validate();
  if (n_total < 0) throw ValidationError("all_gather: n_total must be >= 0");
  if (n_total % p != 0) {
    throw ValidationError("all_gather: n_total=" + std::to_string(n_total) +
                          " not divisible by p=" + std::to_string(p));
  }
  return ring_gather_cost(p, static_cast<double>(n_total), link);
}

CollectiveCost reduce_scatter(std::int64_t p, std::int64_t n_total, const LinkClass& link) {
  check_ranks(p, "reduce_scatter");
  link.validate();
  if (n_total < 0) throw ValidationError("reduce_scatter: n_total must be >= 0");
  if (n_total % p != 0) {
    throw ValidationError("reduce_scatter: n_total=" + std::to_string(n_total) +
                          " not divisible by p=" + std::to_string(p));
  }
  return ring_gather_cost(p, static_cast<double>(n_total), link);
}

CollectiveCost all_reduce(std::int64_t p, double n_bytes, const LinkClass& link) {
  check_ranks(p, "all_reduce");
  link.validate();
  if (n_bytes < 0.0) throw ValidationError("all_reduce: n must be >= 0");
  return ring_all_reduce_cost(p, n_bytes, link);
}

CollectiveCost all_to_all(std::int64_t p, double n_per_gpu, const LinkClass& link) {
  check_ranks(p, "all_to_all");
  link.validate();
  if (n_per_gpu < 0.0) throw ValidationError("all_to_all: n_per_gpu must be >= 0");
  if (p == 1) return {};
  CollectiveCost c;
  c.alpha_terms = 1.0;
  c.bytes_on_wire = n_per_gpu * static_cast<double>(p - 1) / static_cast<double>(p);
  c.time_s = link.latency_alpha_s + c.bytes_on_wire * link.beta_s_per_byte();
  return c;
}

CollectiveCost hierarchical_all_reduce(const GroupSpan& span, double n_bytes,
                                       const Links& links) {
  if (span.group_size == 1) return {};
  if (span.domains == 1) {
    return ring_all_reduce_cost(span.group_size, n_bytes, links.scale_up);
  }
  // Phase 1: reduce-scatter inside each domain; phase 2: all-reduce of the
  // per-rank shard across domain counterparts; phase 3: all-gather back.
  const std::int64_t pl = span.max_ranks_per_domain;
  CollectiveCost c = ring_gather_cost(pl, n_bytes, links.scale_up);
  c = accumulate(c, ring_all_reduce_cost(span.domains, n_bytes / static_cast<double>(pl),
                                         links.scale_out));
  c = accumulate(c, ring_gather_cost(pl, n_bytes, links.scale_up));
  return c;
}

CollectiveCost hierarchical_all_gather(const GroupSpan& span, double n_total,
                                       const Links& links) {
  if (span.group_size == 1) return {};
  if (span.domains == 1) {
    return ring_gather_cost(span.group_size, n_total, links.scale_up);
  }
  // Phase 1: gather shards across domain counterparts (each rank ends with a
  // slice of n*d/p); phase 2: gather the slices inside each domain.
  const std::int64_t pl = span.max_ranks_per_domain;
  const double phase1_total =
      n_total * static_cast<double>(span.domains) / static_cast<double>(span.group_size);
  CollectiveCost c = ring_gather_cost(span.domains, phase1_total, links.scale_out);
  c = accumulate(c, ring_gather_cost(pl, n_total, links.scale_up));
  return c;
}

CollectiveCost hierarchical_reduce_scatter(const GroupSpan& span, double n_total,
                                           const Links& links) {
  if (span.group_size == 1) return {};
  if (span.domains == 1) {
    return ring_gather_cost(span.group_size, n_total, links.scale_up);
  }
  const std::int64_t pl = span.max_ranks_per_domain;
  CollectiveCost c = ring_gather_cost(pl, n_total, links.scale_up);
  c = accumulate(c, ring_gather_cost(span.domains, n_total / static_cast<double>(pl),
                                     links.scale_out));
  return c;
}

CollectiveCost hierarchical_all_to_all(std::int64_t p, double n_per_gpu,
                                       double in_domain_fraction, const Links& links) {
  check_ranks(p, "hierarchical_all_to_all");
  links.scale_up.validate();
  links.scale_out.validate();
  if (n_per_gpu < 0.0) throw ValidationError("hierarchical_all_to_all: n_per_gpu must be >= 0");
  if (in_domain_fraction < 0.0 || in_domain_fraction > 1.0) {
    throw ValidationError("hierarchical_all_to_all: in_domain_fraction must be in [0,1], got " +
                          std::to_string(in_domain_fraction));
  }
  if (p == 1) return {};
  if (in_domain_fraction >= 1.0) return all_to_all(p, n_per_gpu, links.scale_up);

  const double nhat = n_per_gpu * static_cast<double>(p - 1) / static_cast<double>(p);
  const double up_bytes = in_domain_fraction * nhat;
  const double out_bytes = (1.0 - in_domain_fraction) * nhat;
  CollectiveCost c;
  double up_time = 0.0;
  if (up_bytes > 0.0) {
    up_time = links.scale_up.latency_alpha_s + up_bytes * links.scale_up.beta_s_per_byte();
    c.alpha_terms += 1.0;
    c.bytes_on_wire += up_bytes;
  }
  double out_time = 0.0;
  if (out_bytes > 0.0) {
    out_time = links.scale_out.latency_alpha_s + out_bytes * links.scale_out.beta_s_per_byte();
    c.alpha_terms += 1.0;
    c.bytes_on_wire += out_bytes;
  }
  c.time_s = std::max(up_time, out_time);
  return c;
}

double in_domain_peer_fraction(const std::vector<std::int64_t>& domain_of) {
  const std::int64_t p = static_cast<std::int64_t>(domain_of.size());
  if (p <= 1) return 1.0;
  std::unordered_map<std::int64_t, std::int64_t> count;
  for (std::int64_t d : domain_of) ++count[d];
  double in_peers = 0.0;
  for (std::int64_t d : domain_of) in_peers += static_cast<double>(count[d] - 1);
  return in_peers / (static_cast<double>(p) * static_cast<double>(p - 1));
}

GroupSpan span_of(const std::vector<std::int64_t>& domain_of) {
  if (domain_of.empty()) throw ValidationError("hierarchical_collective: empty group");
  std::unordered_map<std::int64_t, std::int64_t> count;
  for (std::int64_t d : domain_of) ++count[d];
  GroupSpan s;
  s.group_size = static_cast<std::int64_t>(domain_of.size());
  s.domains = static_cast<std::int64_t>(count.size());
  s.max_ranks_per_domain = 0;
  for (const auto& [d, n] : count) s.max_ranks_per_domain = std::max(s.max_ranks_per_domain, n);
  return s;
}

CollectiveCost hierarchical_collective(CollectiveKind kind,
                                       const std::vector<std::int64_t>& domain_of,
                                       double n_bytes, const Links& links) {
  const GroupSpan span = span_of(domain_of);
  links.scale_up.validate();
  links.scale_out.validate();
  switch (kind) {
    case CollectiveKind::kAllGather:
      return hierarchical_all_gather(span, n_bytes, links);
    case CollectiveKind::kReduceScatter:
      return hierarchical_reduce_scatter(span, n_bytes, links);
    case CollectiveKind::kAllReduce:
      return hierarchical_all_reduce(span, n_bytes, links);
    case CollectiveKind::kAllToAll:
      if (span.domains == 1) return all_to_all(span.group_size, n_bytes, links.scale_up);
      return hierarchical_all_to_all(span.group_size, n_bytes,
                                     in_domain_peer_fraction(domain_of), links);
  }
  throw ValidationError("hierarchical_collective: unknown kind");
}

}  // namespace scaleup
