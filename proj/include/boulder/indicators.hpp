#pragma once

// Characteristic functions of cones (τ, τ̂, θ, θ̂, φ, ψ, d) and the sign and
// count bookkeeping attached to them (a, b, b̂, c, α, β, η, η̂).
//
// Every indicator only reads the sign of finitely many linear forms at the
// point H (and at the parameter Λ). BasisSigns is that sign snapshot for one
// projected basis or one partition frame; the functions below are written
// against it, so the same code serves exact evaluation and table lookups.

#include <array>
#include <cstdint>
#include <utility>

#include "boulder/basis.hpp"
#include "boulder/exact.hpp"
#include "boulder/partitions.hpp"

namespace boulder {

/// 0 or 1. Indicators are integers so they can be summed and multiplied.
using Bit = int;

/// Signs (-1, 0, +1) of ⟨element_i, X⟩ and ⟨dual_i, X⟩ for i in indices.
struct BasisSigns {
  Subset indices;
  std::array<std::int8_t, kMaxRank> element{};
  std::array<std::int8_t, kMaxRank> dual{};
};

namespace detail {

inline std::int8_t sign_of(const Rat& r) { return static_cast<std::int8_t>(r.sign()); }

template <class Pred>
Bit all_indices(Subset s, Pred pred) {
  for (std::uint32_t b = s.bits(); b; b &= b - 1)
    if (!pred(std::countr_zero(b))) return 0;
  return 1;
}

template <class Pred>
int count_indices(Subset s, Pred pred) {
  int n = 0;
  for (std::uint32_t b = s.bits(); b; b &= b - 1) n += pred(std::countr_zero(b)) ? 1 : 0;
  return n;
}

}  // namespace detail

// --- sign snapshots by exact evaluation -----------------------------------

/// `point_covector` is G·X for the point X.
inline BasisSigns signs_of(const ProjectedBasis& pb, const QVector& point_covector) {
  BasisSigns s{pb.index_set(), {}, {}};
  pb.index_set().for_each([&](int i) {
    s.element[i] = detail::sign_of(dot(pb.element(i), point_covector));
    s.dual[i] = detail::sign_of(dot(pb.dual(i), point_covector));
  });
  return s;
}

/// Signs of the block projections λ_p and μ_p.
inline BasisSigns signs_of(const PartitionFrame& frame, const QVector& point_covector) {
  BasisSigns s{frame.ground(), {}, {}};
  frame.ground().for_each([&](int i) {
    s.element[i] = detail::sign_of(dot(frame.proj_element(i), point_covector));
    s.dual[i] = detail::sign_of(dot(frame.proj_dual(i), point_covector));
  });
  return s;
}

// --- indicator kernels -------------------------------------------------------

/// τ: every element positive at H. Empty basis gives 1.
inline Bit tau(const BasisSigns& h) {
  return detail::all_indices(h.indices, [&](int i) { return h.element[i] > 0; });
}

/// τ̂: every dual positive at H.
inline Bit tau_hat(const BasisSigns& h) {
  return detail::all_indices(h.indices, [&](int i) { return h.dual[i] > 0; });
}

/// θ^Λ: λ(H) <= 0 where μ(Λ) > 0, and λ(H) > 0 otherwise.
inline Bit theta(const BasisSigns& lam, const BasisSigns& h) {
  return detail::all_indices(h.indices, [&](int i) {
    return lam.dual[i] > 0 ? h.element[i] <= 0 : h.element[i] > 0;
  });
}

/// θ̂^Λ: μ(H) <= 0 where λ(Λ) > 0, and μ(H) > 0 otherwise.
inline Bit theta_hat(const BasisSigns& lam, const BasisSigns& h) {
  return detail::all_indices(h.indices, [&](int i) {
    return lam.element[i] > 0 ? h.dual[i] <= 0 : h.dual[i] > 0;
  });
}

/// d(Λ): Λ lies in the open positive chamber of the basis.
inline Bit dominant(const BasisSigns& lam) {
  return detail::all_indices(lam.indices, [&](int i) { return lam.element[i] > 0; });
}

/// b: number of duals with μ(Λ) <= 0.
inline int nonpositive_duals(const BasisSigns& lam) {
  return detail::count_indices(lam.indices, [&](int i) { return lam.dual[i] <= 0; });
}

/// b̂: number of elements with λ(Λ) <= 0.
inline int nonpositive_elements(const BasisSigns& lam) {
  return detail::count_indices(lam.indices, [&](int i) { return lam.element[i] <= 0; });
}

struct SignCounts {
  int a = 0;        // |Q∖P|
  int b = 0;        // duals with μ(Λ) <= 0
  int b_hat = 0;    // elements with λ(Λ) <= 0
  int eta = 0;      // |P| + b
  int eta_hat = 0;  // |P| + b̂
};

inline SignCounts sign_counts(Subset lower, const BasisSigns& lam) {
  SignCounts c;
  c.a = lam.indices.size();
  c.b = nonpositive_duals(lam);
  c.b_hat = nonpositive_elements(lam);
  c.eta = lower.size() + c.b;
  c.eta_hat = lower.size() + c.b_hat;
  return c;
}

struct PartitionCounts {
  int b = 0;      // μ_p(Λ) <= 0
  int c = 0;      // ... and outside the first block
  int alpha = 0;  // b + Σ_u (a^u + 1)
  int beta = 0;   // 1 + c + Σ_{u>=2} (a^u + 1)
};

struct PartitionIndicators {
  Bit phi = 0;
  Bit psi = 0;
  PartitionCounts counts;
};

/// φ_p, ψ_p and the integers b, c, α, β of an ordered partition, read from
/// sign snapshots of its frame at Λ and at H.
inline PartitionIndicators partition_indicators(const OrderedPartition& p, const BasisSigns& lam,
                                                const BasisSigns& h) {
  PartitionIndicators out;
  const Subset first = p.blocks.front();
  auto theta_condition = [&](int i) { return lam.dual[i] > 0 ? h.element[i] <= 0 : h.element[i] > 0; };
  out.phi = detail::all_indices(p.ground, theta_condition);
  out.psi = detail::all_indices(first, [&](int i) { return h.element[i] > 0; }) *
            detail::all_indices(p.ground - first, theta_condition);

  out.counts.b = nonpositive_duals(lam);
  out.counts.c = detail::count_indices(p.ground - first, [&](int i) { return lam.dual[i] <= 0; });
  int blocks_sum = 0;
  for (Subset blk : p.blocks) blocks_sum += blk.size() + 1;
  out.counts.alpha = out.counts.b + blocks_sum;
  out.counts.beta = 1 + out.counts.c + blocks_sum - (first.size() + 1);
  return out;
}

// --- exact-evaluation entry points -------------------------------------------

struct TauPair {
  Bit tau = 0;
  Bit tau_hat = 0;
};

struct ThetaPair {
  Bit theta = 0;
  Bit theta_hat = 0;
};

inline TauPair tau_pair(const EuclideanBasis& basis, const ProjectedBasis& pb, const QVector& h) {
  const BasisSigns s = signs_of(pb, basis.covector(h));
  return {tau(s), tau_hat(s)};
}

inline ThetaPair theta_pair(const EuclideanBasis& basis, const ProjectedBasis& pb, const QVector& lambda,
                            const QVector& h) {
  const BasisSigns l = signs_of(pb, basis.covector(lambda));
  const BasisSigns s = signs_of(pb, basis.covector(h));
  return {theta(l, s), theta_hat(l, s)};
}

inline SignCounts sign_counts(const EuclideanBasis& basis, const ProjectedBasis& pb, const QVector& lambda) {
  return sign_counts(pb.lower(), signs_of(pb, basis.covector(lambda)));
}

inline Bit dominance(const EuclideanBasis& basis, const ProjectedBasis& pb, const QVector& lambda) {
  return dominant(signs_of(pb, basis.covector(lambda)));
}

inline PartitionIndicators partition_indicators(const EuclideanBasis& basis, const PartitionFrame& frame,
                                                const QVector& lambda, const QVector& h) {
  return partition_indicators(frame.partition(), signs_of(frame, basis.covector(lambda)),
                              signs_of(frame, basis.covector(h)));
}

}  // namespace boulder
