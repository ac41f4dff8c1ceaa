#pragma once

// Ordered partitions of an index set and the block-projected bases
// (the filtration frame) that an ordered partition of a basis induces.

#include <cstdint>
#include <string>
#include <vector>

#include "boulder/basis.hpp"
#include "boulder/error.hpp"
#include "boulder/exact.hpp"

namespace boulder {

/// Blocks F^1, ..., F^r: non-empty, pairwise disjoint, covering the ground set.
struct OrderedPartition {
  Subset ground;
  std::vector<Subset> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }

  /// E^v, the union of the first v blocks.
  Subset prefix(int v) const {
    Subset e;
    for (int u = 0; u < v; ++u) e = e | blocks[u];
    return e;
  }

  /// 0-based block index of element i.
  int block_of(int i) const {
    for (int u = 0; u < block_count(); ++u)
      if (blocks[u].contains(i)) return u;
    throw Error(Errc::GroundMismatch, "index " + std::to_string(i) + " not in the partition");
  }

  /// The partition obtained by dropping the first block.
  OrderedPartition tail() const {
    OrderedPartition t{ground - blocks.front(), {blocks.begin() + 1, blocks.end()}};
    return t;
  }

  bool valid() const {
    Subset seen;
    for (Subset b : blocks) {
      if (b.empty() || !(b & seen).empty()) return false;
      seen = seen | b;
    }
    return seen == ground;
  }

  bool operator==(const OrderedPartition&) const = default;
};

namespace detail {

template <class F>
void enumerate_from(Subset remaining, OrderedPartition& current, F& emit) {
  if (remaining.empty()) {
    emit(current);
    return;
  }
  for_each_between(Subset(), remaining, [&](Subset block) {
    if (block.empty()) return;
    current.blocks.push_back(block);
    enumerate_from(remaining - block, current, emit);
    current.blocks.pop_back();
  });
}

}  // namespace detail

/// Calls emit(partition) for every ordered partition of ground, in
/// lexicographic order of the block bitmask sequence.
template <class F>
void for_each_ordered_partition(Subset ground, F&& emit) {
  if (ground.empty()) throw Error(Errc::EmptyGroundSet, "cannot partition the empty set");
  OrderedPartition current{ground, {}};
  detail::enumerate_from(ground, current, emit);
}

inline std::vector<OrderedPartition> enumerate_ordered_partitions(Subset ground) {
  std::vector<OrderedPartition> out;
  for_each_ordered_partition(ground, [&](const OrderedPartition& p) { out.push_back(p); });
  return out;
}

/// Geometry induced by an ordered partition of a projected basis Δ_P^R.
///
/// With U^u the span of the duals of E^u and W^u = U^u ⊖ U^{u-1}, each
/// element λ in block u is projected onto W^u (giving λ_p) and so is its
/// dual (giving μ_p). Since the U-filtration only depends on which indices
/// have been consumed, λ_p coincides with the element of Δ_{S_u}^{S_{u-1}}
/// for S_v = R ∖ E^v, and μ_p with its dual; element_subset / dual_subset
/// record those S's so tabulated forms can be looked up by key.
class PartitionFrame {
 public:
  const OrderedPartition& partition() const { return partition_; }
  Subset lower() const { return lower_; }
  Subset upper() const { return upper_; }
  Subset ground() const { return partition_.ground; }

  const QVector& proj_element(int i) const { return elements_.at(slot(i)); }
  const QVector& proj_dual(int i) const { return duals_.at(slot(i)); }
  int block_of(int i) const { return block_of_.at(slot(i)); }

  /// S_u for the block u containing i (the element is taken orthogonally to span(S_u)).
  Subset element_subset(int i) const { return upper_ - partition_.prefix(block_of(i) + 1); }
  /// S_{u-1} for the block u containing i (the dual is a coweight inside span(S_{u-1})).
  Subset dual_subset(int i) const { return upper_ - partition_.prefix(block_of(i)); }

  /// Basis of W^u (0-based u): the projected elements of block u.
  std::vector<QVector> w_basis(int u) const {
    std::vector<QVector> out;
    partition_.blocks.at(u).for_each([&](int i) { out.push_back(proj_element(i)); });
    return out;
  }

 private:
  friend PartitionFrame build_frame(const EuclideanBasis&, const ProjectedBasis&, const OrderedPartition&);

  std::size_t slot(int i) const {
    if (!ground().contains(i)) throw Error(Errc::GroundMismatch, "index outside the partition ground");
    return static_cast<std::size_t>(Subset(ground().bits() & ((1u << i) - 1u)).size());
  }

  OrderedPartition partition_;
  Subset lower_;
  Subset upper_;
  std::vector<QVector> elements_;
  std::vector<QVector> duals_;
  std::vector<int> block_of_;
};

inline PartitionFrame build_frame(const EuclideanBasis& basis, const ProjectedBasis& base,
                                  const OrderedPartition& p) {
  if (p.ground != base.index_set())
    throw Error(Errc::GroundMismatch, "partition ground differs from the basis index set");
  if (!p.valid()) throw Error(Errc::GroundMismatch, "blocks do not form an ordered partition");

  PartitionFrame frame;
  frame.partition_ = p;
  frame.lower_ = base.lower();
  frame.upper_ = base.upper();
  const std::size_t n = static_cast<std::size_t>(p.ground.size());
  frame.elements_.resize(n);
  frame.duals_.resize(n);
  frame.block_of_.resize(n);

  std::vector<QVector> u_prev;  // spanning set of U^{u-1}
  for (int u = 0; u < p.block_count(); ++u) {
    std::vector<QVector> u_cur = u_prev;
    p.blocks[u].for_each([&](int i) { u_cur.push_back(base.dual(i)); });
    p.blocks[u].for_each([&](int i) {
      const std::size_t s = frame.slot(i);
      const QVector& lam = base.element(i);
      const QVector& mu = base.dual(i);
      frame.elements_[s] = project_onto(basis, u_cur, lam) - project_onto(basis, u_prev, lam);
      frame.duals_[s] = project_onto(basis, u_cur, mu) - project_onto(basis, u_prev, mu);
      frame.block_of_[s] = u;
    });
    u_prev = std::move(u_cur);
  }
  return frame;
}

/// Frame over the whole ambient basis (Δ = Δ0, the P = ∅ case).
inline PartitionFrame build_frame(const EuclideanBasis& basis, const OrderedPartition& p) {
  return build_frame(basis, projected_basis(basis, Subset(), Subset::full(basis.rank())), p);
}

}  // namespace boulder
