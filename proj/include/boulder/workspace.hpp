#pragma once

// Per-basis caches (projected bases, partition frames, tabulated forms) and
// the two ways of reading sign snapshots at a point.
//
// Every form any indicator reads is either an element of some Δ_S^T, which
// only depends on (S, i), or a dual of some Δ_S^T, which only depends on
// (T, i). FormTable stores these n·2^n forms once so that a point can be
// classified with one integer dot product per form.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "boulder/basis.hpp"
#include "boulder/exact.hpp"
#include "boulder/indicators.hpp"
#include "boulder/partitions.hpp"

namespace boulder {

enum class FormKind { Element, Dual };

struct FormKey {
  FormKind kind;
  Subset subset;  // S for an element (i ∉ S), T for a dual (i ∈ T)
  int index;

  bool operator==(const FormKey&) const = default;
  auto operator<=>(const FormKey&) const = default;
};

class FormTable {
 public:
  FormTable() = default;

  FormTable(const EuclideanBasis& basis) : rank_(basis.rank()) {
    const std::size_t slots = (std::size_t{1} << rank_) * static_cast<std::size_t>(rank_);
    vectors_[0].resize(slots);
    vectors_[1].resize(slots);
    covectors_[0].resize(slots);
    covectors_[1].resize(slots);
    const Subset full = Subset::full(rank_);
    for_each_between(Subset(), full, [&](Subset s) {
      if (s != full) {
        const ProjectedBasis pb = projected_basis(basis, s, full);
        (full - s).for_each([&](int i) { store(basis, FormKind::Element, s, i, pb.element(i)); });
      }
      if (!s.empty()) {
        const ProjectedBasis pb = projected_basis(basis, Subset(), s);
        s.for_each([&](int i) { store(basis, FormKind::Dual, s, i, pb.dual(i)); });
      }
    });
  }

  int rank() const { return rank_; }

  /// The form as a vector of V0 (ambient coordinates).
  const QVector& vector(const FormKey& k) const { return vectors_[kind(k)][slot(k)]; }
  /// Primitive integer coefficients c with ⟨form, X⟩ = (positive) · c·X.
  const std::vector<mpz_class>& covector(const FormKey& k) const { return covectors_[kind(k)][slot(k)]; }

  bool defined(const FormKey& k) const {
    return k.kind == FormKind::Element ? !k.subset.contains(k.index) : k.subset.contains(k.index);
  }

 private:
  static int kind(const FormKey& k) { return k.kind == FormKind::Element ? 0 : 1; }
  std::size_t slot(const FormKey& k) const {
    return static_cast<std::size_t>(k.subset.bits()) * static_cast<std::size_t>(rank_) +
           static_cast<std::size_t>(k.index);
  }

  void store(const EuclideanBasis& basis, FormKind kd, Subset s, int i, const QVector& v) {
    const FormKey k{kd, s, i};
    vectors_[kind(k)][slot(k)] = v;
    covectors_[kind(k)][slot(k)] = primitive_integer(basis.covector(v));
  }

  int rank_ = 0;
  std::vector<QVector> vectors_[2];
  std::vector<std::vector<mpz_class>> covectors_[2];
};

/// One ambient basis with lazily filled, thread-safe caches.
class Workspace {
 public:
  explicit Workspace(EuclideanBasis basis, std::string name = {})
      : basis_(std::move(basis)), name_(std::move(name)) {}

  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const EuclideanBasis& basis() const { return basis_; }
  int rank() const { return basis_.rank(); }
  const std::string& name() const { return name_; }
  Subset full() const { return Subset::full(rank()); }

  const ProjectedBasis& pair(Subset lower, Subset upper) const {
    require_nested(basis_, lower, upper);
    std::lock_guard lock(mutex_);
    auto& slot = pairs_[{lower.bits(), upper.bits()}];
    if (!slot) slot = std::make_unique<ProjectedBasis>(projected_basis(basis_, lower, upper));
    return *slot;
  }

  /// Frames of every ordered partition of Δ_P^R, in enumeration order.
  /// Empty when P == R.
  const std::vector<PartitionFrame>& frames(Subset lower, Subset upper) const {
    const ProjectedBasis& base = pair(lower, upper);
    std::lock_guard lock(mutex_);
    auto& slot = frames_[{lower.bits(), upper.bits()}];
    if (!slot) {
      slot = std::make_unique<std::vector<PartitionFrame>>();
      if (lower != upper)
        for_each_ordered_partition(upper - lower, [&](const OrderedPartition& p) {
          slot->push_back(build_frame(basis_, base, p));
        });
    }
    return *slot;
  }

  const FormTable& table() const {
    std::lock_guard lock(mutex_);
    if (!table_) table_ = std::make_unique<FormTable>(basis_);
    return *table_;
  }

 private:
  EuclideanBasis basis_;
  std::string name_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<ProjectedBasis>> pairs_;
  mutable std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<std::vector<PartitionFrame>>> frames_;
  mutable std::unique_ptr<FormTable> table_;
};

/// Sign snapshots by exact inner products against the explicitly projected
/// vectors of each pair and frame.
class DirectEvaluator {
 public:
  DirectEvaluator(const Workspace& ws, QVector point)
      : ws_(&ws), point_(std::move(point)), covector_(ws.basis().covector(point_)) {}

  const QVector& point() const { return point_; }
  BasisSigns pair(Subset lower, Subset upper) const { return signs_of(ws_->pair(lower, upper), covector_); }
  BasisSigns frame(const PartitionFrame& f) const { return signs_of(f, covector_); }

 private:
  const Workspace* ws_;
  QVector point_;
  QVector covector_;
};

/// Sign snapshots read from the form table; all n·2^n signs are computed once.
class TableEvaluator {
 public:
  TableEvaluator(const Workspace& ws, QVector point) : point_(std::move(point)) {
    const FormTable& table = ws.table();
    rank_ = ws.rank();
    if (static_cast<int>(point_.size()) != rank_) throw Error(Errc::DimensionMismatch, "point rank");
    const std::vector<mpz_class> x = primitive_integer(point_);
    const std::size_t slots = (std::size_t{1} << rank_) * static_cast<std::size_t>(rank_);
    signs_[0].assign(slots, 0);
    signs_[1].assign(slots, 0);
    mpz_class acc;
    const Subset full = Subset::full(rank_);
    for_each_between(Subset(), full, [&](Subset s) {
      for (int i = 0; i < rank_; ++i) {
        for (int k = 0; k < 2; ++k) {
          const FormKey key{k == 0 ? FormKind::Element : FormKind::Dual, s, i};
          if (!table.defined(key)) continue;
          const auto& c = table.covector(key);
          acc = 0;
          for (int j = 0; j < rank_; ++j) acc += c[j] * x[j];
          signs_[k][slot(s, i)] = static_cast<std::int8_t>(sgn(acc));
        }
      }
    });
  }

  const QVector& point() const { return point_; }

  int sign(const FormKey& k) const { return signs_[k.kind == FormKind::Element ? 0 : 1][slot(k.subset, k.index)]; }

  /// Elements of Δ_P^Q depend on P only; duals depend on Q only.
  BasisSigns pair(Subset lower, Subset upper) const {
    BasisSigns s{upper - lower, {}, {}};
    s.indices.for_each([&](int i) {
      s.element[i] = signs_[0][slot(lower, i)];
      s.dual[i] = signs_[1][slot(upper, i)];
    });
    return s;
  }

  BasisSigns frame(const PartitionFrame& f) const {
    BasisSigns s{f.ground(), {}, {}};
    f.ground().for_each([&](int i) {
      s.element[i] = signs_[0][slot(f.element_subset(i), i)];
      s.dual[i] = signs_[1][slot(f.dual_subset(i), i)];
    });
    return s;
  }

 private:
  std::size_t slot(Subset s, int i) const {
    return static_cast<std::size_t>(s.bits()) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i);
  }

  QVector point_;
  int rank_ = 0;
  std::vector<std::int8_t> signs_[2];
};

}  // namespace boulder
