#pragma once

// Euclidean bases given by a rational Gram matrix, their dual bases, and the
// projected bases obtained from a nested pair of index subsets.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "boulder/error.hpp"
#include "boulder/exact.hpp"

namespace boulder {

inline constexpr int kMaxRank = 16;

/// A subset of the indices 0..rank-1 of the ambient basis, stored as a bitmask.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  static constexpr Subset full(int rank) { return Subset((rank >= 32) ? ~0u : ((1u << rank) - 1u)); }
  static constexpr Subset single(int i) { return Subset(1u << i); }
  static Subset of(std::initializer_list<int> indices) {
    Subset s;
    for (int i : indices) s.bits_ |= 1u << i;
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  constexpr Subset operator-(Subset o) const { return Subset(bits_ & ~o.bits_); }
  constexpr Subset with(int i) const { return Subset(bits_ | (1u << i)); }

  constexpr bool operator==(const Subset&) const = default;
  constexpr auto operator<=>(const Subset&) const = default;

  /// Member indices in increasing order.
  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint32_t b = bits_; b; b &= b - 1) f(std::countr_zero(b));
  }

 private:
  std::uint32_t bits_ = 0;
};

/// Calls f(S) for every S with lower ⊆ S ⊆ upper, in increasing bitmask order.
template <class F>
void for_each_between(Subset lower, Subset upper, F&& f) {
  const std::uint32_t free = upper.bits() & ~lower.bits();
  std::uint32_t t = 0;
  while (true) {
    f(Subset(lower.bits() | t));
    if (t == free) break;
    t = (t - free) & free;
  }
}

/// The ambient basis Δ0 of V0: Gram matrix of the basis vectors and the
/// coordinates of the dual basis (columns of the inverse Gram matrix).
class EuclideanBasis {
 public:
  int rank() const { return static_cast<int>(gram_.rows()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const QMatrix& gram() const { return gram_; }
  const QMatrix& dual_coords() const { return dual_coords_; }

  QVector element(int i) const { return QVector::unit(rank(), i); }
  QVector dual(int i) const { return dual_coords_.column(i); }

  /// G·x, so that inner(x, y) == dot(covector(x), y).
  QVector covector(const QVector& x) const {
    check(x);
    return gram_ * x;
  }

  Rat inner(const QVector& x, const QVector& y) const {
    check(x);
    check(y);
    return dot(gram_ * x, y);
  }

  /// Every pairwise inner product of distinct basis vectors is <= 0.
  bool obtuse() const {
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j)
        if (i != j && gram_(i, j).sign() > 0) return false;
    return true;
  }

 private:
  friend EuclideanBasis make_basis(QMatrix gram, std::vector<std::string> labels);

  void check(const QVector& x) const {
    if (static_cast<int>(x.size()) != rank())
      throw Error(Errc::DimensionMismatch,
                  "vector of length " + std::to_string(x.size()) + " in rank " + std::to_string(rank()));
  }

  std::vector<std::string> labels_;
  QMatrix gram_;
  QMatrix dual_coords_;
};

/// Validates symmetry and positive definiteness (every leading principal
/// minor > 0, exactly) and computes the dual basis. Empty labels default to
/// "a1", "a2", ...
inline EuclideanBasis make_basis(QMatrix gram, std::vector<std::string> labels = {}) {
  if (!gram.square() || gram.rows() == 0)
    throw Error(Errc::DimensionMismatch, "Gram matrix must be square and non-empty");
  const int n = static_cast<int>(gram.rows());
  if (n > kMaxRank) throw Error(Errc::InvalidRank, "rank above " + std::to_string(kMaxRank));
  if (!gram.symmetric()) throw Error(Errc::NotSymmetric, "Gram matrix is not symmetric");
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i + 1));
  if (static_cast<int>(labels.size()) != n)
    throw Error(Errc::DimensionMismatch, "label count differs from rank");

  // Elimination without row swaps: the k-th pivot is D_k / D_{k-1}.
  QMatrix work = gram;
  Rat minor = 1;
  for (int k = 0; k < n; ++k) {
    minor *= work(k, k);
    if (minor.sign() <= 0)
      throw Error(Errc::NotPositiveDefinite,
                  "leading minor " + std::to_string(k + 1) + " = " + minor.str());
    for (int r = k + 1; r < n; ++r) {
      const Rat f = work(r, k) / work(k, k);
      for (int c = k; c < n; ++c) work(r, c) -= f * work(k, c);
    }
  }

  EuclideanBasis b;
  b.labels_ = std::move(labels);
  b.dual_coords_ = inverse(gram);
  b.gram_ = std::move(gram);
  return b;
}

/// Orthogonal projection of x onto the span of the given linearly
/// independent vectors, by exact normal equations.
inline QVector project_onto(const EuclideanBasis& basis, const std::vector<QVector>& span, const QVector& x) {
  const std::size_t k = span.size();
  if (k == 0) return QVector::zeros(basis.rank());
  std::vector<QVector> cov;
  cov.reserve(k);
  for (const auto& v : span) cov.push_back(basis.covector(v));
  QMatrix normal(k, k);
  QVector rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) normal(i, j) = dot(cov[i], span[j]);
    rhs[i] = dot(cov[i], x);
  }
  const QVector c = solve(normal, rhs);
  QVector out = QVector::zeros(basis.rank());
  for (std::size_t i = 0; i < k; ++i) out += c[i] * span[i];
  return out;
}

/// Δ_P^Q: the vectors of Q∖P projected onto the orthogonal complement of
/// span(P), and their dual basis inside V_P^Q. Both are indexed by the
/// ambient index of the vector they come from, which is also the bijection D_P^Q.
class ProjectedBasis {
 public:
  Subset lower() const { return lower_; }
  Subset upper() const { return upper_; }
  Subset index_set() const { return upper_ - lower_; }
  int size() const { return index_set().size(); }

  const QVector& element(int i) const { return elements_.at(slot(i)); }
  const QVector& dual(int i) const { return duals_.at(slot(i)); }

  /// Orthogonal projection of x onto V_P^Q = span of the elements.
  QVector project(const EuclideanBasis& basis, const QVector& x) const {
    return project_onto(basis, elements_, x);
  }

 private:
  friend ProjectedBasis projected_basis(const EuclideanBasis&, Subset, Subset);

  std::size_t slot(int i) const {
    if (!index_set().contains(i)) throw Error(Errc::DimensionMismatch, "index outside Q∖P");
    return static_cast<std::size_t>(Subset(index_set().bits() & ((1u << i) - 1u)).size());
  }

  Subset lower_;
  Subset upper_;
  std::vector<QVector> elements_;
  std::vector<QVector> duals_;
};

inline void require_nested(const EuclideanBasis& basis, Subset lower, Subset upper) {
  if (!upper.subset_of(Subset::full(basis.rank())))
    throw Error(Errc::DimensionMismatch, "subset outside the ambient basis");
  if (!lower.subset_of(upper)) throw Error(Errc::NotNested, "P is not contained in Q");
}

inline ProjectedBasis projected_basis(const EuclideanBasis& basis, Subset lower, Subset upper) {
  require_nested(basis, lower, upper);
  std::vector<QVector> span_p;
  lower.for_each([&](int i) { span_p.push_back(basis.element(i)); });

  ProjectedBasis pb;
  pb.lower_ = lower;
  pb.upper_ = upper;
  (upper - lower).for_each([&](int i) {
    const QVector v = basis.element(i);
    pb.elements_.push_back(v - project_onto(basis, span_p, v));
  });
  (upper - lower).for_each([&](int i) {
    pb.duals_.push_back(project_onto(basis, pb.elements_, basis.dual(i)));
  });
  return pb;
}

/// P_Λ and Q^Λ relative to a nested pair (P, Q).
struct LambdaCut {
  Subset lower;
  Subset upper;
  Subset p_lambda;  // P ∪ {i : ⟨μ_i, Λ⟩ <= 0}
  Subset q_lambda;  // P ∪ {i : ⟨λ_i, Λ⟩ > 0}
};

inline LambdaCut lambda_cut(const EuclideanBasis& basis, const ProjectedBasis& pb, const QVector& lambda) {
  LambdaCut cut{pb.lower(), pb.upper(), pb.lower(), pb.lower()};
  pb.index_set().for_each([&](int i) {
    if (basis.inner(pb.dual(i), lambda).sign() <= 0) cut.p_lambda = cut.p_lambda.with(i);
    if (basis.inner(pb.element(i), lambda).sign() > 0) cut.q_lambda = cut.q_lambda.with(i);
  });
  return cut;
}

inline LambdaCut lambda_cut(const EuclideanBasis& basis, Subset lower, Subset upper, const QVector& lambda) {
  return lambda_cut(basis, projected_basis(basis, lower, upper), lambda);
}

}  // namespace boulder
