#pragma once

// Subset-indexed matrices and one verifier per identity of the catalog.
//
// A verifier evaluates both sides of its identity at one point H (and the
// parameters Λ, Λ1, Λ2) as exact integers. The two sides are computed along
// different routes: the left side sums indicators over subsets or ordered
// partitions, the right side is the closed form.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "boulder/basis.hpp"
#include "boulder/error.hpp"
#include "boulder/exact.hpp"
#include "boulder/indicators.hpp"
#include "boulder/partitions.hpp"
#include "boulder/workspace.hpp"

namespace boulder {

// ---------------------------------------------------------------------------
// Subset matrices

/// Integer matrix with rows and columns indexed by the subsets of Δ0.
class SubsetMatrix {
 public:
  explicit SubsetMatrix(int rank) : rank_(rank), entries_(dim() * dim(), 0) {}

  static SubsetMatrix identity(int rank) {
    SubsetMatrix m(rank);
    for (std::size_t s = 0; s < m.dim(); ++s) m.entries_[s * m.dim() + s] = 1;
    return m;
  }

  int rank() const { return rank_; }
  std::size_t dim() const { return std::size_t{1} << rank_; }

  long long& at(Subset row, Subset col) { return entries_[row.bits() * dim() + col.bits()]; }
  long long at(Subset row, Subset col) const { return entries_[row.bits() * dim() + col.bits()]; }

  /// Zero outside nested pairs (row ⊆ col).
  bool upper_triangular() const {
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        if (entries_[r * dim() + c] != 0 && !Subset(static_cast<std::uint32_t>(r)).subset_of(
                                                Subset(static_cast<std::uint32_t>(c))))
          return false;
    return true;
  }

  bool operator==(const SubsetMatrix&) const = default;

 private:
  int rank_;
  std::vector<long long> entries_;
};

/// C(P, Q) = Σ_R A(P, R) B(R, Q) over every subset R of Δ0.
inline SubsetMatrix multiply(const SubsetMatrix& a, const SubsetMatrix& b) {
  if (a.rank() != b.rank()) throw Error(Errc::RankMismatch, "subset matrices of different rank");
  SubsetMatrix c(a.rank());
  const std::size_t n = a.dim();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = 0; r < n; ++r) {
      const long long x = a.at(Subset(static_cast<std::uint32_t>(p)), Subset(static_cast<std::uint32_t>(r)));
      if (x == 0) continue;
      for (std::size_t q = 0; q < n; ++q)
        c.at(Subset(static_cast<std::uint32_t>(p)), Subset(static_cast<std::uint32_t>(q))) +=
            x * b.at(Subset(static_cast<std::uint32_t>(r)), Subset(static_cast<std::uint32_t>(q)));
    }
  return c;
}

/// Calls f(P, R) for every nested pair P ⊆ R ⊆ upper.
template <class F>
void for_each_nested_pair(Subset upper, F&& f) {
  for_each_between(Subset(), upper, [&](Subset r) { for_each_between(Subset(), r, [&](Subset p) { f(p, r); }); });
}

inline constexpr int parity_sign(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

/// Entry (P, Q) = (-1)^{|P| + b_{P,Q}} θ_{P,Q}^Λ(H), zero unless P ⊆ Q.
template <class Eval>
SubsetMatrix theta_matrix(const Workspace& ws, const Eval& lam, const Eval& h) {
  SubsetMatrix m(ws.rank());
  for_each_nested_pair(ws.full(), [&](Subset p, Subset q) {
    const BasisSigns l = lam.pair(p, q);
    const Bit t = theta(l, h.pair(p, q));
    if (t) m.at(p, q) = parity_sign(p.size() + nonpositive_duals(l));
  });
  return m;
}

/// Entry (P, Q) = (-1)^{|P| + b̂_{P,Q}} θ̂_{P,Q}^Λ(H), zero unless P ⊆ Q.
template <class Eval>
SubsetMatrix theta_hat_matrix(const Workspace& ws, const Eval& lam, const Eval& h) {
  SubsetMatrix m(ws.rank());
  for_each_nested_pair(ws.full(), [&](Subset p, Subset q) {
    const BasisSigns l = lam.pair(p, q);
    const Bit t = theta_hat(l, h.pair(p, q));
    if (t) m.at(p, q) = parity_sign(p.size() + nonpositive_elements(l));
  });
  return m;
}

inline std::pair<SubsetMatrix, SubsetMatrix> signed_matrices(const Workspace& ws, const QVector& lambda,
                                                             const QVector& h) {
  const DirectEvaluator lam(ws, lambda);
  const DirectEvaluator at(ws, h);
  return {theta_matrix(ws, lam, at), theta_hat_matrix(ws, lam, at)};
}

// ---------------------------------------------------------------------------
// Catalog

enum class IdentityId {
  L31_THETA,
  L31_THETA_HAT,
  L32,
  L33_EQ1,
  L33_EQ2,
  P34,
  C35,
  C36,
  STAR_RECURSION,
  STARSTAR_SIGNS,
  P41,
  BOULDER_21,
};

inline constexpr std::array kAllIdentities = {
    IdentityId::L31_THETA, IdentityId::L31_THETA_HAT, IdentityId::L32,           IdentityId::L33_EQ1,
    IdentityId::L33_EQ2,   IdentityId::P34,           IdentityId::C35,           IdentityId::C36,
    IdentityId::STAR_RECURSION, IdentityId::STARSTAR_SIGNS, IdentityId::P41,     IdentityId::BOULDER_21,
};

constexpr std::string_view identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::L31_THETA: return "L31_THETA";
    case IdentityId::L31_THETA_HAT: return "L31_THETA_HAT";
    case IdentityId::L32: return "L32";
    case IdentityId::L33_EQ1: return "L33_EQ1";
    case IdentityId::L33_EQ2: return "L33_EQ2";
    case IdentityId::P34: return "P34";
    case IdentityId::C35: return "C35";
    case IdentityId::C36: return "C36";
    case IdentityId::STAR_RECURSION: return "STAR_RECURSION";
    case IdentityId::STARSTAR_SIGNS: return "STARSTAR_SIGNS";
    case IdentityId::P41: return "P41";
    case IdentityId::BOULDER_21: return "BOULDER_21";
  }
  return "?";
}

inline std::optional<IdentityId> parse_identity(std::string_view name) {
  for (IdentityId id : kAllIdentities)
    if (identity_name(id) == name) return id;
  return std::nullopt;
}

/// Parameters of a check. Unset subsets widen the scope: every nested pair
/// (or every P ⊆ R when only R is set). BOULDER_21 defaults to the ambient
/// pair (∅, Δ0). L33 treats an unset Λ1 / Λ2 as 0.
struct Params {
  std::optional<Subset> P;
  std::optional<Subset> Q;
  std::optional<Subset> R;
  std::optional<OrderedPartition> partition;
  std::optional<QVector> lambda;
  std::optional<QVector> lambda1;
  std::optional<QVector> lambda2;
  std::optional<QVector> h;
  bool strict_hypotheses = false;
};

struct Verdict {
  IdentityId identity;
  std::string label;
  std::optional<Subset> P, Q, R;
  std::optional<OrderedPartition> partition;
  long long lhs = 0;
  long long rhs = 0;
  bool pass = false;
  std::string hypothesis;  // L33 only: "satisfied" or "violated"
};

enum class Evaluation { Direct, Table };

/// Pairs (P, R) a check ranges over: the given pair, every P ⊆ R when only
/// R is set, and every nested pair (with the given P, if any) otherwise.
inline std::vector<std::pair<Subset, Subset>> pairs_in_scope(const Workspace& ws, std::optional<Subset> lower,
                                                             std::optional<Subset> upper) {
  std::vector<std::pair<Subset, Subset>> out;
  if (lower && upper) {
    require_nested(ws.basis(), *lower, *upper);
    out.emplace_back(*lower, *upper);
  } else if (upper) {
    require_nested(ws.basis(), Subset(), *upper);
    for_each_between(Subset(), *upper, [&](Subset p) { out.emplace_back(p, *upper); });
  } else {
    for_each_nested_pair(ws.full(), [&](Subset p, Subset r) {
      if (!lower || *lower == p) out.emplace_back(p, r);
    });
  }
  return out;
}

namespace detail {

// Locates the frame of a given partition; frames are stored in lexicographic
// block order, which is exactly the enumeration order.
inline const PartitionFrame& find_frame(const Workspace& ws, Subset lower, Subset upper,
                                        const OrderedPartition& p) {
  const auto& frames = ws.frames(lower, upper);
  auto it = std::lower_bound(frames.begin(), frames.end(), p, [](const PartitionFrame& f, const OrderedPartition& q) {
    return f.partition().blocks < q.blocks;
  });
  if (it == frames.end() || !(it->partition() == p))
    throw Error(Errc::GroundMismatch, "partition is not an ordered partition of Q∖P");
  return *it;
}

inline PartitionCounts partition_counts(const OrderedPartition& p, const BasisSigns& lam) {
  return partition_indicators(p, lam, lam).counts;
}

template <class Eval>
class Checker {
 public:
  Checker(IdentityId id, const Workspace& ws, const Params& prm) : id_(id), ws_(ws), prm_(prm) {}

  std::vector<Verdict> run() {
    switch (id_) {
      case IdentityId::L31_THETA: each_pair(prm_.Q ? prm_.Q : prm_.R, [&](Subset p, Subset q) { l31_theta(p, q); }); break;
      case IdentityId::L31_THETA_HAT: each_pair(prm_.Q ? prm_.Q : prm_.R, [&](Subset p, Subset q) { l31_theta_hat(p, q); }); break;
      case IdentityId::L32: each_pair(prm_.R, [&](Subset p, Subset r) { l32(p, r); }); break;
      case IdentityId::L33_EQ1: l33_eq1(); break;
      case IdentityId::L33_EQ2: each_pair(prm_.R, [&](Subset p, Subset r) { l33_eq2(p, r); }); break;
      case IdentityId::P34: p34(); break;
      case IdentityId::C35: c35(); break;
      case IdentityId::C36: each_pair(prm_.R, [&](Subset p, Subset r) { c36(p, r); }); break;
      case IdentityId::STAR_RECURSION: each_partition([&](Subset p, Subset r, const PartitionFrame& f) { star(p, r, f); }); break;
      case IdentityId::STARSTAR_SIGNS: each_partition([&](Subset p, Subset r, const PartitionFrame& f) { starstar(p, r, f); }); break;
      case IdentityId::P41: each_pair(prm_.R, [&](Subset p, Subset r) { p41(p, r); }); break;
      case IdentityId::BOULDER_21: boulder(prm_.P.value_or(Subset()), prm_.R.value_or(ws_.full())); break;
    }
    return std::move(out_);
  }

 private:
  // --- parameter plumbing

  const Eval& at_h() {
    if (!h_) {
      if (!prm_.h) throw Error(Errc::MissingParam, std::string(identity_name(id_)) + " needs H");
      h_.emplace(ws_, *prm_.h);
    }
    return *h_;
  }
  const Eval& at_lambda() {
    if (!lam_) {
      if (!prm_.lambda) throw Error(Errc::MissingParam, std::string(identity_name(id_)) + " needs Λ");
      lam_.emplace(ws_, *prm_.lambda);
    }
    return *lam_;
  }
  QVector lambda_i(const std::optional<QVector>& v) const {
    return v ? *v : QVector::zeros(static_cast<std::size_t>(ws_.rank()));
  }

  template <class F>
  void each_pair(std::optional<Subset> upper, F&& f) {
    for (auto [p, r] : pairs_in_scope(ws_, prm_.P, upper)) f(p, r);
  }

  // Partitions with at least two blocks, over the pairs in scope.
  template <class F>
  void each_partition(F&& f) {
    if (prm_.partition) {
      const Subset p = prm_.P.value_or(Subset());
      const Subset r = prm_.R.value_or(p | prm_.partition->ground);
      if (prm_.partition->block_count() < 2)
        throw Error(Errc::MissingParam, "recursion checks need a partition with at least two blocks");
      f(p, r, find_frame(ws_, p, r, *prm_.partition));
      return;
    }
    each_pair(prm_.R, [&](Subset p, Subset r) {
      for (const auto& frame : ws_.frames(p, r))
        if (frame.partition().block_count() >= 2) f(p, r, frame);
    });
  }

  Verdict& emit(std::string label, long long lhs, long long rhs) {
    Verdict v;
    v.identity = id_;
    v.label = std::move(label);
    v.lhs = lhs;
    v.rhs = rhs;
    v.pass = lhs == rhs;
    out_.push_back(std::move(v));
    return out_.back();
  }

  // --- θ and θ̂ as alternating sums of τ and τ̂

  void l31_theta(Subset p, Subset q) {
    const BasisSigns lam = at_lambda().pair(p, q);
    const long long lhs = theta(lam, at_h().pair(p, q));
    Subset p_lambda = p;
    lam.indices.for_each([&](int i) {
      if (lam.dual[i] <= 0) p_lambda = p_lambda.with(i);
    });
    long long rhs = 0;
    for_each_between(p_lambda, q, [&](Subset s) {
      rhs += parity_sign(s.size() - p_lambda.size()) * tau(at_h().pair(p, s));
    });
    auto& v = emit("theta", lhs, rhs);
    v.P = p;
    v.Q = q;
  }

  void l31_theta_hat(Subset p, Subset q) {
    const BasisSigns lam = at_lambda().pair(p, q);
    const long long lhs = theta_hat(lam, at_h().pair(p, q));
    Subset q_lambda = p;
    lam.indices.for_each([&](int i) {
      if (lam.element[i] > 0) q_lambda = q_lambda.with(i);
    });
    long long rhs = 0;
    for_each_between(p, q_lambda, [&](Subset s) {
      rhs += parity_sign(q_lambda.size() - s.size()) * tau_hat(at_h().pair(s, q));
    });
    auto& v = emit("theta_hat", lhs, rhs);
    v.P = p;
    v.Q = q;
  }

  // --- τ and τ̂ products

  void l32(Subset p, Subset r) {
    long long lhs = 0;
    for_each_between(p, r, [&](Subset q) {
      lhs += parity_sign(q.size() - p.size()) * tau(at_h().pair(p, q)) * tau_hat(at_h().pair(q, r));
    });
    auto& v = emit("tau*tau_hat", lhs, p == r ? 1 : 0);
    v.P = p;
    v.R = r;
  }

  void l33_eq2(Subset p, Subset r) {
    long long lhs = 0;
    for_each_between(p, r, [&](Subset q) {
      lhs += parity_sign(q.size() - p.size()) * tau_hat(at_h().pair(p, q)) * tau(at_h().pair(q, r));
    });
    auto& v = emit("tau_hat*tau", lhs, p == r ? 1 : 0);
    v.P = p;
    v.R = r;
    v.hypothesis = "satisfied";
  }

  // --- θ·θ̂ at two parameters

  bool l33_hypothesis(const QVector& lambda) const {
    if (lambda.is_zero()) return true;
    if (!ws_.basis().obtuse()) return false;
    const QVector cov = ws_.basis().covector(lambda);
    return std::all_of(cov.begin(), cov.end(), [](const Rat& x) { return x.sign() <= 0; });
  }

  void l33_eq1() {
    const QVector l1 = lambda_i(prm_.lambda1);
    const QVector l2 = lambda_i(prm_.lambda2);
    const bool ok = l33_hypothesis(l1) && l33_hypothesis(l2);
    if (!ok && prm_.strict_hypotheses)
      throw Error(Errc::HypothesisViolated, "Λi is neither 0 nor in the closed negative chamber of an obtuse basis");
    const Eval e1(ws_, l1), e2(ws_, l2);
    const SubsetMatrix th = theta_matrix(ws_, e1, at_h());
    const SubsetMatrix th_hat = theta_hat_matrix(ws_, e2, at_h());
    matrix_vs_identity("A", multiply(th, th_hat), ok ? "satisfied" : "violated");
    matrix_vs_identity("B", multiply(th_hat, th), ok ? "satisfied" : "violated");
  }

  void matrix_vs_identity(const std::string& label, const SubsetMatrix& m, const std::string& hypothesis = {}) {
    for_each_between(Subset(), ws_.full(), [&](Subset p) {
      for_each_between(Subset(), ws_.full(), [&](Subset r) {
        if (prm_.P && *prm_.P != p) return;
        if (prm_.R && *prm_.R != r) return;
        auto& v = emit(label, m.at(p, r), p == r ? 1 : 0);
        v.P = p;
        v.R = r;
        v.hypothesis = hypothesis;
      });
    });
  }

  // --- θ̂·θ at two parameters, general case

  void p34() {
    const Eval e1(ws_, lambda_i(prm_.lambda1));
    const Eval e2(ws_, lambda_i(prm_.lambda2));
    const SubsetMatrix b = multiply(theta_hat_matrix(ws_, e2, at_h()), theta_matrix(ws_, e1, at_h()));
    each_pair(prm_.R, [&](Subset p, Subset r) {
      Subset p_l1 = p, r_l2 = p;
      const BasisSigns s1 = e1.pair(p, r);
      const BasisSigns s2 = e2.pair(p, r);
      (r - p).for_each([&](int i) {
        if (s1.dual[i] <= 0) p_l1 = p_l1.with(i);
        if (s2.element[i] > 0) r_l2 = r_l2.with(i);
      });
      const long long rhs = (p_l1 == r_l2) ? parity_sign(p_l1.size() - p.size()) : 0;
      auto& v = emit("B", b.at(p, r), rhs);
      v.P = p;
      v.R = r;
    });
  }

  // --- θ·θ̂ at one parameter

  void c35() {
    const SubsetMatrix th = theta_matrix(ws_, at_lambda(), at_h());
    const SubsetMatrix th_hat = theta_hat_matrix(ws_, at_lambda(), at_h());
    matrix_vs_identity("theta*theta_hat", multiply(th, th_hat));
    matrix_vs_identity("theta_hat*theta", multiply(th_hat, th));
  }

  // --- dominance as a signed sum

  void c36(Subset p, Subset r) {
    long long lhs = 0;
    for_each_between(p, r, [&](Subset q) {
      const BasisSigns lam = at_lambda().pair(p, q);
      lhs += parity_sign(nonpositive_elements(lam)) * theta_hat(lam, at_h().pair(p, q)) * tau(at_h().pair(q, r));
    });
    auto& v = emit("sum", lhs, dominant(at_lambda().pair(p, r)));
    v.P = p;
    v.R = r;
  }

  // --- recursions relating a partition to its tail

  void star(Subset p, Subset r, const PartitionFrame& frame) {
    const OrderedPartition& part = frame.partition();
    const Subset q = r - part.blocks.front();
    const PartitionFrame& tail = find_frame(ws_, p, q, part.tail());
    const auto ind = partition_indicators(part, at_lambda().frame(frame), at_h().frame(frame));
    const auto tail_ind = partition_indicators(tail.partition(), at_lambda().frame(tail), at_h().frame(tail));
    const Bit th = theta(at_lambda().pair(q, r), at_h().pair(q, r));
    const Bit t = tau(at_h().pair(q, r));
    for (auto [label, lhs, rhs] : {std::tuple{"phi", ind.phi, th * tail_ind.phi},
                                   std::tuple{"psi", ind.psi, t * tail_ind.phi}}) {
      auto& v = emit(label, lhs, rhs);
      v.P = p;
      v.Q = q;
      v.R = r;
      v.partition = part;
    }
  }

  void starstar(Subset p, Subset r, const PartitionFrame& frame) {
    const OrderedPartition& part = frame.partition();
    const Subset q = r - part.blocks.front();
    const PartitionFrame& tail = find_frame(ws_, p, q, part.tail());
    const PartitionCounts c = partition_counts(part, at_lambda().frame(frame));
    const PartitionCounts ct = partition_counts(tail.partition(), at_lambda().frame(tail));
    const int b_qr = nonpositive_duals(at_lambda().pair(q, r));
    const int a_qr = (r - q).size();
    for (auto [label, lhs, rhs] : {std::tuple{"b", c.b, b_qr + ct.b},
                                   std::tuple{"alpha", c.alpha, ct.alpha + a_qr + 1 + b_qr}}) {
      auto& v = emit(label, lhs, rhs);
      v.P = p;
      v.Q = q;
      v.R = r;
      v.partition = part;
    }
  }

  // --- alternating sums over ordered partitions

  long long alternating_phi_sum(Subset p, Subset r) {
    if (p == r) return 1;  // the empty partition of the empty set
    long long sum = 0;
    for (const auto& frame : ws_.frames(p, r)) {
      const auto ind = partition_indicators(frame.partition(), at_lambda().frame(frame), at_h().frame(frame));
      sum += parity_sign(ind.counts.alpha) * ind.phi;
    }
    return sum;
  }

  void p41(Subset p, Subset r) {
    const BasisSigns lam = at_lambda().pair(p, r);
    const long long rhs = parity_sign(nonpositive_elements(lam)) * theta_hat(lam, at_h().pair(p, r));
    auto& v = emit("sum", alternating_phi_sum(p, r), rhs);
    v.P = p;
    v.R = r;
  }

  void boulder(Subset p, Subset r) {
    require_nested(ws_.basis(), p, r);
    if (p == r) throw Error(Errc::EmptyGroundSet, "the Boulder identity needs a non-empty basis");
    long long lhs = 0, rhs = dominant(at_lambda().pair(p, r));
    for (const auto& frame : ws_.frames(p, r)) {
      const auto ind = partition_indicators(frame.partition(), at_lambda().frame(frame), at_h().frame(frame));
      lhs += parity_sign(ind.counts.alpha) * ind.phi;
      rhs += parity_sign(ind.counts.beta) * ind.psi;
    }
    auto& v = emit("boulder", lhs, rhs);
    v.P = p;
    v.R = r;
  }

  IdentityId id_;
  const Workspace& ws_;
  const Params& prm_;
  std::optional<Eval> h_;
  std::optional<Eval> lam_;
  std::vector<Verdict> out_;
};

}  // namespace detail

/// Evaluates the identity at the given parameters. Returns one verdict per
/// checked equation (per pair, matrix entry or partition in scope).
inline std::vector<Verdict> verify(IdentityId id, const Workspace& ws, const Params& prm,
                                   Evaluation mode = Evaluation::Direct) {
  if (mode == Evaluation::Table) return detail::Checker<TableEvaluator>(id, ws, prm).run();
  return detail::Checker<DirectEvaluator>(id, ws, prm).run();
}

inline bool all_pass(const std::vector<Verdict>& vs) {
  return std::all_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.pass; });
}

}  // namespace boulder
