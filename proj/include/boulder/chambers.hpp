#pragma once

// Hyperplane arrangements cut out by the linear forms an identity reads:
// collection of the forms, enumeration of the full-dimensional cells with
// exact interior witnesses, and seeded sampling of regular points.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "boulder/basis.hpp"
#include "boulder/error.hpp"
#include "boulder/exact.hpp"
#include "boulder/verifiers.hpp"
#include "boulder/workspace.hpp"

namespace boulder {

enum class Side { H, Lambda };

/// Linear forms X ↦ c·X on ambient coordinates, deduplicated up to positive
/// scaling. Opposite forms are kept apart since their signs differ.
class FormSet {
 public:
  FormSet(Side side, int rank) : side_(side), rank_(rank) {}

  Side side() const { return side_; }
  int rank() const { return rank_; }
  std::size_t size() const { return covectors_.size(); }
  bool empty() const { return covectors_.empty(); }
  const std::vector<QVector>& covectors() const { return covectors_; }

  /// Adds the coordinate form c; returns false when it is zero or already present.
  bool add_covector(QVector c) {
    if (static_cast<int>(c.size()) != rank_) throw Error(Errc::DimensionMismatch, "form rank");
    if (c.is_zero()) return false;
    const Rat* lead = nullptr;
    for (const auto& x : c)
      if (!x.is_zero()) { lead = &x; break; }
    c *= Rat(1) / lead->abs();
    if (!index_.try_emplace(c.coords(), covectors_.size()).second) return false;
    covectors_.push_back(std::move(c));
    return true;
  }

  /// Adds X ↦ ⟨v, X⟩.
  bool add_vector(const EuclideanBasis& basis, const QVector& v) { return add_covector(basis.covector(v)); }

  int sign_at(std::size_t i, const QVector& x) const { return dot(covectors_[i], x).sign(); }

  /// True when no form vanishes at x.
  bool regular(const QVector& x) const {
    return std::all_of(covectors_.begin(), covectors_.end(), [&](const QVector& c) { return !dot(c, x).is_zero(); });
  }

  std::vector<std::int8_t> signs_at(const QVector& x) const {
    std::vector<std::int8_t> s(size());
    for (std::size_t i = 0; i < size(); ++i) s[i] = static_cast<std::int8_t>(sign_at(i, x));
    return s;
  }

 private:
  Side side_;
  int rank_;
  std::vector<QVector> covectors_;
  std::map<std::vector<Rat>, std::size_t> index_;
};

struct Cell {
  std::vector<std::int8_t> signs;  // ±1 per form, in FormSet order
  QVector witness;                 // primitive integer point strictly inside
};

// ---------------------------------------------------------------------------
// Forms read by each identity

struct FormSets {
  FormSet h_forms;
  FormSet lambda_forms;
};

namespace detail {

struct FormCollector {
  const Workspace& ws;
  FormSets sets;

  void pair(Subset p, Subset q, bool h_elem, bool h_dual, bool l_elem, bool l_dual) {
    const ProjectedBasis& pb = ws.pair(p, q);
    pb.index_set().for_each([&](int i) {
      if (h_elem) sets.h_forms.add_vector(ws.basis(), pb.element(i));
      if (h_dual) sets.h_forms.add_vector(ws.basis(), pb.dual(i));
      if (l_elem) sets.lambda_forms.add_vector(ws.basis(), pb.element(i));
      if (l_dual) sets.lambda_forms.add_vector(ws.basis(), pb.dual(i));
    });
  }

  // φ and ψ read λ_p at H and μ_p at Λ.
  void frames(Subset p, Subset r, bool with_h) {
    for (const auto& f : ws.frames(p, r))
      f.ground().for_each([&](int i) {
        if (with_h) sets.h_forms.add_vector(ws.basis(), f.proj_element(i));
        sets.lambda_forms.add_vector(ws.basis(), f.proj_dual(i));
      });
  }
};

}  // namespace detail

/// Every linear form whose sign an indicator of the identity reads, split
/// into forms read at H and forms read at Λ (Λ1, Λ2). The scope follows the
/// same rules as verify().
inline FormSets collect_forms(const Workspace& ws, IdentityId id, const Params& prm) {
  detail::FormCollector c{ws, {FormSet(Side::H, ws.rank()), FormSet(Side::Lambda, ws.rank())}};
  const auto upper = (id == IdentityId::L31_THETA || id == IdentityId::L31_THETA_HAT) ? (prm.Q ? prm.Q : prm.R) : prm.R;
  const auto pairs = [&] {
    if (id == IdentityId::BOULDER_21)
      return std::vector{std::pair{prm.P.value_or(Subset()), prm.R.value_or(ws.full())}};
    return pairs_in_scope(ws, prm.P, upper);
  }();

  switch (id) {
    case IdentityId::L31_THETA:
      for (auto [p, q] : pairs) c.pair(p, q, true, false, false, true);
      break;
    case IdentityId::L31_THETA_HAT:
      for (auto [p, q] : pairs) c.pair(p, q, false, true, true, false);
      break;
    case IdentityId::L32:
    case IdentityId::L33_EQ2:
      for (auto [p, r] : pairs) c.pair(p, r, true, true, false, false);
      break;
    case IdentityId::L33_EQ1:
    case IdentityId::P34:
    case IdentityId::C35:
      for_each_nested_pair(ws.full(), [&](Subset p, Subset q) { c.pair(p, q, true, true, true, true); });
      break;
    case IdentityId::C36:
      for (auto [p, r] : pairs) {
        c.pair(p, r, false, false, true, false);
        for_each_between(p, r, [&](Subset q) {
          c.pair(p, q, false, true, true, false);
          c.pair(q, r, true, false, false, false);
        });
      }
      break;
    case IdentityId::STAR_RECURSION:
    case IdentityId::STARSTAR_SIGNS: {
      const bool with_h = id == IdentityId::STAR_RECURSION;
      for (auto [p, r] : pairs) {
        if (p == r) continue;
        for_each_between(p, r, [&](Subset q) {
          if (q == r) return;
          if (q != p) c.frames(p, q, with_h);
          c.pair(q, r, with_h, false, false, true);
        });
        c.frames(p, r, with_h);
      }
      break;
    }
    case IdentityId::P41:
      for (auto [p, r] : pairs) {
        c.frames(p, r, true);
        c.pair(p, r, false, true, true, false);
      }
      break;
    case IdentityId::BOULDER_21:
      for (auto [p, r] : pairs) {
        c.frames(p, r, true);
        c.pair(p, r, false, false, true, false);
      }
      break;
  }
  return std::move(c.sets);
}

// ---------------------------------------------------------------------------
// Cell enumeration

namespace detail {

inline QVector canonical_hyperplane(const QVector& c) {
  QVector out = c;
  for (const auto& x : c)
    if (!x.is_zero()) {
      out *= Rat(1) / x;
      break;
    }
  return out;
}

// Keeps one representative per hyperplane (forms equal up to any nonzero scale).
inline std::vector<QVector> distinct_hyperplanes(const std::vector<QVector>& forms) {
  std::vector<QVector> out;
  std::map<std::vector<Rat>, bool> seen;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    if (seen.try_emplace(canonical_hyperplane(f).coords(), true).second) out.push_back(f);
  }
  return out;
}

/// One interior point per region of a central arrangement of pairwise
/// distinct hyperplanes in Q^dim, by deletion-restriction: adding hyperplane
/// f splits exactly the regions that meet f = 0, and those are the regions
/// of the arrangement restricted to f = 0. A point u found there is pushed
/// off the hyperplane by ±ε·f with ε small enough to keep every other sign.
inline std::vector<QVector> region_witnesses(const std::vector<QVector>& hyperplanes, std::size_t dim,
                                             std::size_t budget) {
  struct Region {
    std::vector<std::int8_t> signs;
    QVector witness;
  };
  std::vector<Region> regions{{{}, QVector::zeros(dim)}};

  for (std::size_t k = 0; k < hyperplanes.size(); ++k) {
    const QVector& f = hyperplanes[k];
    std::size_t pivot = 0;
    while (f[pivot].is_zero()) ++pivot;

    // Coordinates on f = 0: free coordinates y_t for every t != pivot.
    std::vector<QVector> restricted;
    restricted.reserve(k);
    for (std::size_t g = 0; g < k; ++g) {
      const QVector& h = hyperplanes[g];
      QVector r(dim - 1);
      for (std::size_t i = 0, t = 0; i < dim; ++i) {
        if (i == pivot) continue;
        r[t++] = h[i] - h[pivot] * f[i] / f[pivot];
      }
      restricted.push_back(std::move(r));
    }
    const std::vector<QVector> sub = region_witnesses(distinct_hyperplanes(restricted), dim - 1, budget);

    std::map<std::vector<std::int8_t>, std::size_t> lookup;
    for (std::size_t i = 0; i < regions.size(); ++i) lookup.emplace(regions[i].signs, i);

    std::vector<std::optional<QVector>> split(regions.size());
    for (const auto& y : sub) {
      QVector u(dim);
      Rat pivot_value = 0;
      for (std::size_t i = 0, t = 0; i < dim; ++i) {
        if (i == pivot) continue;
        u[i] = y[t];
        pivot_value -= y[t] * f[i] / f[pivot];
        ++t;
      }
      u[pivot] = pivot_value;
      std::vector<std::int8_t> s(k);
      for (std::size_t g = 0; g < k; ++g) s[g] = static_cast<std::int8_t>(dot(hyperplanes[g], u).sign());
      auto it = lookup.find(s);
      if (it == lookup.end()) throw std::logic_error("restricted region outside every cell");
      split[it->second] = std::move(u);
    }

    std::vector<Region> next;
    next.reserve(regions.size() + sub.size());
    for (std::size_t i = 0; i < regions.size(); ++i) {
      if (split[i]) {
        const QVector& u = *split[i];
        std::optional<Rat> eps;
        for (std::size_t g = 0; g < k; ++g) {
          const Rat gn = dot(hyperplanes[g], f);
          if (gn.is_zero()) continue;
          const Rat bound = dot(hyperplanes[g], u).abs() / (Rat(2) * gn.abs());
          if (!eps || bound < *eps) eps = bound;
        }
        const Rat e = eps.value_or(Rat(1));
        Region plus{regions[i].signs, u + e * f};
        Region minus{regions[i].signs, u - e * f};
        plus.signs.push_back(1);
        minus.signs.push_back(-1);
        next.push_back(std::move(plus));
        next.push_back(std::move(minus));
      } else {
        const int s = dot(f, regions[i].witness).sign();
        if (s == 0) throw std::logic_error("witness on a hyperplane it was not split by");
        regions[i].signs.push_back(static_cast<std::int8_t>(s));
        next.push_back(std::move(regions[i]));
      }
    }
    regions = std::move(next);
    if (regions.size() > budget)
      throw Error(Errc::CellBudgetExceeded, "more than " + std::to_string(budget) + " cells");
  }

  std::vector<QVector> out;
  out.reserve(regions.size());
  for (auto& r : regions) out.push_back(std::move(r.witness));
  return out;
}

}  // namespace detail

inline constexpr std::size_t kDefaultCellBudget = 2'000'000;

/// Every full-dimensional cell of the arrangement, once each, sorted by sign
/// vector, each with a primitive integer interior witness.
inline std::vector<Cell> enumerate_cells(const FormSet& fs, std::size_t budget = kDefaultCellBudget) {
  const auto dim = static_cast<std::size_t>(fs.rank());
  std::vector<Cell> cells;
  for (auto& w : detail::region_witnesses(detail::distinct_hyperplanes(fs.covectors()), dim, budget)) {
    QVector x = to_qvector(primitive_integer(w));
    cells.push_back({fs.signs_at(x), std::move(x)});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) { return a.signs < b.signs; });
  return cells;
}

/// Branch on the sign of each form in turn and prune infeasible branches with
/// feasible_witness. Exponential; kept as an independent cross-check.
inline std::vector<Cell> enumerate_cells_pruned(const FormSet& fs) {
  std::vector<Cell> out;
  StrictSystem sys{static_cast<std::size_t>(fs.rank()), {}};
  std::vector<std::int8_t> signs;
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == fs.size()) {
      auto w = feasible_witness(sys);
      QVector x = to_qvector(primitive_integer(*w));
      out.push_back({signs, std::move(x)});
      return;
    }
    for (int s : {1, -1}) {
      QVector c = fs.covectors()[k];
      if (s < 0) c = -c;
      sys.constraints.push_back({std::move(c), Relation::Positive});
      if (feasible_witness(sys)) {
        signs.push_back(static_cast<std::int8_t>(s));
        self(self, k + 1);
        signs.pop_back();
      }
      sys.constraints.pop_back();
    }
  };
  recurse(recurse, 0);
  std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return a.signs < b.signs; });
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

/// Deterministic stream of integer points in [-bound, bound]^rank on which no
/// form vanishes. Uses raw mt19937_64 output (reduced modulo the range) so
/// the stream does not depend on the standard library's distributions.
inline std::vector<QVector> sample_regular(const FormSet& fs, std::size_t count, std::uint64_t seed, long bound,
                                           std::size_t max_consecutive_rejections = 100'000) {
  if (count == 0) return {};
  if (bound < 1) throw Error(Errc::SamplingExhausted, "bound must be at least 1");
  std::mt19937_64 rng(seed);
  const auto range = static_cast<std::uint64_t>(2 * bound + 1);
  std::vector<QVector> out;
  std::size_t rejected = 0;
  while (out.size() < count) {
    QVector x(static_cast<std::size_t>(fs.rank()));
    for (auto i = 0u; i < x.size(); ++i) x[i] = Rat(static_cast<long>(rng() % range) - bound);
    if (fs.regular(x)) {
      out.push_back(std::move(x));
      rejected = 0;
    } else if (++rejected >= max_consecutive_rejections) {
      throw Error(Errc::SamplingExhausted, "no regular point after " + std::to_string(rejected) + " draws");
    }
  }
  return out;
}

}  // namespace boulder
