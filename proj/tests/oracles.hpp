#pragma once

// Independent reference computations used to cross-check the library.
// Nothing here calls the projection, frame, indicator or enumeration code
// under test; only exact arithmetic and basis construction are shared.

#include <map>
#include <set>
#include <vector>

#include "boulder/basis.hpp"
#include "boulder/exact.hpp"

namespace oracle {

using boulder::EuclideanBasis;
using boulder::QMatrix;
using boulder::QVector;
using boulder::Rat;
using boulder::Subset;

inline QMatrix submatrix(const QMatrix& m, const std::vector<int>& idx) {
  QMatrix out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = m(idx[a], idx[b]);
  return out;
}

/// The element of Δ_S^· at index i ∉ S: the dual basis of {μ_k : k ∉ S}
/// inside their span, from the inverse of the restricted inverse Gram matrix.
inline QVector element(const EuclideanBasis& b, Subset s, int i) {
  const auto out = (Subset::full(b.rank()) - s).indices();
  const QMatrix m = boulder::inverse(submatrix(b.dual_coords(), out));
  QVector v = QVector::zeros(b.rank());
  for (std::size_t a = 0; a < out.size(); ++a)
    if (out[a] == i)
      for (std::size_t k = 0; k < out.size(); ++k) v += m(a, k) * b.dual(out[k]);
  return v;
}

/// The coweight at index i ∈ T inside span(T), from the inverse of the
/// restricted Gram matrix.
inline QVector coweight(const EuclideanBasis& b, Subset t, int i) {
  const auto in = t.indices();
  const QMatrix m = boulder::inverse(submatrix(b.gram(), in));
  QVector v = QVector::zeros(b.rank());
  for (std::size_t a = 0; a < in.size(); ++a)
    if (in[a] == i)
      for (std::size_t k = 0; k < in.size(); ++k) v += m(a, k) * b.element(in[k]);
  return v;
}

inline int sgn(const EuclideanBasis& b, const QVector& x, const QVector& y) { return b.inner(x, y).sign(); }

// --- indicators straight from their definitions over Δ_P^Q ------------------

inline int tau(const EuclideanBasis& b, Subset p, Subset q, const QVector& h) {
  for (int i : (q - p).indices())
    if (sgn(b, element(b, p, i), h) <= 0) return 0;
  return 1;
}

inline int tau_hat(const EuclideanBasis& b, Subset p, Subset q, const QVector& h) {
  for (int i : (q - p).indices())
    if (sgn(b, coweight(b, q, i), h) <= 0) return 0;
  return 1;
}

inline int theta(const EuclideanBasis& b, Subset p, Subset q, const QVector& lam, const QVector& h) {
  for (int i : (q - p).indices()) {
    const bool pos = sgn(b, coweight(b, q, i), lam) > 0;
    const int s = sgn(b, element(b, p, i), h);
    if (pos ? s > 0 : s <= 0) return 0;
  }
  return 1;
}

inline int theta_hat(const EuclideanBasis& b, Subset p, Subset q, const QVector& lam, const QVector& h) {
  for (int i : (q - p).indices()) {
    const bool pos = sgn(b, element(b, p, i), lam) > 0;
    const int s = sgn(b, coweight(b, q, i), h);
    if (pos ? s > 0 : s <= 0) return 0;
  }
  return 1;
}

inline int count_nonpositive_duals(const EuclideanBasis& b, Subset p, Subset q, const QVector& lam) {
  int n = 0;
  for (int i : (q - p).indices()) n += sgn(b, coweight(b, q, i), lam) <= 0;
  return n;
}

inline int count_nonpositive_elements(const EuclideanBasis& b, Subset p, Subset q, const QVector& lam) {
  int n = 0;
  for (int i : (q - p).indices()) n += sgn(b, element(b, p, i), lam) <= 0;
  return n;
}

inline int sign_power(int e) { return e % 2 == 0 ? 1 : -1; }

// --- dense subset-lattice algebra --------------------------------------------

using Dense = std::vector<std::vector<long long>>;

inline Dense dense_multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// --- counting ----------------------------------------------------------------

inline long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Ordered Bell numbers by a(n) = Σ_{k>=1} C(n, k) a(n - k), a(0) = 1.
inline long long fubini(int n) {
  std::vector<long long> a(static_cast<std::size_t>(n) + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k) a[m] += binomial(m, k) * a[m - k];
  return a[n];
}

// --- brute force over integer grids --------------------------------------------

/// Integer points of [-box, box]^rank satisfying every constraint.
template <class Sys>
bool grid_feasible(const Sys& sys, long box) {
  const std::size_t n = sys.rank;
  std::vector<long> x(n, -box);
  while (true) {
    QVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Rat(x[i]);
    if (sys.satisfied_by(v)) return true;
    std::size_t k = 0;
    while (k < n && x[k] == box) x[k++] = -box;
    if (k == n) return false;
    ++x[k];
  }
}

/// Sign vectors of the rank-2 covectors at grid points (i/res, j/res) of
/// [-box, box]^2 lying on no line.
inline std::set<std::vector<int>> grid_sign_vectors(const std::vector<QVector>& covectors, long box, long res) {
  std::set<std::vector<int>> out;
  for (long i = -box * res; i <= box * res; ++i)
    for (long j = -box * res; j <= box * res; ++j) {
      const QVector x{Rat(i, res), Rat(j, res)};
      std::vector<int> s;
      bool wall = false;
      for (const auto& c : covectors) {
        const int v = boulder::dot(c, x).sign();
        wall = wall || v == 0;
        s.push_back(v);
      }
      if (!wall) out.insert(std::move(s));
    }
  return out;
}

}  // namespace oracle
