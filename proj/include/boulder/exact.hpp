#pragma once

// Exact rational scalars, vectors and matrices, plus strict-inequality
// feasibility. Nothing in the library touches floating point.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boulder/error.hpp"

namespace boulder {

/// Canonical arbitrary-precision rational: denominator > 0, lowest terms.
class Rat {
 public:
  Rat() = default;
  Rat(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den) {
    if (den == 0) throw Error(Errc::ParseError, "zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rat(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  explicit Rat(const mpz_class& value) : value_(value) {}

  /// Accepts "n", "n/d" with optional sign on n.
  static Rat parse(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw Error(Errc::ParseError, "empty rational");
    mpq_class q;
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        q = mpq_class(mpz_class(s, 10));
      } else {
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + s + "'");
        q = mpq_class(num, den);
      }
    } catch (const std::invalid_argument&) {
      throw Error(Errc::ParseError, "not a rational: '" + s + "'");
    }
    q.canonicalize();
    return Rat(std::move(q));
  }

  const mpq_class& get() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  /// Always "num/den", so integers print as "3/1".
  std::string str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  Rat abs() const { return Rat(mpq_class(::abs(value_))); }

  Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
  Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
  Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw Error(Errc::SingularMatrix, "division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.value_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.value_; }

 private:
  mpq_class value_{0};
};

/// Coordinates of a vector of V0 in the frame of the ambient basis.
class QVector {
 public:
  QVector() = default;
  explicit QVector(std::size_t n) : coords_(n, Rat(0)) {}
  explicit QVector(std::vector<Rat> coords) : coords_(std::move(coords)) {}
  QVector(std::initializer_list<Rat> coords) : coords_(coords) {}

  static QVector zeros(std::size_t n) { return QVector(n); }
  static QVector unit(std::size_t n, std::size_t i) {
    QVector v(n);
    v[i] = 1;
    return v;
  }

  std::size_t size() const { return coords_.size(); }
  Rat& operator[](std::size_t i) { return coords_[i]; }
  const Rat& operator[](std::size_t i) const { return coords_[i]; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }
  const std::vector<Rat>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rat& r) { return r.is_zero(); });
  }

  QVector& operator+=(const QVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += o[i];
    return *this;
  }
  QVector& operator-=(const QVector& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= o[i];
    return *this;
  }
  QVector& operator*=(const Rat& s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }

  friend QVector operator+(QVector a, const QVector& b) { return a += b; }
  friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
  friend QVector operator*(const Rat& s, QVector v) { return v *= s; }
  friend QVector operator-(QVector v) { return v *= Rat(-1); }
  friend bool operator==(const QVector& a, const QVector& b) { return a.coords_ == b.coords_; }
  friend auto operator<=>(const QVector& a, const QVector& b) { return a.coords_ <=> b.coords_; }

 private:
  void check_same(const QVector& o) const {
    if (o.size() != size()) throw Error(Errc::DimensionMismatch, "vector lengths differ");
  }

  std::vector<Rat> coords_;
};

inline std::ostream& operator<<(std::ostream& os, const QVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

inline std::string to_string(const QVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out + ")";
}

/// Plain coordinate dot product (no metric).
inline Rat dot(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot of unequal lengths");
  mpq_class acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i].get() * b[i].get();
  return Rat(std::move(acc));
}

/// Smallest positive multiple of v with integer coordinates that are coprime.
/// Positive scaling never changes which side of a hyperplane a point lies on.
inline std::vector<mpz_class> primitive_integer(const QVector& v) {
  mpz_class lcm = 1;
  for (const auto& c : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get().get_den_mpz_t());
  std::vector<mpz_class> out(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get().get_num() * (lcm / v[i].get().get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1) {
    for (auto& x : out) x /= g;
  }
  return out;
}

inline QVector to_qvector(const std::vector<mpz_class>& v) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, Rat(0)) {}
  QMatrix(std::initializer_list<std::initializer_list<Rat>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  QVector row(std::size_t r) const {
    QVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = (*this)(r, c);
    return v;
  }
  QVector column(std::size_t c) const {
    QVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend QVector operator*(const QMatrix& m, const QVector& v) {
    if (m.cols_ != v.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shape");
    QVector out(m.rows_);
    for (std::size_t r = 0; r < m.rows_; ++r) {
      mpq_class acc = 0;
      for (std::size_t c = 0; c < m.cols_; ++c) acc += m(r, c).get() * v[c].get();
      out[r] = Rat(std::move(acc));
    }
    return out;
  }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(Errc::DimensionMismatch, "matrix-matrix shape");
    QMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t c = 0; c < b.cols_; ++c) {
        mpq_class acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += a(r, k).get() * b(k, c).get();
        out(r, c) = Rat(std::move(acc));
      }
    return out;
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

namespace detail {

// Gauss-Jordan on [A | B]; returns X with A X = B.
inline QMatrix gauss_jordan(QMatrix a, QMatrix b) {
  if (!a.square()) throw Error(Errc::DimensionMismatch, "solve needs a square matrix");
  if (b.rows() != a.rows()) throw Error(Errc::DimensionMismatch, "right-hand side rows");
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n)
      throw Error(Errc::SingularMatrix, "zero pivot column " + std::to_string(col));
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      for (std::size_t c = 0; c < b.cols(); ++c) std::swap(b(pivot, c), b(col, c));
    }
    const Rat inv = Rat(1) / a(col, col);
    for (std::size_t c = 0; c < n; ++c) a(col, c) *= inv;
    for (std::size_t c = 0; c < b.cols(); ++c) b(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Rat f = a(r, col);
      for (std::size_t c = 0; c < n; ++c) a(r, c) -= f * a(col, c);
      for (std::size_t c = 0; c < b.cols(); ++c) b(r, c) -= f * b(col, c);
    }
  }
  return b;
}

}  // namespace detail

/// Exact solution of A x = b; throws SingularMatrix on a zero pivot column.
inline QVector solve(const QMatrix& a, const QVector& b) {
  QMatrix rhs(b.size(), 1);
  for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
  return detail::gauss_jordan(a, std::move(rhs)).column(0);
}

inline QMatrix inverse(const QMatrix& a) {
  return detail::gauss_jordan(a, QMatrix::identity(a.rows()));
}

// ---------------------------------------------------------------------------
// Strict systems

enum class Relation { Positive, NonPositive, Zero };

struct Constraint {
  QVector form;
  Relation relation;
};

/// Conjunction of homogeneous sign conditions form·x (> 0 | <= 0 | = 0).
struct StrictSystem {
  std::size_t rank = 0;
  std::vector<Constraint> constraints;

  StrictSystem& add(QVector form, Relation rel) {
    if (form.size() != rank) throw Error(Errc::DimensionMismatch, "constraint rank");
    constraints.push_back({std::move(form), rel});
    return *this;
  }

  bool satisfied_by(const QVector& x) const {
    for (const auto& c : constraints) {
      const int s = dot(c.form, x).sign();
      switch (c.relation) {
        case Relation::Positive: if (s <= 0) return false; break;
        case Relation::NonPositive: if (s > 0) return false; break;
        case Relation::Zero: if (s != 0) return false; break;
      }
    }
    return true;
  }
};

namespace detail {

// a·x + b > 0 when strict, a·x + b >= 0 otherwise.
struct FmRow {
  std::vector<Rat> a;
  Rat b;
  bool strict = false;
};

// Divide by the magnitude of the first nonzero coefficient so duplicates collide.
inline void normalize(FmRow& row) {
  const Rat* lead = nullptr;
  for (const auto& c : row.a)
    if (!c.is_zero()) { lead = &c; break; }
  if (!lead && !row.b.is_zero()) lead = &row.b;
  if (!lead) return;
  const Rat scale = Rat(1) / lead->abs();
  for (auto& c : row.a) c *= scale;
  row.b *= scale;
}

// Drops tautologies and duplicates (strict wins). Returns false on a
// contradiction among constant rows.
inline bool tidy(std::vector<FmRow>& rows) {
  std::map<std::pair<std::vector<Rat>, Rat>, bool> seen;
  for (auto& row : rows) {
    const bool constant = std::all_of(row.a.begin(), row.a.end(), [](const Rat& c) { return c.is_zero(); });
    if (constant) {
      const int s = row.b.sign();
      if (s < 0 || (s == 0 && row.strict)) return false;
      continue;
    }
    normalize(row);
    auto [it, inserted] = seen.try_emplace({row.a, row.b}, row.strict);
    if (!inserted) it->second = it->second || row.strict;
  }
  rows.clear();
  for (auto& [key, strict] : seen) rows.push_back({key.first, key.second, strict});
  return true;
}

struct Substitution {
  std::size_t var;
  std::vector<Rat> coef;  // x_var = coef·x + offset
  Rat offset;
};

}  // namespace detail

/// Decides the system exactly by Fourier-Motzkin elimination, carrying a
/// strictness bit per row. Equalities are substituted away first. On success
/// the witness is rebuilt by back-substitution (interval midpoint, or
/// bound +/- 1 on a half-line, or 0 when the variable is unconstrained).
inline std::optional<QVector> feasible_witness(const StrictSystem& sys) {
  using detail::FmRow;
  const std::size_t n = sys.rank;

  std::vector<FmRow> rows;
  std::vector<FmRow> equalities;
  for (const auto& c : sys.constraints) {
    if (c.form.size() != n) throw Error(Errc::DimensionMismatch, "constraint rank");
    FmRow row{c.form.coords(), Rat(0), false};
    switch (c.relation) {
      case Relation::Positive: row.strict = true; rows.push_back(std::move(row)); break;
      case Relation::NonPositive:
        for (auto& x : row.a) x = -x;
        rows.push_back(std::move(row));
        break;
      case Relation::Zero: equalities.push_back(std::move(row)); break;
    }
  }

  std::vector<bool> substituted(n, false);
  std::vector<detail::Substitution> subs;
  auto apply = [&](FmRow& row, const detail::Substitution& s) {
    const Rat k = row.a[s.var];
    if (k.is_zero()) return;
    row.a[s.var] = 0;
    for (std::size_t i = 0; i < n; ++i) row.a[i] += k * s.coef[i];
    row.b += k * s.offset;
  };
  for (std::size_t e = 0; e < equalities.size(); ++e) {
    FmRow& eq = equalities[e];
    std::size_t j = 0;
    while (j < n && eq.a[j].is_zero()) ++j;
    if (j == n) {
      if (!eq.b.is_zero()) return std::nullopt;
      continue;
    }
    detail::Substitution s{j, std::vector<Rat>(n, Rat(0)), Rat(0)};
    const Rat inv = Rat(-1) / eq.a[j];
    for (std::size_t i = 0; i < n; ++i)
      if (i != j) s.coef[i] = eq.a[i] * inv;
    s.offset = eq.b * inv;
    for (std::size_t f = e + 1; f < equalities.size(); ++f) apply(equalities[f], s);
    for (auto& row : rows) apply(row, s);
    for (auto& prev : subs) {
      // keep earlier substitutions expressed in surviving variables
      const Rat k = prev.coef[j];
      if (k.is_zero()) continue;
      prev.coef[j] = 0;
      for (std::size_t i = 0; i < n; ++i) prev.coef[i] += k * s.coef[i];
      prev.offset += k * s.offset;
    }
    substituted[j] = true;
    subs.push_back(std::move(s));
  }

  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < n; ++v)
    if (!substituted[v]) order.push_back(v);

  std::vector<std::vector<FmRow>> stages;
  if (!detail::tidy(rows)) return std::nullopt;
  for (std::size_t var : order) {
    stages.push_back(rows);
    std::vector<FmRow> lower, upper, next;
    for (auto& row : rows) {
      const int s = row.a[var].sign();
      if (s > 0) lower.push_back(row);
      else if (s < 0) upper.push_back(row);
      else next.push_back(row);
    }
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // lo: c·x_v + ... ⋄ 0 with c > 0; up: d·x_v + ... ⋄ 0 with d < 0.
        const Rat cl = lo.a[var];
        const Rat cu = -up.a[var];
        FmRow combo{std::vector<Rat>(n, Rat(0)), cu * lo.b + cl * up.b, lo.strict || up.strict};
        for (std::size_t i = 0; i < n; ++i) combo.a[i] = cu * lo.a[i] + cl * up.a[i];
        combo.a[var] = 0;
        next.push_back(std::move(combo));
      }
    if (!detail::tidy(next)) return std::nullopt;
    rows = std::move(next);
  }

  QVector x(n);
  for (std::size_t k = order.size(); k-- > 0;) {
    const std::size_t var = order[k];
    std::optional<Rat> lo, hi;
    for (const auto& row : stages[k]) {
      const Rat c = row.a[var];
      if (c.is_zero()) continue;
      Rat rest = row.b;
      for (std::size_t i = 0; i < n; ++i)
        if (i != var && !row.a[i].is_zero()) rest += row.a[i] * x[i];
      const Rat bound = -rest / c;
      if (c.sign() > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else if (!hi || bound < *hi) {
        hi = bound;
      }
    }
    // lo == hi only when neither side is strict, so the midpoint is always valid.
    if (lo && hi) x[var] = (*lo + *hi) / Rat(2);
    else if (lo) x[var] = *lo + Rat(1);
    else if (hi) x[var] = *hi - Rat(1);
    else x[var] = 0;
  }
  for (std::size_t k = subs.size(); k-- > 0;) {
    const auto& s = subs[k];
    Rat value = s.offset;
    for (std::size_t i = 0; i < n; ++i)
      if (!s.coef[i].is_zero()) value += s.coef[i] * x[i];
    x[s.var] = value;
  }
  return x;
}

}  // namespace boulder
