#pragma once

// Named root-system bases, seeded random Gram matrices, basis specifications
// and the basis file format.

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boulder/basis.hpp"
#include "boulder/error.hpp"
#include "boulder/exact.hpp"

namespace boulder {

/// Symmetrised Cartan matrix: entries ⟨α_i, α_j⟩ of the simple roots, long
/// roots of squared length 2 (C_n and G2 use 4 and 6 for the long roots).
inline EuclideanBasis named_basis(const std::string& family, int rank) {
  auto bad = [&] { return Error(Errc::InvalidRank, family + std::to_string(rank) + " is not a root system"); };
  if (rank < 1 || rank > kMaxRank) throw bad();
  const auto n = static_cast<std::size_t>(rank);
  QMatrix g(n, n);
  auto chain = [&] {
    for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
    for (std::size_t i = 0; i + 1 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  };
  if (family == "A") {
    chain();
  } else if (family == "B") {
    if (rank < 2) throw bad();
    chain();
    g(n - 1, n - 1) = 1;
  } else if (family == "C") {
    if (rank < 2) throw bad();
    chain();
    g(n - 1, n - 1) = 4;
    g(n - 2, n - 1) = g(n - 1, n - 2) = -2;
  } else if (family == "D") {
    if (rank < 4) throw bad();
    chain();
    g(n - 2, n - 1) = g(n - 1, n - 2) = 0;
    g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
  } else if (family == "G") {
    if (rank != 2) throw bad();
    g = QMatrix{{2, -3}, {-3, 6}};
  } else if (family == "F") {
    if (rank != 4) throw bad();
    g = QMatrix{{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -1, 1, Rat(-1, 2)}, {0, 0, Rat(-1, 2), 1}};
  } else {
    throw Error(Errc::InvalidRank, "unknown root system family '" + family + "'");
  }
  return make_basis(std::move(g));
}

/// "A3", "G2", "D4", ...
inline EuclideanBasis named_basis(const std::string& name) {
  if (name.size() < 2) throw Error(Errc::ParseError, "bad basis name '" + name + "'");
  int rank = 0;
  try {
    std::size_t used = 0;
    rank = std::stoi(name.substr(1), &used);
    if (used != name.size() - 1) throw std::invalid_argument(name);
  } catch (const std::logic_error&) {
    throw Error(Errc::ParseError, "bad basis name '" + name + "'");
  }
  return named_basis(name.substr(0, 1), rank);
}

/// The corpus the suites run on.
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"};
  return names;
}

enum class GramMode { Obtuse, General };

inline GramMode parse_gram_mode(const std::string& s) {
  if (s == "obtuse") return GramMode::Obtuse;
  if (s == "general") return GramMode::General;
  throw Error(Errc::ParseError, "random mode must be obtuse or general, got '" + s + "'");
}

inline std::string gram_mode_name(GramMode m) { return m == GramMode::Obtuse ? "obtuse" : "general"; }

/// Integer Gram matrix drawn from mt19937_64. Off-diagonal entries lie in
/// [-3, 0] (obtuse) or [-3, 3] with at least one positive entry (general);
/// the diagonal is then shifted past the Gershgorin bound.
inline EuclideanBasis random_gram(int rank, GramMode mode, std::uint64_t seed) {
  if (rank < 1 || rank > kMaxRank) throw Error(Errc::InvalidRank, "random rank out of range");
  const auto n = static_cast<std::size_t>(rank);
  std::mt19937_64 rng(seed);
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  std::vector<std::vector<long>> g(n, std::vector<long>(n, 0));
  bool positive = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      g[i][j] = g[j][i] = mode == GramMode::Obtuse ? draw(-3, 0) : draw(-3, 3);
      positive = positive || g[i][j] > 0;
    }
  if (mode == GramMode::General && n >= 2 && !positive) {
    const auto i = static_cast<std::size_t>(draw(0, rank - 2));
    g[i][i + 1] = g[i + 1][i] = draw(1, 3);
  }
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    long radius = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        radius += std::abs(g[i][j]);
        m(i, j) = g[i][j];
      }
    m(i, i) = radius + draw(1, 3);
  }
  return make_basis(std::move(m));
}

// ---------------------------------------------------------------------------
// Basis files: {"rank": n, "labels": [...], "gram": [["2/1", "-1/1"], ...]}

inline nlohmann::json basis_to_json(const EuclideanBasis& b) {
  nlohmann::json gram = nlohmann::json::array();
  for (int i = 0; i < b.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < b.rank(); ++j) row.push_back(b.gram()(i, j).str());
    gram.push_back(std::move(row));
  }
  return {{"rank", b.rank()}, {"labels", b.labels()}, {"gram", std::move(gram)}};
}

inline EuclideanBasis basis_from_json(const nlohmann::json& j) {
  try {
    const int rank = j.at("rank").get<int>();
    auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto& rows = j.at("gram");
    if (rank < 1 || rank > kMaxRank) throw Error(Errc::InvalidRank, "rank out of range");
    if (static_cast<int>(labels.size()) != rank || static_cast<int>(rows.size()) != rank)
      throw Error(Errc::DimensionMismatch, "labels and gram must have rank entries");
    QMatrix g(rank, rank);
    for (int i = 0; i < rank; ++i) {
      if (static_cast<int>(rows[i].size()) != rank) throw Error(Errc::DimensionMismatch, "gram row length");
      for (int k = 0; k < rank; ++k) g(i, k) = Rat::parse(rows[i][k].get<std::string>());
    }
    return make_basis(std::move(g), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("basis file: ") + e.what());
  }
}

inline EuclideanBasis read_basis_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, path + ": " + e.what());
  }
  return basis_from_json(j);
}

// ---------------------------------------------------------------------------
// Basis specifications

struct BasisSpec {
  enum class Source { Named, File, Random };
  Source source = Source::Named;
  std::string name;  // named: "A3"; file: path
  int rank = 0;
  GramMode mode = GramMode::Obtuse;
  std::uint64_t seed = 0;

  static BasisSpec named(std::string n) { return {Source::Named, std::move(n), 0, {}, 0}; }
  static BasisSpec file(std::string path) { return {Source::File, std::move(path), 0, {}, 0}; }
  static BasisSpec random(int rank, GramMode m, std::uint64_t seed) { return {Source::Random, {}, rank, m, seed}; }

  std::string display_name() const {
    switch (source) {
      case Source::Named: return name;
      case Source::File: return name;
      case Source::Random:
        return "random-" + gram_mode_name(mode) + "-r" + std::to_string(rank) + "-s" + std::to_string(seed);
    }
    return name;
  }

  EuclideanBasis resolve() const {
    switch (source) {
      case Source::Named: return named_basis(name);
      case Source::File: return read_basis_file(name);
      case Source::Random: return random_gram(rank, mode, seed);
    }
    throw Error(Errc::ParseError, "unknown basis source");
  }
};

/// "A3" | "file:PATH" | "random-obtuse" | "random-general" (rank and seed
/// come from the caller) | "corpus" (every corpus basis).
inline std::vector<BasisSpec> parse_basis_specs(const std::string& text, int rank, std::uint64_t seed,
                                                std::size_t count = 1) {
  if (text == "corpus") {
    std::vector<BasisSpec> out;
    for (const auto& n : corpus_names()) out.push_back(BasisSpec::named(n));
    return out;
  }
  if (text.rfind("file:", 0) == 0) return {BasisSpec::file(text.substr(5))};
  if (text.rfind("random-", 0) == 0) {
    const GramMode m = parse_gram_mode(text.substr(7));
    if (rank < 1) throw Error(Errc::InvalidRank, "random bases need --rank");
    std::vector<BasisSpec> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(BasisSpec::random(rank, m, seed + k));
    return out;
  }
  named_basis(text);  // validate early
  return {BasisSpec::named(text)};
}

}  // namespace boulder
