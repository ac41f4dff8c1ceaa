#include <gtest/gtest.h>

#include <random>

#include "boulder/basis.hpp"
#include "boulder/corpus.hpp"
#include "oracles.hpp"

using namespace boulder;

namespace {

EuclideanBasis a2() { return make_basis(QMatrix{{2, -1}, {-1, 2}}); }

std::vector<EuclideanBasis> test_bases() {
  std::vector<EuclideanBasis> out;
  for (const auto& n : corpus_names()) out.push_back(named_basis(n));
  out.push_back(make_basis(QMatrix{{5, 2, 1}, {2, 4, 1}, {1, 1, 3}}));  // positive off-diagonals
  out.push_back(random_gram(4, GramMode::General, 3));
  return out;
}

QVector random_point(std::mt19937_64& rng, int rank, long bound = 7) {
  QVector x(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) x[i] = Rat(static_cast<long>(rng() % (2 * bound + 1)) - bound);
  return x;
}

}  // namespace

TEST(MakeBasis, OrthonormalDualsAreStandardVectors) {
  const auto b = make_basis(QMatrix::identity(2));
  EXPECT_EQ(b.dual(0), (QVector{1, 0}));
  EXPECT_EQ(b.dual(1), (QVector{0, 1}));
}

TEST(MakeBasis, A2DualCoordinates) {
  const QMatrix expected{{Rat(2, 3), Rat(1, 3)}, {Rat(1, 3), Rat(2, 3)}};
  EXPECT_EQ(a2().dual_coords(), expected);
}

TEST(MakeBasis, IndefiniteReportsFailingMinor) {
  try {
    make_basis(QMatrix{{1, 2}, {2, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPositiveDefinite);
    EXPECT_NE(std::string(e.what()).find("leading minor 2 = -3/1"), std::string::npos) << e.what();
  }
}

TEST(MakeBasis, RejectsAsymmetricGram) {
  try {
    make_basis(QMatrix{{2, 1}, {0, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotSymmetric);
  }
}

TEST(Inner, A2Examples) {
  const auto b = a2();
  EXPECT_EQ(b.inner(QVector{1, 0}, QVector{0, 1}), Rat(-1));
  EXPECT_EQ(b.inner(QVector{Rat(2, 3), Rat(1, 3)}, QVector{1, 0}), Rat(1));
  EXPECT_EQ(b.inner(QVector{0, 0}, QVector{3, 5}), Rat(0));
  EXPECT_THROW(b.inner(QVector{1}, QVector{1, 0}), Error);
}

TEST(Inner, Symmetric) {
  std::mt19937_64 rng(5);
  for (const auto& b : test_bases())
    for (int k = 0; k < 20; ++k) {
      const QVector x = random_point(rng, b.rank()), y = random_point(rng, b.rank());
      EXPECT_EQ(b.inner(x, y), b.inner(y, x));
    }
}

TEST(ProjectedBasis, AmbientPairIsTheBasisItself) {
  const auto b = a2();
  const auto pb = projected_basis(b, Subset(), Subset::full(2));
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(pb.element(i), b.element(i));
    EXPECT_EQ(pb.dual(i), b.dual(i));
  }
}

TEST(ProjectedBasis, A2ProjectionAwayFromSecondRoot) {
  const auto b = a2();
  const auto pb = projected_basis(b, Subset::single(1), Subset::full(2));
  EXPECT_EQ(pb.size(), 1);
  EXPECT_EQ(pb.element(0), (QVector{1, Rat(1, 2)}));
  EXPECT_EQ(pb.element(0), Rat(3, 2) * b.dual(0));
  EXPECT_EQ(b.inner(pb.dual(0), pb.element(0)), Rat(1));
}

TEST(ProjectedBasis, EmptyWhenBoundsAgree) {
  const auto pb = projected_basis(a2(), Subset::single(0), Subset::single(0));
  EXPECT_EQ(pb.size(), 0);
}

TEST(ProjectedBasis, RejectsNonNestedPair) {
  try {
    projected_basis(a2(), Subset::single(0), Subset::single(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotNested);
  }
}

TEST(ProjectedBasis, MatchesClosedFormsOnEveryPair) {
  for (const auto& b : test_bases()) {
    const Subset full = Subset::full(b.rank());
    for_each_between(Subset(), full, [&](Subset q) {
      for_each_between(Subset(), q, [&](Subset p) {
        const auto pb = projected_basis(b, p, q);
        (q - p).for_each([&](int i) {
          EXPECT_EQ(pb.element(i), oracle::element(b, p, i));
          EXPECT_EQ(pb.dual(i), oracle::coweight(b, q, i));
        });
      });
    });
  }
}

TEST(ProjectedBasis, DualityAndOrthogonality) {
  for (const auto& b : test_bases()) {
    const Subset full = Subset::full(b.rank());
    for_each_between(Subset(), full, [&](Subset q) {
      for_each_between(Subset(), q, [&](Subset p) {
        const auto pb = projected_basis(b, p, q);
        (q - p).for_each([&](int i) {
          (q - p).for_each([&](int j) { EXPECT_EQ(b.inner(pb.dual(i), pb.element(j)), Rat(i == j ? 1 : 0)); });
          p.for_each([&](int j) { EXPECT_EQ(b.inner(pb.element(i), b.element(j)), Rat(0)); });
        });
      });
    });
  }
}

TEST(ProjectedBasis, PrimalAndDualNesting) {
  for (const auto& b : test_bases()) {
    const Subset full = Subset::full(b.rank());
    for_each_between(Subset(), full, [&](Subset r) {
      for_each_between(Subset(), r, [&](Subset q) {
        for_each_between(Subset(), q, [&](Subset p) {
          const auto pq = projected_basis(b, p, q);
          const auto pr = projected_basis(b, p, r);
          const auto qr = projected_basis(b, q, r);
          // Same lower index: same elements.
          (q - p).for_each([&](int i) { EXPECT_EQ(pq.element(i), pr.element(i)); });
          // Same upper index: same duals.
          (r - q).for_each([&](int i) { EXPECT_EQ(qr.dual(i), pr.dual(i)); });
        });
      });
    });
  }
}

TEST(ProjectedBasis, ProjectionNormIdentity) {
  std::mt19937_64 rng(31);
  for (const auto& b : test_bases()) {
    const Subset full = Subset::full(b.rank());
    for (int k = 0; k < 20; ++k) {
      const QVector h = random_point(rng, b.rank());
      for_each_between(Subset(), full, [&](Subset r) {
        for_each_between(Subset(), r, [&](Subset p) {
          const auto pb = projected_basis(b, p, r);
          Rat sum = 0;
          (r - p).for_each([&](int i) { sum += b.inner(pb.element(i), h) * b.inner(pb.dual(i), h); });
          const QVector hp = pb.project(b, h);
          EXPECT_EQ(sum, b.inner(hp, hp));
          EXPECT_GE(sum.sign(), 0);
          EXPECT_EQ(sum.is_zero(), hp.is_zero());
        });
      });
    }
  }
}

TEST(LambdaCut, ZeroParameter) {
  const auto b = a2();
  const auto cut = lambda_cut(b, Subset(), Subset::full(2), QVector{0, 0});
  EXPECT_EQ(cut.p_lambda, Subset::full(2));
  EXPECT_EQ(cut.q_lambda, Subset());
}

TEST(LambdaCut, StrictlyDominantParameter) {
  const auto b = a2();
  const QVector lam = b.dual(0) + b.dual(1);  // every λ and μ positive on it
  const auto cut = lambda_cut(b, Subset(), Subset::full(2), lam);
  EXPECT_EQ(cut.p_lambda, Subset());
  EXPECT_EQ(cut.q_lambda, Subset::full(2));
}

TEST(LambdaCut, MatchesDirectSignTable) {
  const auto b = a2();
  const QVector lam = Rat(3) * (b.dual(0) - b.dual(1));
  const auto cut = lambda_cut(b, Subset(), Subset::full(2), lam);
  Subset p_expected, q_expected;
  for (int i = 0; i < 2; ++i) {
    if (b.inner(b.dual(i), lam).sign() <= 0) p_expected = p_expected.with(i);
    if (b.inner(b.element(i), lam).sign() > 0) q_expected = q_expected.with(i);
  }
  EXPECT_EQ(cut.p_lambda, p_expected);
  EXPECT_EQ(cut.q_lambda, q_expected);
  EXPECT_EQ(cut.p_lambda, Subset::single(1));
  EXPECT_EQ(cut.q_lambda, Subset::single(0));
}

TEST(Subsets, BetweenVisitsEachSubsetOnceInOrder) {
  std::vector<std::uint32_t> seen;
  for_each_between(Subset::of({1}), Subset::of({0, 1, 3}), [&](Subset s) { seen.push_back(s.bits()); });
  EXPECT_EQ(seen, (std::vector<std::uint32_t>{0b0010, 0b0011, 0b1010, 0b1011}));
}
