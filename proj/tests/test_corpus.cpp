#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "boulder/corpus.hpp"
#include "boulder/report.hpp"

using namespace boulder;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::ParseError;
}

SuiteConfig suite(std::vector<IdentityId> ids, std::vector<BasisSpec> bases) {
  SuiteConfig cfg;
  cfg.identities = std::move(ids);
  cfg.bases = std::move(bases);
  return cfg;
}

}  // namespace

TEST(Named, SmallGramMatrices) {
  EXPECT_EQ(named_basis("A2").gram(), (QMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(named_basis("A1").gram(), (QMatrix{{2}}));
  EXPECT_EQ(named_basis("G2").gram(), (QMatrix{{2, -3}, {-3, 6}}));
  EXPECT_EQ(named_basis("B2").gram(), (QMatrix{{2, -1}, {-1, 1}}));
  EXPECT_EQ(named_basis("C3").gram(), (QMatrix{{2, -1, 0}, {-1, 2, -2}, {0, -2, 4}}));
}

TEST(Named, BranchNodeOfD4) {
  const auto g = named_basis("D4").gram();
  for (int j : {0, 2, 3}) EXPECT_EQ(g(1, j), Rat(-1));
  EXPECT_EQ(g(0, 2), Rat(0));
  EXPECT_EQ(g(0, 3), Rat(0));
  EXPECT_EQ(g(2, 3), Rat(0));
}

TEST(Named, F4IsPositiveDefiniteAndObtuse) {
  const auto b = named_basis("F", 4);
  EXPECT_EQ(b.rank(), 4);
  EXPECT_TRUE(b.obtuse());
  EXPECT_EQ(b.gram() * b.dual_coords(), QMatrix::identity(4));
}

TEST(Named, CorpusIsObtuse) {
  EXPECT_EQ(corpus_names().size(), 9u);
  for (const auto& n : corpus_names()) EXPECT_TRUE(named_basis(n).obtuse()) << n;
}

TEST(Named, Errors) {
  EXPECT_EQ(code_of([] { named_basis("B1"); }), Errc::InvalidRank);
  EXPECT_EQ(code_of([] { named_basis("D3"); }), Errc::InvalidRank);
  EXPECT_EQ(code_of([] { named_basis("G3"); }), Errc::InvalidRank);
  EXPECT_EQ(code_of([] { named_basis("Q2"); }), Errc::InvalidRank);
  EXPECT_EQ(code_of([] { named_basis("A"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { named_basis("Ax"); }), Errc::ParseError);
}

TEST(RandomGram, ObtuseModeHasNoPositivePairing) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto b = random_gram(4, GramMode::Obtuse, s);
    EXPECT_TRUE(b.obtuse());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j) {
          EXPECT_LE(b.gram()(i, j), Rat(0));
        }
  }
}

TEST(RandomGram, GeneralModeHasAPositivePairing) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto b = random_gram(3, GramMode::General, s);
    EXPECT_FALSE(b.obtuse());
  }
}

TEST(RandomGram, DeterministicAndDiagonallyDominant) {
  EXPECT_EQ(random_gram(5, GramMode::General, 9).gram(), random_gram(5, GramMode::General, 9).gram());
  EXPECT_NE(random_gram(5, GramMode::General, 9).gram(), random_gram(5, GramMode::General, 10).gram());
  const auto g = random_gram(5, GramMode::General, 9).gram();
  for (int i = 0; i < 5; ++i) {
    Rat off = 0;
    for (int j = 0; j < 5; ++j)
      if (j != i) off += g(i, j).abs();
    EXPECT_GT(g(i, i), off);
  }
  EXPECT_EQ(random_gram(1, GramMode::General, 3).rank(), 1);
  EXPECT_EQ(code_of([] { random_gram(0, GramMode::Obtuse, 1); }), Errc::InvalidRank);
  EXPECT_EQ(code_of([] { parse_gram_mode("acute"); }), Errc::ParseError);
}

TEST(BasisJson, RoundTrip) {
  for (const auto& b : {named_basis("F4"), random_gram(3, GramMode::General, 4)}) {
    const auto j = basis_to_json(b);
    const auto back = basis_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.gram(), b.gram());
    EXPECT_EQ(back.labels(), b.labels());
  }
  EXPECT_EQ(basis_to_json(named_basis("F4"))["gram"][2][3], "-1/2");
}

TEST(BasisJson, Errors) {
  using nlohmann::json;
  EXPECT_EQ(code_of([] { basis_from_json(json{{"rank", 2}}); }), Errc::ParseError);
  EXPECT_EQ(code_of([] {
              basis_from_json(json::parse(R"({"rank": 2, "labels": ["a"], "gram": [["2", "0"], ["0", "2"]]})"));
            }),
            Errc::DimensionMismatch);
  EXPECT_EQ(code_of([] {
              basis_from_json(json::parse(R"({"rank": 2, "labels": ["a", "b"], "gram": [["2", "1"], ["0", "2"]]})"));
            }),
            Errc::NotSymmetric);
  EXPECT_EQ(code_of([] {
              basis_from_json(json::parse(R"({"rank": 2, "labels": ["a", "b"], "gram": [["1", "2"], ["2", "1"]]})"));
            }),
            Errc::NotPositiveDefinite);
  EXPECT_EQ(code_of([] { read_basis_file("/nonexistent/basis.json"); }), Errc::ParseError);
}

TEST(BasisJson, FileSpec) {
  const auto path = std::filesystem::temp_directory_path() / "boulder_test_basis.json";
  {
    std::ofstream out(path);
    out << basis_to_json(named_basis("B3")).dump(2);
  }
  const auto specs = parse_basis_specs("file:" + path.string(), 0, 0);
  ASSERT_EQ(specs.size(), 1u);
  EXPECT_EQ(specs[0].resolve().gram(), named_basis("B3").gram());
  EXPECT_EQ(specs[0].display_name(), path.string());
  std::filesystem::remove(path);
}

TEST(BasisSpecs, Parsing) {
  EXPECT_EQ(parse_basis_specs("corpus", 0, 0).size(), 9u);
  const auto r = parse_basis_specs("random-general", 3, 11, 3);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].display_name(), "random-general-r3-s11");
  EXPECT_EQ(r[2].display_name(), "random-general-r3-s13");
  EXPECT_EQ(parse_basis_specs("G2", 0, 0)[0].display_name(), "G2");
  EXPECT_EQ(code_of([] { parse_basis_specs("random-general", 0, 1); }), Errc::InvalidRank);
  EXPECT_EQ(code_of([] { parse_basis_specs("random-sharp", 3, 1); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_basis_specs("E9", 0, 0); }), Errc::InvalidRank);
}

TEST(Suite, ExhaustiveRankOne) {
  auto cfg = suite({IdentityId::BOULDER_21}, {BasisSpec::named("A1")});
  cfg.mode = SuiteMode::Exhaustive;
  const auto out = run_suite(cfg);
  EXPECT_EQ(out.exit_code, 0);
  ASSERT_EQ(out.reports.size(), 5u);
  for (const auto& r : out.reports) {
    EXPECT_EQ(r["cell_count"], 2);
    EXPECT_EQ(r["mode"], "exhaustive");
    EXPECT_TRUE(r["pass"].get<bool>());
  }
  EXPECT_NE(suite_text(out).find("summary reports=5 failed_reports=0 checks=10 failed_checks=0 exit=0"),
            std::string::npos);
}

TEST(Suite, ExhaustiveRankLimit) {
  auto cfg = suite({IdentityId::BOULDER_21}, {BasisSpec::random(9, GramMode::Obtuse, 1)});
  cfg.mode = SuiteMode::Exhaustive;
  const auto out = run_suite(cfg);
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.summary["error"]["code"], "CellBudgetExceeded");
  EXPECT_NE(suite_text(out).find("exit=2"), std::string::npos);
}

TEST(Suite, ConfigurationErrors) {
  EXPECT_EQ(run_suite(suite({}, {BasisSpec::named("A2")})).exit_code, 2);
  EXPECT_EQ(run_suite(suite({IdentityId::L32}, {})).exit_code, 2);
  auto cfg = suite({IdentityId::L32}, {BasisSpec::named("A2")});
  cfg.scope.P = Subset::of({0, 1});
  cfg.scope.R = Subset::single(0);
  const auto out = run_suite(cfg);
  EXPECT_EQ(out.exit_code, 2);
  EXPECT_EQ(out.summary["error"]["code"], "NotNested");
}

TEST(Suite, SampledTauProductOnGeneralBasis) {
  auto cfg = suite({IdentityId::L32}, {BasisSpec::random(3, GramMode::General, 11)});
  cfg.h_count = 200;
  const auto out = run_suite(cfg);
  EXPECT_EQ(out.exit_code, 0);
  ASSERT_EQ(out.reports.size(), 1u);
  EXPECT_EQ(out.reports[0]["samples"], 200);
  EXPECT_EQ(out.reports[0]["checks"], 200 * 27);
  EXPECT_EQ(out.summary["failed_checks"], 0);
}

TEST(Suite, Deterministic) {
  auto cfg = suite({IdentityId::C35, IdentityId::P34}, {BasisSpec::named("A2"), BasisSpec::named("G2")});
  cfg.h_count = 20;
  cfg.lambda_count = 3;
  const auto a = run_suite(cfg);
  const auto b = run_suite(cfg);
  ASSERT_EQ(a.reports.size(), 12u);
  EXPECT_EQ(a.reports, b.reports);
  cfg.seed = 2;
  EXPECT_NE(run_suite(cfg).reports, a.reports);
}

TEST(Suite, TwoParameterIdentityOnGeneralBasisStaysAtZero) {
  auto cfg = suite({IdentityId::L33_EQ1}, {BasisSpec::random(3, GramMode::General, 5)});
  cfg.h_count = 30;
  cfg.lambda_count = 2;
  const auto out = run_suite(cfg);
  EXPECT_EQ(out.exit_code, 0);
  ASSERT_EQ(out.reports.size(), 1u);  // one point: Λ1 = Λ2 = 0
  EXPECT_TRUE(out.reports[0]["lambda1"].is_null());
  EXPECT_TRUE(out.reports[0]["lambda2"].is_null());
  EXPECT_EQ(out.reports[0]["unasserted_failures"], 0);
}

TEST(Suite, WallProbeIsReported) {
  auto cfg = suite({IdentityId::BOULDER_21}, {BasisSpec::named("A2")});
  cfg.h_count = 20;
  cfg.lambda_count = 1;
  cfg.wall_probe = true;
  const auto out = run_suite(cfg);
  ASSERT_EQ(out.reports.size(), 1u);
  EXPECT_GT(out.reports[0]["wall_probe"]["points"].get<int>(), 0);
  EXPECT_NE(suite_text(out).find("wall_points="), std::string::npos);
}
