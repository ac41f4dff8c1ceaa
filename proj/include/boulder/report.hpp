#pragma once

// Report records and the suite runner behind the command-line verbs.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boulder/certify.hpp"
#include "boulder/chambers.hpp"
#include "boulder/corpus.hpp"
#include "boulder/verifiers.hpp"
#include "boulder/workspace.hpp"

namespace boulder {

using nlohmann::json;

inline json to_json(const QVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

inline json to_json(Subset s) { return s.indices(); }

inline json to_json(const OrderedPartition& p) {
  json out = json::array();
  for (Subset b : p.blocks) out.push_back(to_json(b));
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? to_json(*v) : json(nullptr);
}

inline std::string sign_string(const std::vector<std::int8_t>& signs) {
  std::string s;
  for (auto x : signs) s += x > 0 ? '+' : '-';
  return s;
}

/// One record per verdict: identity, basis, subsets, partition, parameter
/// points, both sides and the outcome.
inline json verdict_json(const Verdict& v, const std::string& basis, const Params& prm) {
  json j{{"identity", identity_name(v.identity)},
         {"basis", basis},
         {"label", v.label},
         {"P", optional_json(v.P)},
         {"Q", optional_json(v.Q)},
         {"R", optional_json(v.R)},
         {"partition", optional_json(v.partition)},
         {"lambda", optional_json(prm.lambda)},
         {"lambda1", optional_json(prm.lambda1)},
         {"lambda2", optional_json(prm.lambda2)},
         {"H", optional_json(prm.h)},
         {"lhs", v.lhs},
         {"rhs", v.rhs},
         {"pass", v.pass}};
  if (!v.hypothesis.empty()) j["hypothesis"] = v.hypothesis;
  return j;
}

inline json certificate_json(const CertificateReport& rep) {
  json cells = json::array();
  for (const auto& c : rep.cells) {
    json failed = json::array();
    Params at = rep.params;
    at.h = c.witness;
    for (const auto& v : c.failed) failed.push_back(verdict_json(v, rep.basis, at));
    cells.push_back({{"signs", sign_string(c.signs)},
                     {"witness", to_json(c.witness)},
                     {"checks", c.checks},
                     {"failures", c.failures},
                     {"failed", std::move(failed)}});
  }
  return {{"identity", identity_name(rep.identity)},
          {"basis", rep.basis},
          {"lambda", optional_json(rep.params.lambda)},
          {"lambda1", optional_json(rep.params.lambda1)},
          {"lambda2", optional_json(rep.params.lambda2)},
          {"h_forms", rep.h_forms},
          {"lambda_forms", rep.lambda_forms},
          {"cell_count", rep.cells.size()},
          {"checks", rep.checks},
          {"failed_checks", rep.failed_checks},
          {"failed_cells", rep.failed_cells},
          {"unasserted_failures", rep.unasserted_failures},
          {"pass", rep.pass},
          {"cells", std::move(cells)}};
}

// ---------------------------------------------------------------------------
// Suites

enum class SuiteMode { Exhaustive, Sample };

struct SuiteConfig {
  std::vector<IdentityId> identities;
  std::vector<BasisSpec> bases;
  SuiteMode mode = SuiteMode::Sample;
  std::size_t lambda_count = 5;
  std::size_t h_count = 200;
  std::uint64_t seed = 1;
  long bound = 6;
  bool wall_probe = false;
  int max_exhaustive_rank = 6;
  Params scope;  // P, Q, R, partition, strict flag; points are sampled
};

struct SuiteOutcome {
  int exit_code = 0;  // 0 all pass, 1 some verdict failed, 2 configuration error
  std::vector<json> reports;
  json summary;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t x = seed;
  for (std::uint64_t v : {a, b, c}) {
    x += 0x9e3779b97f4a7c15ULL + v;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x ^= x >> 31;
  }
  return x;
}

inline bool uses_lambda(IdentityId id) {
  return id != IdentityId::L32 && id != IdentityId::L33_EQ2 && id != IdentityId::L33_EQ1 && id != IdentityId::P34;
}

inline bool uses_two_lambdas(IdentityId id) { return id == IdentityId::L33_EQ1 || id == IdentityId::P34; }

// Λ in the closed negative chamber, -Λ = Σ c_i μ_i with c_i >= 1, kept off
// every Λ-side wall.
inline std::vector<QVector> sample_negative(const Workspace& ws, const FormSet& lambda_forms, std::size_t count,
                                            std::uint64_t seed, long bound) {
  FormSet none(Side::Lambda, ws.rank());
  std::vector<QVector> out;
  std::size_t attempts = 0;
  std::uint64_t s = seed;
  while (out.size() < count) {
    if (++attempts > 100'000) throw Error(Errc::SamplingExhausted, "no regular point in the negative chamber");
    const QVector c = sample_regular(none, 1, s++, bound).front();
    QVector v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = Rat(1) + c[i].abs();
    QVector lam = -(ws.basis().dual_coords() * v);
    if (lambda_forms.regular(lam)) out.push_back(std::move(lam));
  }
  return out;
}

// Parameter points for one identity: each entry fixes Λ (or Λ1, Λ2).
inline std::vector<Params> parameter_points(const Workspace& ws, IdentityId id, const FormSets& forms,
                                            const SuiteConfig& cfg, std::uint64_t seed) {
  std::vector<Params> out;
  if (!uses_lambda(id) && !uses_two_lambdas(id)) {
    out.push_back(cfg.scope);
    return out;
  }
  const std::size_t n = cfg.lambda_count;
  if (id == IdentityId::L33_EQ1) {
    // Outside the obtuse case only Λi = 0 meets the hypothesis.
    if (!ws.basis().obtuse()) {
      out.push_back(cfg.scope);
      return out;
    }
    const auto a = sample_negative(ws, forms.lambda_forms, n, mix_seed(seed, 1, 0, 0), cfg.bound);
    const auto b = sample_negative(ws, forms.lambda_forms, n, mix_seed(seed, 2, 0, 0), cfg.bound);
    for (std::size_t k = 0; k < n; ++k) {
      Params p = cfg.scope;
      p.lambda1 = a[k];
      p.lambda2 = b[k];
      out.push_back(std::move(p));
    }
    return out;
  }
  if (id == IdentityId::P34) {
    const auto a = sample_regular(forms.lambda_forms, n, mix_seed(seed, 1, 0, 0), cfg.bound);
    const auto b = sample_regular(forms.lambda_forms, n, mix_seed(seed, 2, 0, 0), cfg.bound);
    for (std::size_t k = 0; k < n; ++k) {
      Params p = cfg.scope;
      p.lambda1 = a[k];
      p.lambda2 = b[k];
      out.push_back(std::move(p));
    }
    return out;
  }
  for (auto& lam : sample_regular(forms.lambda_forms, n, mix_seed(seed, 0, 0, 0), cfg.bound)) {
    Params p = cfg.scope;
    p.lambda = std::move(lam);
    out.push_back(std::move(p));
  }
  return out;
}

// Integer points on a single H-wall. Results are recorded, never asserted.
inline json wall_probe(const Workspace& ws, IdentityId id, const FormSets& forms, const Params& prm,
                       std::size_t count, std::uint64_t seed, long bound) {
  json out{{"points", 0}, {"disagreements", 0}, {"examples", json::array()}};
  if (forms.h_forms.empty()) return out;
  std::mt19937_64 rng(seed);
  FormSet none(Side::H, ws.rank());
  std::size_t points = 0, disagreements = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const QVector& c = forms.h_forms.covectors()[rng() % forms.h_forms.size()];
    const QVector x = sample_regular(none, 1, rng(), bound).front();
    QVector h = dot(c, c) * x - dot(c, x) * c;  // c·h = 0
    if (h.is_zero()) continue;
    h = to_qvector(primitive_integer(h));
    Params at = prm;
    at.h = h;
    ++points;
    const auto vs = verify(id, ws, at);
    if (!all_pass(vs)) {
      ++disagreements;
      if (out["examples"].size() < 4) out["examples"].push_back(to_json(h));
    }
  }
  out["points"] = points;
  out["disagreements"] = disagreements;
  return out;
}

}  // namespace detail

inline SuiteOutcome run_suite(const SuiteConfig& cfg) {
  SuiteOutcome res;
  std::size_t reports = 0, failed_reports = 0, checks = 0, failed_checks = 0;
  try {
    if (cfg.identities.empty()) throw Error(Errc::MissingParam, "no identity selected");
    if (cfg.bases.empty()) throw Error(Errc::MissingParam, "no basis selected");
    for (std::size_t bi = 0; bi < cfg.bases.size(); ++bi) {
      const BasisSpec& spec = cfg.bases[bi];
      Workspace ws(spec.resolve(), spec.display_name());
      if (cfg.mode == SuiteMode::Exhaustive && ws.rank() > cfg.max_exhaustive_rank)
        throw Error(Errc::CellBudgetExceeded, ws.name() + ": rank " + std::to_string(ws.rank()) +
                                                  " exceeds the exhaustive limit " +
                                                  std::to_string(cfg.max_exhaustive_rank));
      for (IdentityId id : cfg.identities) {
        const std::uint64_t seed = detail::mix_seed(cfg.seed, bi, static_cast<std::uint64_t>(id), 0);
        const FormSets forms = collect_forms(ws, id, cfg.scope);
        const auto points = detail::parameter_points(ws, id, forms, cfg, seed);
        std::optional<std::vector<Cell>> cells;
        if (cfg.mode == SuiteMode::Exhaustive) cells = identity_cells(forms, ws.rank());

        for (std::size_t li = 0; li < points.size(); ++li) {
          const Params& prm = points[li];
          json report;
          bool pass = true;
          if (cfg.mode == SuiteMode::Exhaustive) {
            require_regular_parameters(forms.lambda_forms, prm);
            CertificateReport rep = certify_cells(id, ws, prm, *cells, forms.h_forms.size());
            rep.lambda_forms = forms.lambda_forms.size();
            checks += rep.checks;
            failed_checks += rep.failed_checks;
            pass = rep.pass;
            report = certificate_json(rep);
          } else {
            json verdicts = json::array();
            std::size_t n_checks = 0, n_failed = 0, n_unasserted = 0;
            const auto hs = sample_regular(forms.h_forms, cfg.h_count, detail::mix_seed(seed, 3, li, 0), cfg.bound);
            for (const auto& h : hs) {
              Params at = prm;
              at.h = h;
              for (const auto& v : verify(id, ws, at)) {
                ++n_checks;
                if (!v.pass) ++(asserted(v) ? n_failed : n_unasserted);
                verdicts.push_back(verdict_json(v, ws.name(), at));
              }
            }
            checks += n_checks;
            failed_checks += n_failed;
            pass = n_failed == 0 && n_checks > 0;
            report = {{"identity", identity_name(id)},
                      {"basis", ws.name()},
                      {"lambda", optional_json(prm.lambda)},
                      {"lambda1", optional_json(prm.lambda1)},
                      {"lambda2", optional_json(prm.lambda2)},
                      {"samples", hs.size()},
                      {"checks", n_checks},
                      {"failed_checks", n_failed},
                      {"unasserted_failures", n_unasserted},
                      {"pass", pass},
                      {"verdicts", std::move(verdicts)}};
          }
          report["mode"] = cfg.mode == SuiteMode::Exhaustive ? "exhaustive" : "sample";
          report["gram"] = basis_to_json(ws.basis())["gram"];
          report["lambda_index"] = li;
          if (cfg.wall_probe)
            report["wall_probe"] = detail::wall_probe(ws, id, forms, prm, cfg.h_count,
                                                      detail::mix_seed(seed, 4, li, 0), cfg.bound);
          ++reports;
          if (!pass) ++failed_reports;
          res.reports.push_back(std::move(report));
        }
      }
    }
    res.exit_code = failed_reports ? 1 : 0;
  } catch (const Error& e) {
    res.exit_code = 2;
    res.summary["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
  }
  res.summary["reports"] = reports;
  res.summary["failed_reports"] = failed_reports;
  res.summary["checks"] = checks;
  res.summary["failed_checks"] = failed_checks;
  res.summary["exit_code"] = res.exit_code;
  return res;
}

/// One line per report, then the summary.
inline std::string suite_text(const SuiteOutcome& out) {
  std::ostringstream os;
  auto point = [](const json& j) {
    if (j.is_null()) return std::string("-");
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + j[i].get<std::string>();
    return s + ")";
  };
  for (const auto& r : out.reports) {
    os << (r["pass"].get<bool>() ? "PASS " : "FAIL ") << r["identity"].get<std::string>() << ' '
       << r["basis"].get<std::string>() << " #" << r["lambda_index"].get<std::size_t>();
    if (!r["lambda"].is_null()) os << " lambda=" << point(r["lambda"]);
    if (!r["lambda1"].is_null()) os << " lambda1=" << point(r["lambda1"]) << " lambda2=" << point(r["lambda2"]);
    if (r.contains("cell_count")) os << " cells=" << r["cell_count"].get<std::size_t>();
    if (r.contains("samples")) os << " samples=" << r["samples"].get<std::size_t>();
    os << " checks=" << r["checks"].get<std::size_t>() << " failed=" << r["failed_checks"].get<std::size_t>();
    if (r.contains("wall_probe"))
      os << " wall_points=" << r["wall_probe"]["points"].get<std::size_t>()
         << " wall_disagreements=" << r["wall_probe"]["disagreements"].get<std::size_t>();
    os << '\n';
  }
  const json& s = out.summary;
  if (s.contains("error"))
    os << "error " << s["error"]["code"].get<std::string>() << ": " << s["error"]["message"].get<std::string>()
       << '\n';
  os << "summary reports=" << s["reports"] << " failed_reports=" << s["failed_reports"] << " checks=" << s["checks"]
     << " failed_checks=" << s["failed_checks"] << " exit=" << s["exit_code"] << '\n';
  return os.str();
}

}  // namespace boulder
