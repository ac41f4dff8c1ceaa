// Command-line front end: verify, certify, chambers, partitions, bases.
//
// Exit codes: 0 every asserted check passed, 1 some verdict failed,
// 2 configuration, parse or hypothesis error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "boulder/boulder.hpp"

namespace {

using namespace boulder;

struct Options {
  std::vector<std::string> identities;
  std::vector<std::string> bases;
  int rank = 0;
  std::uint64_t seed = 1;
  std::size_t basis_count = 1;
  std::string mode;
  std::size_t samples = 200;
  std::size_t lambda_samples = 5;
  long bound = 6;
  bool wall_probe = false;
  std::string out;
  std::string format = "json";
  std::string P, Q, R, partition;
  std::string lambda, lambda1, lambda2, h;
  bool strict = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

// "0,2" (0-based indices); "-" or "" is the empty set.
Subset parse_subset(const std::string& text, int rank) {
  Subset s;
  if (text.empty() || text == "-") return s;
  for (const auto& tok : split(text, ',')) {
    int i = -1;
    try {
      i = std::stoi(tok);
    } catch (const std::logic_error&) {
      throw Error(Errc::ParseError, "bad index '" + tok + "'");
    }
    if (i < 0 || i >= rank) throw Error(Errc::ParseError, "index " + tok + " out of range");
    s = s.with(i);
  }
  return s;
}

QVector parse_point(const std::string& text, int rank) {
  const auto toks = split(text, ',');
  if (static_cast<int>(toks.size()) != rank)
    throw Error(Errc::DimensionMismatch, "point '" + text + "' needs " + std::to_string(rank) + " coordinates");
  QVector v(static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < toks.size(); ++i) v[i] = Rat::parse(toks[i]);
  return v;
}

// Blocks separated by '|', e.g. "0|1,2".
OrderedPartition parse_partition(const std::string& text, int rank) {
  OrderedPartition p;
  for (const auto& blk : split(text, '|')) {
    const Subset b = parse_subset(blk, rank);
    p.blocks.push_back(b);
    p.ground = p.ground | b;
  }
  if (!p.valid()) throw Error(Errc::GroundMismatch, "'" + text + "' is not an ordered partition");
  return p;
}

std::vector<IdentityId> parse_identities(const std::vector<std::string>& names) {
  std::vector<IdentityId> out;
  for (const auto& n : names) {
    if (n == "all") {
      out.assign(kAllIdentities.begin(), kAllIdentities.end());
      continue;
    }
    auto id = parse_identity(n);
    if (!id) throw Error(Errc::ParseError, "unknown identity '" + n + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw Error(Errc::MissingParam, "--identity is required");
  return out;
}

std::vector<BasisSpec> basis_specs(const Options& o, std::vector<std::string> fallback = {}) {
  const auto& names = o.bases.empty() ? fallback : o.bases;
  if (names.empty()) throw Error(Errc::MissingParam, "--basis is required");
  std::vector<BasisSpec> out;
  for (const auto& n : names)
    for (auto& s : parse_basis_specs(n, o.rank, o.seed, o.basis_count)) out.push_back(std::move(s));
  return out;
}

Params scope_params(const Options& o, int rank) {
  Params p;
  if (!o.P.empty()) p.P = parse_subset(o.P, rank);
  if (!o.Q.empty()) p.Q = parse_subset(o.Q, rank);
  if (!o.R.empty()) p.R = parse_subset(o.R, rank);
  if (!o.partition.empty()) p.partition = parse_partition(o.partition, rank);
  if (!o.lambda.empty()) p.lambda = parse_point(o.lambda, rank);
  if (!o.lambda1.empty()) p.lambda1 = parse_point(o.lambda1, rank);
  if (!o.lambda2.empty()) p.lambda2 = parse_point(o.lambda2, rank);
  if (!o.h.empty()) p.h = parse_point(o.h, rank);
  p.strict_hypotheses = o.strict;
  return p;
}

void emit(const Options& o, const json& doc, const std::string& text) {
  if (o.out.empty()) {
    std::cout << (o.format == "text" ? text : doc.dump(2) + "\n");
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(Errc::ParseError, "cannot write " + o.out);
  f << (o.format == "text" ? text : doc.dump(2) + "\n");
}

std::string point_text(const QVector& v) { return to_string(v); }

// --- verbs ------------------------------------------------------------------

int run_pointwise(const Options& o) {
  const auto specs = basis_specs(o);
  const auto ids = parse_identities(o.identities);
  json records = json::array();
  std::ostringstream text;
  bool pass = true;
  for (const auto& spec : specs) {
    Workspace ws(spec.resolve(), spec.display_name());
    const Params prm = scope_params(o, ws.rank());
    for (IdentityId id : ids)
      for (const auto& v : verify(id, ws, prm)) {
        pass = pass && (v.pass || !asserted(v));
        records.push_back(verdict_json(v, ws.name(), prm));
        text << (v.pass ? "PASS " : "FAIL ") << identity_name(id) << ' ' << ws.name() << ' ' << v.label
             << " lhs=" << v.lhs << " rhs=" << v.rhs;
        if (v.P) text << " P=" << to_json(*v.P).dump();
        if (v.Q) text << " Q=" << to_json(*v.Q).dump();
        if (v.R) text << " R=" << to_json(*v.R).dump();
        if (v.partition) text << " partition=" << to_json(*v.partition).dump();
        if (!v.hypothesis.empty()) text << " hypothesis=" << v.hypothesis;
        text << '\n';
      }
  }
  const int code = pass ? 0 : 1;
  text << "summary verdicts=" << records.size() << " exit=" << code << '\n';
  emit(o, {{"verdicts", records}, {"summary", {{"verdicts", records.size()}, {"exit_code", code}}}}, text.str());
  return code;
}

int run_suite_verb(const Options& o, SuiteMode default_mode) {
  if (!o.h.empty()) return run_pointwise(o);
  SuiteConfig cfg;
  cfg.identities = parse_identities(o.identities);
  cfg.bases = basis_specs(o);
  cfg.mode = default_mode;
  if (o.mode == "exhaustive") cfg.mode = SuiteMode::Exhaustive;
  else if (o.mode == "sample") cfg.mode = SuiteMode::Sample;
  else if (!o.mode.empty()) throw Error(Errc::ParseError, "--mode must be exhaustive or sample");
  cfg.lambda_count = o.lambda_samples;
  cfg.h_count = o.samples;
  cfg.seed = o.seed;
  cfg.bound = o.bound;
  cfg.wall_probe = o.wall_probe;
  // Subset scope is parsed against the first basis; every basis must share its rank.
  const int rank = cfg.bases.front().resolve().rank();
  cfg.scope = scope_params(o, rank);
  cfg.scope.lambda.reset();
  cfg.scope.lambda1.reset();
  cfg.scope.lambda2.reset();

  const SuiteOutcome res = run_suite(cfg);
  if (!o.out.empty() && o.format == "json") {
    // One file per (identity, basis, Λ) plus the summary.
    std::filesystem::create_directories(o.out);
    for (std::size_t k = 0; k < res.reports.size(); ++k) {
      const auto& r = res.reports[k];
      std::ostringstream name;
      name << std::setw(4) << std::setfill('0') << k << '_' << r["identity"].get<std::string>() << '_'
           << r["basis"].get<std::string>() << '_' << r["lambda_index"].get<std::size_t>() << ".json";
      std::ofstream(std::filesystem::path(o.out) / name.str()) << r.dump(2) << '\n';
    }
    std::ofstream(std::filesystem::path(o.out) / "summary.json") << res.summary.dump(2) << '\n';
    std::cout << suite_text({res.exit_code, {}, res.summary});
  } else {
    emit(o, {{"reports", res.reports}, {"summary", res.summary}}, suite_text(res));
  }
  return res.exit_code;
}

int run_chambers(const Options& o) {
  const auto ids = parse_identities(o.identities);
  json docs = json::array();
  std::ostringstream text;
  for (const auto& spec : basis_specs(o)) {
    Workspace ws(spec.resolve(), spec.display_name());
    const Params prm = scope_params(o, ws.rank());
    for (IdentityId id : ids) {
      const FormSets forms = collect_forms(ws, id, prm);
      const auto cells = identity_cells(forms, ws.rank());
      json hf = json::array(), lf = json::array(), cj = json::array();
      for (const auto& c : forms.h_forms.covectors()) hf.push_back(to_json(c));
      for (const auto& c : forms.lambda_forms.covectors()) lf.push_back(to_json(c));
      for (const auto& c : cells) cj.push_back({{"signs", sign_string(c.signs)}, {"witness", to_json(c.witness)}});
      docs.push_back({{"identity", identity_name(id)},
                      {"basis", ws.name()},
                      {"h_forms", hf},
                      {"lambda_forms", lf},
                      {"cells", cj}});
      text << identity_name(id) << ' ' << ws.name() << " h_forms=" << forms.h_forms.size()
           << " lambda_forms=" << forms.lambda_forms.size() << " cells=" << cells.size() << '\n';
      for (const auto& c : forms.h_forms.covectors()) text << "  form " << point_text(c) << '\n';
      for (const auto& c : cells) text << "  cell " << sign_string(c.signs) << ' ' << point_text(c.witness) << '\n';
    }
  }
  emit(o, docs, text.str());
  return 0;
}

int run_partitions(const Options& o) {
  json docs = json::array();
  std::ostringstream text;
  for (const auto& spec : basis_specs(o)) {
    Workspace ws(spec.resolve(), spec.display_name());
    const Subset p = o.P.empty() ? Subset() : parse_subset(o.P, ws.rank());
    const Subset r = o.R.empty() ? ws.full() : parse_subset(o.R, ws.rank());
    const auto& frames = ws.frames(p, r);
    json list = json::array();
    text << ws.name() << " P=" << to_json(p).dump() << " R=" << to_json(r).dump() << " partitions=" << frames.size()
         << '\n';
    for (const auto& f : frames) {
      json elems = json::object(), duals = json::object();
      text << "  " << to_json(f.partition()).dump();
      f.ground().for_each([&](int i) {
        const auto& label = ws.basis().labels()[static_cast<std::size_t>(i)];
        elems[label] = to_json(f.proj_element(i));
        duals[label] = to_json(f.proj_dual(i));
        text << ' ' << label << ":" << point_text(f.proj_element(i)) << "/" << point_text(f.proj_dual(i));
      });
      text << '\n';
      list.push_back({{"blocks", to_json(f.partition())}, {"elements", elems}, {"duals", duals}});
    }
    docs.push_back({{"basis", ws.name()}, {"P", to_json(p)}, {"R", to_json(r)}, {"partitions", list}});
  }
  emit(o, docs, text.str());
  return 0;
}

int run_bases(const Options& o) {
  json docs = json::array();
  std::ostringstream text;
  for (const auto& spec : basis_specs(o, {"corpus"})) {
    const EuclideanBasis b = spec.resolve();
    json j = basis_to_json(b);
    if (o.bases.size() == 1 && o.basis_count == 1 && o.bases.front() != "corpus") {
      emit(o, j, spec.display_name() + " " + j["gram"].dump() + "\n");
      return 0;
    }
    j["name"] = spec.display_name();
    text << spec.display_name() << ' ' << j["gram"].dump() << '\n';
    docs.push_back(std::move(j));
  }
  emit(o, docs, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of sign-alternating identities of cone indicators"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--basis", o.bases, "A3, G2, ..., corpus, file:PATH, random-obtuse, random-general");
    sub->add_option("--rank", o.rank, "rank of random bases");
    sub->add_option("--seed", o.seed, "seed for random bases and sampling");
    sub->add_option("--basis-count", o.basis_count, "number of random bases (consecutive seeds)");
    sub->add_option("--out", o.out, "output file (a directory for suite JSON reports)");
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--P", o.P, "lower subset, 0-based indices such as 0,2 (- for empty)");
    sub->add_option("--R", o.R, "upper subset");
  };
  auto add_identity = [&](CLI::App* sub) {
    sub->add_option("--identity", o.identities, "identity id, or all");
    sub->add_option("--Q", o.Q, "middle subset");
  };
  auto add_suite = [&](CLI::App* sub) {
    add_common(sub);
    add_identity(sub);
    sub->add_option("--mode", o.mode, "exhaustive or sample");
    sub->add_option("--samples", o.samples, "sampled H per parameter point");
    sub->add_option("--lambda-samples", o.lambda_samples, "sampled parameter points per basis");
    sub->add_option("--bound", o.bound, "coordinate bound for sampled points");
    sub->add_flag("--wall-probe", o.wall_probe, "also evaluate on walls (reported only)");
    sub->add_option("--partition", o.partition, "ordered partition, blocks separated by |");
    sub->add_option("--lambda", o.lambda, "Λ as comma-separated rationals");
    sub->add_option("--lambda1", o.lambda1, "Λ1");
    sub->add_option("--lambda2", o.lambda2, "Λ2");
    sub->add_option("--H", o.h, "H; evaluates once at this point");
    sub->add_flag("--strict", o.strict, "reject parameters violating hypotheses");
  };

  auto* verify_cmd = app.add_subcommand("verify", "evaluate identities at given or sampled points");
  add_suite(verify_cmd);
  auto* certify_cmd = app.add_subcommand("certify", "check identities on every chamber of the H-arrangement");
  add_suite(certify_cmd);
  auto* chambers_cmd = app.add_subcommand("chambers", "dump the forms and cells of an identity");
  add_common(chambers_cmd);
  add_identity(chambers_cmd);
  auto* partitions_cmd = app.add_subcommand("partitions", "dump ordered partitions and their frames");
  add_common(partitions_cmd);
  auto* bases_cmd = app.add_subcommand("bases", "print Gram matrices");
  add_common(bases_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify_cmd) return run_suite_verb(o, SuiteMode::Sample);
    if (*certify_cmd) return run_suite_verb(o, SuiteMode::Exhaustive);
    if (*chambers_cmd) return run_chambers(o);
    if (*partitions_cmd) return run_partitions(o);
    if (*bases_cmd) return run_bases(o);
  } catch (const Error& e) {
    std::cerr << "error " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
