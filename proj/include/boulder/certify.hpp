#pragma once

// Exhaustive certification of an identity over H: every indicator is
// constant on each cell of the H-arrangement, so checking one exact interior
// point per cell decides the identity everywhere off the walls.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "boulder/chambers.hpp"
#include "boulder/error.hpp"
#include "boulder/verifiers.hpp"
#include "boulder/workspace.hpp"

namespace boulder {

inline constexpr int kMaxCertifyRank = 7;

struct CellOutcome {
  std::vector<std::int8_t> signs;
  QVector witness;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<Verdict> failed;  // first few failing verdicts
};

struct CertificateReport {
  IdentityId identity{};
  std::string basis;
  Params params;  // H unset
  std::size_t h_forms = 0;
  std::size_t lambda_forms = 0;
  std::vector<CellOutcome> cells;
  std::size_t checks = 0;
  std::size_t failed_checks = 0;
  std::size_t failed_cells = 0;
  std::size_t unasserted_failures = 0;  // failing verdicts whose hypothesis is violated
  bool pass = false;
};

struct CertifyOptions {
  std::size_t cell_budget = kDefaultCellBudget;
  std::size_t recorded_failures = 4;
  /// Called with every cell and the verdicts evaluated at its witness.
  std::function<void(const Cell&, const std::vector<Verdict>&)> observer;
};

/// Failures are only asserted where the identity's hypotheses hold.
inline bool asserted(const Verdict& v) { return v.hypothesis != "violated"; }

/// Throws NonRegularLambda unless every Λ-side form is nonzero at each
/// parameter point that is set.
inline void require_regular_parameters(const FormSet& lambda_forms, const Params& prm) {
  for (const auto* p : {&prm.lambda, &prm.lambda1, &prm.lambda2}) {
    if (!*p) continue;
    for (std::size_t i = 0; i < lambda_forms.size(); ++i)
      if (lambda_forms.sign_at(i, **p) == 0)
        throw Error(Errc::NonRegularLambda, "Λ = " + to_string(**p) + " lies on a wall");
  }
}

/// Evaluates the identity at the witness of each given cell.
inline CertificateReport certify_cells(IdentityId id, const Workspace& ws, const Params& prm,
                                       const std::vector<Cell>& cells, std::size_t h_forms,
                                       const CertifyOptions& opt = {}) {
  CertificateReport rep;
  rep.identity = id;
  rep.basis = ws.name();
  rep.params = prm;
  rep.params.h.reset();
  rep.h_forms = h_forms;
  rep.cells.reserve(cells.size());
  Params at = rep.params;
  for (const Cell& cell : cells) {
    at.h = cell.witness;
    const std::vector<Verdict> vs = verify(id, ws, at, Evaluation::Table);
    if (opt.observer) opt.observer(cell, vs);
    CellOutcome out{cell.signs, cell.witness, vs.size(), 0, {}};
    for (const Verdict& v : vs) {
      if (v.pass) continue;
      if (!asserted(v)) {
        ++rep.unasserted_failures;
        continue;
      }
      ++out.failures;
      if (out.failed.size() < opt.recorded_failures) out.failed.push_back(v);
    }
    rep.checks += out.checks;
    rep.failed_checks += out.failures;
    if (out.failures) ++rep.failed_cells;
    rep.cells.push_back(std::move(out));
  }
  rep.pass = rep.failed_checks == 0 && !rep.cells.empty();
  return rep;
}

/// The H-arrangement of an identity, with the rank guard applied.
inline std::vector<Cell> identity_cells(const FormSets& forms, int rank, std::size_t budget = kDefaultCellBudget) {
  if (rank > kMaxCertifyRank)
    throw Error(Errc::CellBudgetExceeded, "exhaustive certification is limited to rank " +
                                              std::to_string(kMaxCertifyRank));
  return enumerate_cells(forms.h_forms, budget);
}

inline CertificateReport certify(IdentityId id, const Workspace& ws, const Params& prm,
                                 const CertifyOptions& opt = {}) {
  const FormSets forms = collect_forms(ws, id, prm);
  require_regular_parameters(forms.lambda_forms, prm);
  const std::vector<Cell> cells = identity_cells(forms, ws.rank(), opt.cell_budget);
  CertificateReport rep = certify_cells(id, ws, prm, cells, forms.h_forms.size(), opt);
  rep.lambda_forms = forms.lambda_forms.size();
  return rep;
}

}  // namespace boulder
