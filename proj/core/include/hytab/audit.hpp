#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "hytab/branch.hpp"
#include "hytab/bulldoze.hpp"
#include "hytab/calculus.hpp"
#include "hytab/extract.hpp"
#include "hytab/tableau.hpp"

namespace hytab {

struct AuditFailure {
  std::string check;
  std::string detail;
};

struct AuditReport {
  std::set<std::string> checks;
  std::vector<AuditFailure> failures;

  bool passed() const { return failures.empty(); }
  void ran(const std::string& check) { checks.insert(check); }
  void fail(const std::string& check, std::string detail);
  void merge(const AuditReport& other);
  std::string summary() const;
};

// Invariants of any branch built by the calculus: subformula property,
// generation forest shape, incremental vs recomputed loop-check data,
// representative-map properties (the saturated-only one when saturated),
// and the closure witness.
AuditReport audit_branch(const Branch& b, const CalculusSpec& cal, bool saturated);

// audit_branch on every explored leaf.
AuditReport audit_tableau(const Tableau& t);

// Checks on a countermodel built from an open saturated branch: truth of the
// branch's root subformulas, representative map, closure recomputation,
// seriality, unnamed clusters, frame class of the bulldozed model, copy
// equivalence inside clusters, preservation under bulldozing, and stability
// of truncated evaluation up to max_copies.
AuditReport audit_countermodel(const Branch& b, const CalculusSpec& cal, const ExtractedModel& m,
                               const BulldozedModel& bm, std::size_t max_copies = 6);

}  // namespace hytab
