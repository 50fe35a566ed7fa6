#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hytab/branch.hpp"
#include "hytab/calculus.hpp"

namespace hytab {

struct Conclusion {
  Nominal prefix;
  Formula payload;
  bool accessibility = false;
};

// A candidate rule application: which rule, on which premises. Premise-free
// rules name the nominal they are applied to instead.
struct RuleSite {
  RuleTag rule = RuleTag::Root;
  std::vector<std::size_t> premises;
  Nominal nominal;

  friend bool operator==(const RuleSite&, const RuleSite&) = default;
};

struct RuleInstance {
  RuleSite site;
  // One list per resulting branch; only [|] has two.
  std::vector<std::vector<Conclusion>> alternatives;
};

// Scheduling priority; lower fires first among instances with the same latest premise.
int rule_priority(RuleTag r);
// Entry index the instance waits for: its latest premise, or the first
// occurrence of the nominal for premise-free rules.
std::size_t trigger_entry(const Branch& b, const RuleSite& site);

// Checks the premise shapes and side conditions, including (D) and the
// once-only flags, against the current branch. Returns the instance if it is
// applicable, i.e. it would add at least one formula. Fresh nominals in the
// conclusions are chosen for the current branch.
std::optional<RuleInstance> evaluate(const Branch& b, const CalculusSpec& cal, const RuleSite& site);

// Every rule site with the given entry as its latest premise, plus the
// premise-free sites for nominals first occurring in it. Shapes only; no
// applicability check.
std::vector<RuleSite> sites_triggered_by(const Branch& b, const CalculusSpec& cal, std::size_t entry);

// Exhaustive scan of the branch, independent of any agenda: every applicable
// instance, ordered by (trigger entry, priority).
std::vector<RuleInstance> applicable_rules(const Branch& b, const CalculusSpec& cal);

}  // namespace hytab
