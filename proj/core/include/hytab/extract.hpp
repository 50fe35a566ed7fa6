#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hytab/branch.hpp"
#include "hytab/calculus.hpp"
#include "hytab/kripke.hpp"

namespace hytab {

// K: basic calculus, worlds are classes of nominals linked by @i j, no closure.
// I4: worlds are identity urfathers, relation is the transitive closure.
// PO: as I4 with the reflexive-transitive closure.
enum class ModelVariant { K, I4, PO };

std::string_view to_string(ModelVariant v);
ModelVariant model_variant(const CalculusSpec& cal);

struct ExtractedModel {
  KripkeModel base;
  // Edges before closure.
  std::vector<std::pair<WorldId, WorldId>> r_e;
  // Representative nominal of each nominal in its domain; worlds are named after representatives.
  std::map<Nominal, Nominal> urfather_map;
  ModelVariant variant = ModelVariant::I4;
  Nominal root_nominal;

  bool in_domain(const Nominal& i) const { return urfather_map.count(i) != 0; }
  WorldId world_of(const Nominal& i) const;
};

// Requires an open branch on which no rule applies (PreconditionError otherwise).
ExtractedModel extract(const Branch& b, const CalculusSpec& cal);

struct TruthViolation {
  std::size_t entry = 0;
  std::string detail;
};

struct TruthReport {
  std::size_t checked = 0;
  std::vector<TruthViolation> violations;
  bool passed() const { return violations.empty(); }
};

// For every entry @i a with a a subformula of the root payload and i in the
// domain of the representative map: a must hold at the representative of i.
TruthReport check_truth_lemma(const Branch& b, const ExtractedModel& m);

// Worlds whose T-set contains a nominal.
std::set<WorldId> named_worlds(const Branch& b, const ExtractedModel& m);

}  // namespace hytab
