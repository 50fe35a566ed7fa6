#pragma once

#include <cstddef>
#include <vector>

#include "hytab/calculus.hpp"
#include "hytab/formula.hpp"

namespace hytab {

struct Origin {
  RuleTag rule = RuleTag::Root;
  // Entry indices of the premises, in the order of the rule schema.
  std::vector<std::size_t> premises;
};

// A branch entry @prefix payload.
struct PrefixedFormula {
  Nominal prefix;
  Formula payload;
  // Set on the @i<>j produced by a generating rule for its fresh j, and on [Ref]'s @i<>i.
  bool accessibility = false;
  Origin origin;
  std::size_t seq = 0;

  Formula formula() const { return Formula::at(prefix, payload); }
};

// @i a is a prefixed subformula of @j b iff a is a subformula of b.
bool prefixed_subformula(const PrefixedFormula& a, const PrefixedFormula& b);

}  // namespace hytab
