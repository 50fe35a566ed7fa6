#pragma once

#include <set>
#include <string>
#include <string_view>

#include "hytab/error.hpp"
#include "hytab/formula.hpp"

namespace hytab {

struct ParseOptions {
  // Identifiers to treat as nominals in addition to those written after '@'.
  std::set<Nominal> nominals;
  // Identifiers declared as propositions; using one as a nominal is an error.
  std::set<std::string> props;
  // Accept the generated-nominal namespace n0, n1, ... (for re-reading traces).
  bool allow_reserved = false;
};

// Grammar (loosest to tightest binding):
//   formula := or ( ("->" | "<->") formula )?        right associative
//   or      := and ( "|" or )?
//   and     := unary ( "&" and )?
//   unary   := ("~" | "<>" | "[]") unary | "@" IDENT unary | "(" formula ")" | IDENT
// Unicode aliases: ¬ ∧ ∨ ◇ □ → ↔.
Formula parse(std::string_view text, const ParseOptions& options = {});

}  // namespace hytab
