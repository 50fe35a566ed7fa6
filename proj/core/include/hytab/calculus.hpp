#pragma once

#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hytab/kripke.hpp"

namespace hytab {

enum class RuleTag : std::uint8_t { Root, Neg, And, Or, Dia, Box, At, Id, Eq, Irr, Ref, ASym, Trs, Ser };

inline constexpr std::size_t kRuleCount = 14;

// Short names used in traces and on the command line: ~ & | <> [] @ Id Eq Irr Ref A-sym Trs Ser.
std::string_view rule_name(RuleTag r);
// Accepts the short names plus the spelled-out aliases neg, and, or, dia, box, at, asym.
RuleTag rule_from_name(std::string_view name);

// Rules without premises, fired at the first occurrence of each nominal.
bool is_nullary(RuleTag r);
// Rules that introduce a fresh nominal.
bool is_generating(RuleTag r);

enum class TSetVariant : std::uint8_t { None, I4, PO };
enum class ClosureKind : std::uint8_t { None, Transitive, ReflexiveTransitive };

struct CalculusSpec {
  std::string name;
  std::bitset<kRuleCount> rules;
  bool restriction_d = false;
  TSetVariant tset = TSetVariant::None;
  ClosureKind closure = ClosureKind::None;
  FrameClass target = FrameClass::All;
  bool experimental = false;

  bool has(RuleTag r) const { return rules.test(static_cast<std::size_t>(r)); }

  static CalculusSpec tab();
  static CalculusSpec i4();
  static CalculusSpec i4d();
  static CalculusSpec po();
  // "k", "i4", "i4d", "po" (case-insensitive; TAB, TAB_I4, ... also accepted).
  static CalculusSpec by_name(std::string_view name);

  // Toggle list like "+Trs,-D": each item adds or removes a rule, D is restriction (D).
  // The result is marked experimental.
  CalculusSpec with_rules(std::string_view toggles) const;

  std::string describe() const;
};

std::string_view to_string(TSetVariant v);
std::string_view to_string(ClosureKind k);

}  // namespace hytab
