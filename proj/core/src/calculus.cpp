#include "hytab/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "hytab/error.hpp"

namespace hytab {

namespace {

struct RuleName {
  RuleTag tag;
  std::string_view name;
  std::string_view alias;
};

constexpr RuleName kNames[] = {
    {RuleTag::Root, "root", "root"}, {RuleTag::Neg, "~", "neg"},   {RuleTag::And, "&", "and"},
    {RuleTag::Or, "|", "or"},        {RuleTag::Dia, "<>", "dia"},  {RuleTag::Box, "[]", "box"},
    {RuleTag::At, "@", "at"},        {RuleTag::Id, "Id", "id"},    {RuleTag::Eq, "Eq", "eq"},
    {RuleTag::Irr, "Irr", "irr"},    {RuleTag::Ref, "Ref", "ref"}, {RuleTag::ASym, "A-sym", "asym"},
    {RuleTag::Trs, "Trs", "trs"},    {RuleTag::Ser, "Ser", "ser"},
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

CalculusSpec make(std::string name, std::initializer_list<RuleTag> rules) {
  CalculusSpec spec;
  spec.name = std::move(name);
  for (RuleTag r : rules) spec.rules.set(static_cast<std::size_t>(r));
  return spec;
}

}  // namespace

std::string_view rule_name(RuleTag r) { return kNames[static_cast<std::size_t>(r)].name; }

RuleTag rule_from_name(std::string_view name) {
  const std::string key = lower(name);
  for (const auto& n : kNames) {
    if (lower(n.name) == key || n.alias == key) return n.tag;
  }
  throw Error("unknown rule '" + std::string(name) + "'");
}

bool is_nullary(RuleTag r) {
  return r == RuleTag::Eq || r == RuleTag::Irr || r == RuleTag::Ref || r == RuleTag::ASym || r == RuleTag::Ser;
}

bool is_generating(RuleTag r) { return r == RuleTag::Dia || r == RuleTag::Ser; }

CalculusSpec CalculusSpec::tab() {
  using R = RuleTag;
  auto spec = make("TAB", {R::Neg, R::And, R::Or, R::Dia, R::Box, R::At, R::Id});
  spec.target = FrameClass::All;
  return spec;
}

CalculusSpec CalculusSpec::i4() {
  using R = RuleTag;
  auto spec = make("TAB_I4", {R::And, R::Or, R::Dia, R::Box, R::At, R::Id, R::Eq, R::Irr, R::Trs});
  spec.restriction_d = true;
  spec.tset = TSetVariant::I4;
  spec.closure = ClosureKind::Transitive;
  spec.target = FrameClass::SPO;
  return spec;
}

CalculusSpec CalculusSpec::i4d() {
  auto spec = i4();
  spec.name = "TAB_I4D";
  spec.rules.set(static_cast<std::size_t>(RuleTag::Ser));
  spec.target = FrameClass::USPO;
  return spec;
}

CalculusSpec CalculusSpec::po() {
  using R = RuleTag;
  auto spec = make("TAB_PO", {R::And, R::Or, R::Dia, R::Box, R::At, R::Id, R::Eq, R::Ref, R::ASym, R::Trs});
  spec.restriction_d = true;
  spec.tset = TSetVariant::PO;
  spec.closure = ClosureKind::ReflexiveTransitive;
  spec.target = FrameClass::PO;
  return spec;
}

CalculusSpec CalculusSpec::by_name(std::string_view name) {
  const std::string key = lower(name);
  if (key == "k" || key == "tab") return tab();
  if (key == "i4" || key == "tab_i4") return i4();
  if (key == "i4d" || key == "tab_i4d") return i4d();
  if (key == "po" || key == "tab_po") return po();
  throw Error("unknown calculus '" + std::string(name) + "' (expected k, i4, i4d or po)");
}

CalculusSpec CalculusSpec::with_rules(std::string_view toggles) const {
  CalculusSpec out = *this;
  out.experimental = true;
  std::size_t pos = 0;
  while (pos < toggles.size()) {
    std::size_t comma = toggles.find(',', pos);
    if (comma == std::string_view::npos) comma = toggles.size();
    std::string_view item = toggles.substr(pos, comma - pos);
    pos = comma + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    if (item.front() != '+' && item.front() != '-') {
      throw Error("rule toggle '" + std::string(item) + "' must start with + or -");
    }
    const bool on = item.front() == '+';
    item.remove_prefix(1);
    if (item == "D" || item == "d") {
      out.restriction_d = on;
      continue;
    }
    const RuleTag r = rule_from_name(item);
    if (r == RuleTag::Root) throw Error("the root is not a rule");
    out.rules.set(static_cast<std::size_t>(r), on);
  }
  // Loop checking needs some T-set; fall back to the irreflexive variant.
  if (out.restriction_d && out.tset == TSetVariant::None) out.tset = TSetVariant::I4;
  out.name += "[" + std::string(toggles) + "]";
  return out;
}

std::string CalculusSpec::describe() const {
  std::string out = name + " rules:";
  for (std::size_t r = 1; r < kRuleCount; ++r) {
    if (rules.test(r)) out += " " + std::string(rule_name(static_cast<RuleTag>(r)));
  }
  if (restriction_d) out += " (D)";
  return out;
}

std::string_view to_string(TSetVariant v) {
  switch (v) {
    case TSetVariant::None:
      return "none";
    case TSetVariant::I4:
      return "I4";
    case TSetVariant::PO:
      return "PO";
  }
  return "?";
}

std::string_view to_string(ClosureKind k) {
  switch (k) {
    case ClosureKind::None:
      return "none";
    case ClosureKind::Transitive:
      return "transitive";
    case ClosureKind::ReflexiveTransitive:
      return "reflexive-transitive";
  }
  return "?";
}

}  // namespace hytab
