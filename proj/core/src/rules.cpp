#include "hytab/rules.hpp"

#include <algorithm>
#include <tuple>

namespace hytab {

int rule_priority(RuleTag r) {
  switch (r) {
    case RuleTag::And:
      return 0;
    case RuleTag::Or:
      return 1;
    case RuleTag::At:
      return 2;
    case RuleTag::Neg:
      return 3;
    case RuleTag::Id:
      return 4;
    case RuleTag::Eq:
      return 5;
    case RuleTag::Irr:
      return 6;
    case RuleTag::Ref:
      return 7;
    case RuleTag::ASym:
      return 8;
    case RuleTag::Box:
      return 9;
    case RuleTag::Trs:
      return 10;
    case RuleTag::Ser:
      return 11;
    case RuleTag::Dia:
      return 12;
    case RuleTag::Root:
      break;
  }
  return 99;
}

std::size_t trigger_entry(const Branch& b, const RuleSite& site) {
  if (site.premises.empty()) return b.intro_entry(site.nominal);
  return *std::max_element(site.premises.begin(), site.premises.end());
}

namespace {

bool is_nominal_dia(const Formula& f) { return f.kind() == Kind::Dia && f.child().kind() == Kind::Nom; }

bool unary_shape(RuleTag r, const PrefixedFormula& e) {
  const Formula& f = e.payload;
  switch (r) {
    case RuleTag::Neg:
      return f.kind() == Kind::Neg && f.child().kind() == Kind::Nom;
    case RuleTag::And:
      return f.kind() == Kind::And;
    case RuleTag::Or:
      return f.kind() == Kind::Or;
    case RuleTag::At:
      return f.kind() == Kind::At;
    case RuleTag::Dia:
      return f.kind() == Kind::Dia && !e.accessibility;
    default:
      return false;
  }
}

// Box and Trs: (@i[]a, @i<>j); Id: (@i j, @i a) with @i a not an accessibility formula.
bool binary_shape(RuleTag r, const PrefixedFormula& p, const PrefixedFormula& q) {
  if (p.prefix != q.prefix) return false;
  switch (r) {
    case RuleTag::Box:
    case RuleTag::Trs:
      return p.payload.kind() == Kind::Box && is_nominal_dia(q.payload);
    case RuleTag::Id:
      return p.payload.kind() == Kind::Nom && !q.accessibility;
    default:
      return false;
  }
}

constexpr RuleTag kUnary[] = {RuleTag::Neg, RuleTag::And, RuleTag::Or, RuleTag::At, RuleTag::Dia};
constexpr RuleTag kBinary[] = {RuleTag::Box, RuleTag::Trs, RuleTag::Id};
constexpr RuleTag kNullary[] = {RuleTag::Eq, RuleTag::Irr, RuleTag::Ref, RuleTag::ASym, RuleTag::Ser};

}  // namespace

std::optional<RuleInstance> evaluate(const Branch& b, const CalculusSpec& cal, const RuleSite& site) {
  if (!cal.has(site.rule)) return std::nullopt;
  RuleInstance inst{site, {}};
  auto single = [&](std::vector<Conclusion> cs) -> std::optional<RuleInstance> {
    const bool adds = std::any_of(cs.begin(), cs.end(), [&](const Conclusion& c) {
      return !b.contains(c.prefix, c.payload);
    });
    if (!adds) return std::nullopt;
    inst.alternatives.push_back(std::move(cs));
    return inst;
  };
  auto loop_ok = [&](const Nominal& i) { return !cal.restriction_d || b.quasi_urfather(i); };

  if (is_nullary(site.rule)) {
    if (!site.premises.empty() || !b.occurs(site.nominal)) return std::nullopt;
    const Nominal& i = site.nominal;
    const Formula ni = Formula::nom(i);
    switch (site.rule) {
      case RuleTag::Eq:
        return single({{i, ni}});
      case RuleTag::Irr:
        return single({{i, Formula::box(Formula::neg(ni))}});
      case RuleTag::Ref:
        // Marked like [<>]'s output so that [Id] never copies it and [<>] never
        // expands it; otherwise two equal quasi-urfathers keep feeding each other.
        return single({{i, Formula::dia(ni), true}});
      case RuleTag::ASym:
        return single({{i, Formula::box(Formula::disj(ni, Formula::box(Formula::neg(ni))))}});
      case RuleTag::Ser:
        if (b.nullary_fired(RuleTag::Ser, i) || !loop_ok(i)) return std::nullopt;
        return single({{i, Formula::dia(Formula::nom(b.fresh())), true}});
      default:
        return std::nullopt;
    }
  }

  for (std::size_t p : site.premises) {
    if (p >= b.size()) return std::nullopt;
  }
  if (site.premises.size() == 1) {
    const PrefixedFormula& e = b[site.premises[0]];
    if (!unary_shape(site.rule, e)) return std::nullopt;
    const Formula& f = e.payload;
    switch (site.rule) {
      case RuleTag::Neg: {
        const Nominal& j = f.child().name();
        return single({{j, Formula::nom(j)}});
      }
      case RuleTag::And:
        return single({{e.prefix, f.lhs()}, {e.prefix, f.rhs()}});
      case RuleTag::Or:
        if (b.contains(e.prefix, f.lhs()) || b.contains(e.prefix, f.rhs())) return std::nullopt;
        inst.alternatives = {{{e.prefix, f.lhs()}}, {{e.prefix, f.rhs()}}};
        return inst;
      case RuleTag::At:
        return single({{f.name(), f.child()}});
      case RuleTag::Dia: {
        if (b.dia_fired(site.premises[0]) || !loop_ok(e.prefix)) return std::nullopt;
        const Nominal j = b.fresh();
        return single({{e.prefix, Formula::dia(Formula::nom(j)), true}, {j, f.child()}});
      }
      default:
        return std::nullopt;
    }
  }
  if (site.premises.size() == 2) {
    const PrefixedFormula& p = b[site.premises[0]];
    const PrefixedFormula& q = b[site.premises[1]];
    if (!binary_shape(site.rule, p, q)) return std::nullopt;
    switch (site.rule) {
      case RuleTag::Box:
        return single({{q.payload.child().name(), p.payload.child()}});
      case RuleTag::Trs:
        return single({{q.payload.child().name(), p.payload}});
      case RuleTag::Id:
        return single({{p.payload.name(), q.payload}});
      default:
        return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<RuleSite> sites_triggered_by(const Branch& b, const CalculusSpec& cal, std::size_t entry) {
  std::vector<RuleSite> out;
  const PrefixedFormula& e = b[entry];
  for (RuleTag r : kUnary) {
    if (cal.has(r) && unary_shape(r, e)) out.push_back({r, {entry}, {}});
  }
  const auto& same = b.at_prefix(e.prefix);
  for (RuleTag r : kBinary) {
    if (!cal.has(r)) continue;
    for (std::size_t other : same) {
      if (other > entry) break;
      if (binary_shape(r, e, b[other])) out.push_back({r, {entry, other}, {}});
      if (other != entry && binary_shape(r, b[other], e)) out.push_back({r, {other, entry}, {}});
    }
  }
  for (const auto& n : b.nominals()) {
    if (b.intro_entry(n) != entry) continue;
    for (RuleTag r : kNullary) {
      if (cal.has(r)) out.push_back({r, {}, n});
    }
  }
  return out;
}

std::vector<RuleInstance> applicable_rules(const Branch& b, const CalculusSpec& cal) {
  std::vector<RuleSite> sites;
  for (std::size_t k = 0; k < b.size(); ++k) {
    for (RuleTag r : kUnary) sites.push_back({r, {k}, {}});
  }
  for (const auto& n : b.nominals()) {
    const auto& same = b.at_prefix(n);
    for (std::size_t x : same)
      for (std::size_t y : same)
        for (RuleTag r : kBinary) sites.push_back({r, {x, y}, {}});
    for (RuleTag r : kNullary) sites.push_back({r, {}, n});
  }
  std::vector<RuleInstance> out;
  for (const auto& s : sites) {
    if (auto inst = evaluate(b, cal, s)) out.push_back(std::move(*inst));
  }
  std::stable_sort(out.begin(), out.end(), [&](const RuleInstance& a, const RuleInstance& c) {
    return std::make_tuple(trigger_entry(b, a.site), rule_priority(a.site.rule)) <
           std::make_tuple(trigger_entry(b, c.site), rule_priority(c.site.rule));
  });
  return out;
}

}  // namespace hytab
