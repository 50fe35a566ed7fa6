#include "support.hpp"

#include <cstdint>
#include <functional>

namespace hytab::testing {

namespace {

Formula random_atom(std::mt19937_64& rng, const RandomFormulaOptions& o) {
  const std::size_t total = o.props.size() + o.nominals.size();
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
  return k < o.props.size() ? Formula::prop(o.props[k]) : Formula::nom(o.nominals[k - o.props.size()]);
}

Formula grow(std::mt19937_64& rng, const RandomFormulaOptions& o, std::size_t k) {
  if (k == 0) return random_atom(rng, o);
  if (k == 1 && std::bernoulli_distribution(0.3)(rng)) return Formula::neg(random_atom(rng, o));
  const bool with_at = !o.nominals.empty();
  switch (std::uniform_int_distribution<int>(0, with_at ? 4 : 3)(rng)) {
    case 0:
    case 1: {
      const std::size_t left = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
      Formula a = grow(rng, o, left);
      Formula b = grow(rng, o, k - 1 - left);
      return std::bernoulli_distribution(0.5)(rng) ? Formula::conj(a, b) : Formula::disj(a, b);
    }
    case 2:
      return Formula::dia(grow(rng, o, k - 1));
    case 3:
      return Formula::box(grow(rng, o, k - 1));
    default: {
      const auto& i = o.nominals[std::uniform_int_distribution<std::size_t>(0, o.nominals.size() - 1)(rng)];
      return Formula::at(i, grow(rng, o, k - 1));
    }
  }
}

}  // namespace

Formula random_nnf(std::mt19937_64& rng, const RandomFormulaOptions& options) {
  const std::size_t k = std::uniform_int_distribution<std::size_t>(0, options.max_connectives)(rng);
  return grow(rng, options, k);
}

TinyModel tiny(const KripkeModel& m) {
  TinyModel t;
  t.n = m.size();
  t.rel.assign(t.n, std::vector<bool>(t.n, false));
  for (auto [a, b] : m.edges()) t.rel[a][b] = true;
  for (const auto& [p, bits] : m.props()) {
    t.val[p] = bits;
    t.val[p].resize(t.n, false);
  }
  for (const auto& [i, w] : m.nominals()) t.noms[i] = w;
  return t;
}

KripkeModel to_kripke(const TinyModel& t) {
  KripkeModel m;
  for (std::size_t w = 0; w < t.n; ++w) m.add_world("w" + std::to_string(w));
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b)
      if (t.rel[a][b]) m.add_edge(a, b);
  for (const auto& [p, bits] : t.val) {
    m.declare_prop(p);
    for (std::size_t w = 0; w < t.n; ++w)
      if (bits[w]) m.set_prop(p, w);
  }
  for (const auto& [i, w] : t.noms) m.set_nominal(i, w);
  return m;
}

bool naive_eval(const TinyModel& m, std::size_t w, const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop: {
      auto it = m.val.find(f.name());
      return it != m.val.end() && it->second[w];
    }
    case Kind::Nom:
      return m.noms.at(f.name()) == w;
    case Kind::Neg:
      return !naive_eval(m, w, f.child());
    case Kind::And:
      return naive_eval(m, w, f.lhs()) && naive_eval(m, w, f.rhs());
    case Kind::Or:
      return naive_eval(m, w, f.lhs()) || naive_eval(m, w, f.rhs());
    case Kind::Dia:
      for (std::size_t v = 0; v < m.n; ++v)
        if (m.rel[w][v] && naive_eval(m, v, f.child())) return true;
      return false;
    case Kind::Box:
      for (std::size_t v = 0; v < m.n; ++v)
        if (m.rel[w][v] && !naive_eval(m, v, f.child())) return false;
      return true;
    case Kind::At:
      return naive_eval(m, m.noms.at(f.name()), f.child());
  }
  return false;
}

bool relation_in_class(const std::vector<std::vector<bool>>& rel, FrameClass c) {
  const std::size_t n = rel.size();
  bool serial = true, reflexive = true, irreflexive = true, antisym = true, transitive = true;
  for (std::size_t x = 0; x < n; ++x) {
    bool any = false;
    for (std::size_t y = 0; y < n; ++y) {
      any = any || rel[x][y];
      if (x != y && rel[x][y] && rel[y][x]) antisym = false;
      for (std::size_t z = 0; z < n; ++z)
        if (rel[x][y] && rel[y][z] && !rel[x][z]) transitive = false;
    }
    serial = serial && any;
    reflexive = reflexive && rel[x][x];
    irreflexive = irreflexive && !rel[x][x];
  }
  switch (c) {
    case FrameClass::All:
      return true;
    case FrameClass::SPO:
      return irreflexive && transitive;
    case FrameClass::USPO:
      return serial && irreflexive && transitive;
    case FrameClass::PO:
      return reflexive && antisym && transitive;
  }
  return false;
}

namespace {

// First falsifying (relation, nominal placement, valuation) over relations
// accepted by keep and nominal placements allowed by placement.
template <class Keep, class Placement>
std::optional<TinyCountermodel> enumerate(const Formula& f, std::size_t n, Keep keep, Placement placement) {
  const auto props_set = props_of(f);
  const auto noms_set = nominals_of(f);
  const std::vector<std::string> props(props_set.begin(), props_set.end());
  const std::vector<std::string> noms(noms_set.begin(), noms_set.end());

  TinyModel m;
  m.n = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n * n)); ++mask) {
    m.rel.assign(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < n * n; ++k) m.rel[k / n][k % n] = (mask >> k) & 1U;
    if (!keep(m.rel)) continue;

    std::function<std::optional<TinyCountermodel>(std::size_t)> place = [&](std::size_t k) -> std::optional<TinyCountermodel> {
      if (k < noms.size()) {
        for (std::size_t w = 0; w < n; ++w) {
          if (!placement.nominal_ok(m.rel, w)) continue;
          m.noms[noms[k]] = w;
          if (auto r = place(k + 1)) return r;
        }
        return std::nullopt;
      }
      for (std::uint64_t vals = 0; vals < (std::uint64_t{1} << (n * props.size())); ++vals) {
        for (std::size_t p = 0; p < props.size(); ++p) {
          auto& bits = m.val[props[p]];
          bits.assign(n, false);
          for (std::size_t w = 0; w < n; ++w) bits[w] = (vals >> (p * n + w)) & 1U;
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (!naive_eval(m, w, f)) return TinyCountermodel{m, w};
        }
      }
      return std::nullopt;
    };
    if (auto r = place(0)) return r;
  }
  return std::nullopt;
}

struct AnyWorld {
  bool nominal_ok(const std::vector<std::vector<bool>>&, std::size_t) const { return true; }
};
struct IrreflexiveWorld {
  bool nominal_ok(const std::vector<std::vector<bool>>& rel, std::size_t w) const { return !rel[w][w]; }
};

}  // namespace

std::optional<TinyCountermodel> brute_countermodel(const Formula& f, FrameClass c, std::size_t n) {
  return enumerate(f, n, [c](const auto& rel) { return relation_in_class(rel, c); }, AnyWorld{});
}

std::optional<TinyCountermodel> serial_unravelling_countermodel(const Formula& f, std::size_t n) {
  auto keep = [](const std::vector<std::vector<bool>>& rel) {
    bool serial = true, transitive = true;
    const std::size_t m = rel.size();
    for (std::size_t x = 0; x < m; ++x) {
      bool any = false;
      for (std::size_t y = 0; y < m; ++y) {
        any = any || rel[x][y];
        for (std::size_t z = 0; z < m; ++z)
          if (rel[x][y] && rel[y][z] && !rel[x][z]) transitive = false;
      }
      serial = serial && any;
    }
    return serial && transitive;
  };
  return enumerate(f, n, keep, IrreflexiveWorld{});
}

}  // namespace hytab::testing

namespace hytab::testing {

std::vector<std::string> check_derivation(const Branch& b, const CalculusSpec& cal) {
  std::vector<std::string> problems;
  std::set<Nominal> seen;
  auto note = [&](const Formula& f) {
    for (const auto& n : nominals_of(f)) seen.insert(n);
  };
  const auto& root = b[0];
  if (root.origin.rule != RuleTag::Root || nominals_of(root.payload).count(root.prefix)) {
    problems.push_back("bad root");
  }
  note(root.formula());

  for (std::size_t k = 1; k < b.size(); ++k) {
    const PrefixedFormula& e = b[k];
    const auto& ps = e.origin.premises;
    const std::string where = std::to_string(k + 1) + ". " + to_string(e.formula());
    auto bad = [&](const std::string& why) { problems.push_back(where + ": " + why); };
    auto premise = [&](std::size_t n) -> const PrefixedFormula* {
      if (n >= ps.size() || ps[n] >= k) return nullptr;
      return &b[ps[n]];
    };
    if (!cal.has(e.origin.rule)) bad("rule not in the calculus");
    const PrefixedFormula* p0 = premise(0);
    const PrefixedFormula* p1 = premise(1);
    const Formula& f = e.payload;
    const Nominal& i = e.prefix;
    auto is_new = [&](const Nominal& j) { return !seen.count(j); };
    const bool marks = e.origin.rule == RuleTag::Ser || e.origin.rule == RuleTag::Ref ||
                       (e.origin.rule == RuleTag::Dia && f.kind() == Kind::Dia && k + 1 < b.size() &&
                        b[k + 1].origin.rule == RuleTag::Dia && b[k + 1].origin.premises == ps);
    if (marks != e.accessibility) bad(e.accessibility ? "wrongly marked as accessibility" : "accessibility mark missing");

    bool ok = false;
    switch (e.origin.rule) {
      case RuleTag::Root:
        break;
      case RuleTag::And:
        ok = p0 && p0->payload.kind() == Kind::And && p0->prefix == i && (p0->payload.lhs() == f || p0->payload.rhs() == f);
        break;
      case RuleTag::Or:
        ok = p0 && p0->payload.kind() == Kind::Or && p0->prefix == i && (p0->payload.lhs() == f || p0->payload.rhs() == f);
        break;
      case RuleTag::At:
        ok = p0 && p0->payload.kind() == Kind::At && p0->payload.name() == i && p0->payload.child() == f;
        break;
      case RuleTag::Neg:
        ok = p0 && p0->payload.kind() == Kind::Neg && p0->payload.child().kind() == Kind::Nom &&
             p0->payload.child().name() == i && f == Formula::nom(i);
        break;
      case RuleTag::Dia: {
        ok = p0 && !p0->accessibility && p0->payload.kind() == Kind::Dia;
        if (!ok) break;
        if (e.accessibility) {
          ok = p0->prefix == i && f.kind() == Kind::Dia && f.child().kind() == Kind::Nom && is_new(f.child().name());
        } else {
          // Conclusion @j a right after its accessibility formula @i <>j.
          const PrefixedFormula& acc = b[k - 1];
          ok = acc.accessibility && acc.origin.rule == RuleTag::Dia && acc.origin.premises == ps &&
               acc.payload.child().name() == i && p0->payload.child() == f;
        }
        break;
      }
      case RuleTag::Box:
      case RuleTag::Trs:
        ok = p0 && p1 && p0->payload.kind() == Kind::Box && p1->payload.kind() == Kind::Dia &&
             p1->payload.child().kind() == Kind::Nom && p0->prefix == p1->prefix && p1->payload.child().name() == i &&
             f == (e.origin.rule == RuleTag::Box ? p0->payload.child() : p0->payload);
        break;
      case RuleTag::Id:
        ok = p0 && p1 && p0->payload == Formula::nom(i) && p0->prefix == p1->prefix && !p1->accessibility &&
             p1->payload == f;
        break;
      case RuleTag::Eq:
        ok = seen.count(i) && f == Formula::nom(i);
        break;
      case RuleTag::Irr:
        ok = seen.count(i) && f == Formula::box(Formula::neg(Formula::nom(i)));
        break;
      case RuleTag::Ref:
        ok = seen.count(i) && f == Formula::dia(Formula::nom(i));
        break;
      case RuleTag::ASym:
        ok = seen.count(i) &&
             f == Formula::box(Formula::disj(Formula::nom(i), Formula::box(Formula::neg(Formula::nom(i)))));
        break;
      case RuleTag::Ser:
        ok = seen.count(i) && f.kind() == Kind::Dia && f.child().kind() == Kind::Nom && is_new(f.child().name());
        break;
    }
    if (!ok) bad(std::string("does not follow by ") + std::string(rule_name(e.origin.rule)));
    note(e.formula());
  }
  return problems;
}

}  // namespace hytab::testing
