#include "hytab/audit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hytab/loopcheck.hpp"

namespace hytab {

void AuditReport::fail(const std::string& check, std::string detail) {
  checks.insert(check);
  failures.push_back({check, std::move(detail)});
}

void AuditReport::merge(const AuditReport& other) {
  checks.insert(other.checks.begin(), other.checks.end());
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string AuditReport::summary() const {
  std::ostringstream os;
  os << checks.size() << " checks, " << failures.size() << " failures";
  for (const auto& f : failures) os << "\n  " << f.check << ": " << f.detail;
  return os.str();
}

namespace {

std::string show(const Branch& b, std::size_t k) {
  return std::to_string(k + 1) + ". " + to_string(b[k].formula());
}

// Payload shapes a rule outside the basic set can put on a branch.
bool extra_payload(const Formula& f, const CalculusSpec& cal) {
  const auto is_nom = [](const Formula& g) { return g.kind() == Kind::Nom; };
  const auto box_not_nom = [&](const Formula& g) {
    return g.kind() == Kind::Box && g.child().kind() == Kind::Neg && is_nom(g.child().child());
  };
  const auto not_nom = [&](const Formula& g) { return g.kind() == Kind::Neg && is_nom(g.child()); };
  if ((cal.has(RuleTag::Eq) || cal.has(RuleTag::Irr) || cal.has(RuleTag::ASym)) && is_nom(f)) return true;
  if ((cal.has(RuleTag::Irr) || cal.has(RuleTag::ASym)) && (box_not_nom(f) || not_nom(f))) return true;
  if (cal.has(RuleTag::ASym)) {
    if (f.kind() == Kind::Or && is_nom(f.lhs()) && box_not_nom(f.rhs()) && f.lhs() == f.rhs().child().child()) {
      return true;
    }
    if (f.kind() == Kind::Box && f.child().kind() == Kind::Or) return extra_payload(f.child(), cal);
  }
  if ((cal.has(RuleTag::Ser) || cal.has(RuleTag::Ref)) && (is_nom(f) || (f.kind() == Kind::Dia && is_nom(f.child())))) {
    return true;
  }
  return false;
}

void check_subformulas(const Branch& b, const CalculusSpec& cal, AuditReport& r) {
  r.ran("subformula-property");
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto& e = b[k];
    if (e.accessibility || b.universe().root_subformula(e.payload) || extra_payload(e.payload, cal)) continue;
    r.fail("subformula-property", show(b, k) + " is not a prefixed subformula of an admissible formula");
  }
}

void check_generation(const Branch& b, AuditReport& r) {
  r.ran("generation-forest");
  const GenerationGraph g(b);
  std::string problem;
  if (!g.is_forest(&problem)) r.fail("generation-forest", problem);
  for (const auto& n : b.nominals()) {
    const auto ps = g.parents(n);
    const auto p = b.parent(n);
    if (ps.size() == 1 && p != ps.front()) r.fail("generation-forest", "recorded generator of " + n + " disagrees");
    if (ps.empty() && p) r.fail("generation-forest", n + " has a recorded generator but no accessibility formula");
  }
  r.ran("no-dia-on-accessibility");
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto& o = b[k].origin;
    if (o.rule == RuleTag::Dia && !o.premises.empty() && b[o.premises.front()].accessibility) {
      r.fail("no-dia-on-accessibility", show(b, k) + " came from an accessibility formula");
    }
  }
}

void check_closure(const Branch& b, AuditReport& r) {
  r.ran("closure-witness");
  const auto scratch = is_closed(b);
  const auto& incremental = b.closure_witness();
  if (scratch.has_value() != incremental.has_value()) {
    r.fail("closure-witness", "incremental and recomputed closure disagree");
    return;
  }
  if (!incremental) return;
  const auto [x, y] = *incremental;
  if (b[x].prefix != b[y].prefix || b[y].payload != complement(b[x].payload)) {
    r.fail("closure-witness", show(b, x) + " and " + show(b, y) + " are not complementary");
  }
}

void check_loopcheck(const Branch& b, const CalculusSpec& cal, bool saturated, AuditReport& r) {
  const TSetVariant variant = cal.tset;
  const auto& noms = b.nominals();

  r.ran("t-sets");
  std::map<Nominal, std::set<Formula>> ts;
  for (const auto& n : noms) {
    ts[n] = t_set(b, n, variant).all();
    if (ts[n] != b.t_set(n)) r.fail("t-sets", "incremental T-set of " + n + " differs from the recomputed one");
  }

  r.ran("quasi-urfathers");
  const GenerationGraph g(b);
  std::map<Nominal, bool> qu;
  for (const auto& n : noms) {
    const auto chain = g.ancestors_or_self(n);
    std::set<std::set<Formula>> seen;
    bool ok = true;
    for (const auto& a : chain) ok = seen.insert(ts[a]).second && ok;
    qu[n] = ok;
    if (ok != b.quasi_urfather(n)) r.fail("quasi-urfathers", "quasi-urfather status of " + n + " differs");
  }

  r.ran("identity-urfathers");
  std::map<Nominal, Nominal> v;
  for (const auto& n : noms) {
    std::optional<Nominal> u;
    for (const auto& j : noms) {
      if (ts[j] == ts[n] && qu[j]) {
        u = j;
        break;
      }
    }
    if (u) v[n] = *u;
    if (u != b.identity_urfather(n)) r.fail("identity-urfathers", "representative of " + n + " differs");
  }

  r.ran("root-nominals-represented");
  for (const auto& n : b.universe().root_nominals()) {
    if (!v.count(n)) r.fail("root-nominals-represented", n + " has no representative");
  }

  r.ran("children-represented");
  for (const auto& [from, to] : g.edges()) {
    if (qu[from] && !v.count(to)) r.fail("children-represented", to + " generated by " + from + " has no representative");
  }

  r.ran("representative-carries-formulas");
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto& e = b[k];
    if (!v.count(e.prefix) || !b.universe().root_subformula(e.payload)) continue;
    if (!b.contains(v[e.prefix], e.payload)) {
      r.fail("representative-carries-formulas", show(b, k) + " missing at " + v[e.prefix]);
    }
  }

  r.ran("representatives-fixed");
  for (const auto& [n, u] : v) {
    if (!v.count(u) || v[u] != u) r.fail("representatives-fixed", "v(" + u + ") != " + u);
  }

  if (!saturated) return;
  r.ran("equalities-respected");
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto& e = b[k];
    if (e.payload.kind() != Kind::Nom) continue;
    const Nominal& j = e.payload.name();
    if (v.count(e.prefix) && v.count(j) && v[e.prefix] != v[j]) {
      r.fail("equalities-respected", show(b, k) + " but the representatives differ");
    }
  }
}

}  // namespace

AuditReport audit_branch(const Branch& b, const CalculusSpec& cal, bool saturated) {
  AuditReport r;
  check_subformulas(b, cal, r);
  check_generation(b, r);
  check_closure(b, r);
  if (cal.tset != TSetVariant::None) check_loopcheck(b, cal, saturated, r);
  return r;
}

AuditReport audit_tableau(const Tableau& t) {
  AuditReport r;
  for (std::size_t leaf : t.leaves()) {
    const auto& node = t.nodes()[leaf];
    if (!node.branch) continue;
    r.merge(audit_branch(*node.branch, t.calculus(), node.status == BranchStatus::Open));
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

FrameClass frame_class_of(const CalculusSpec& cal, ModelVariant variant) {
  if (variant == ModelVariant::K) return FrameClass::All;
  if (variant == ModelVariant::PO) return FrameClass::PO;
  return cal.has(RuleTag::Ser) ? FrameClass::USPO : FrameClass::SPO;
}

}  // namespace

AuditReport audit_countermodel(const Branch& b, const CalculusSpec& cal, const ExtractedModel& m,
                               const BulldozedModel& bm, std::size_t max_copies) {
  AuditReport r;
  const KripkeModel& base = m.base;

  r.ran("truth-lemma");
  const TruthReport truth = check_truth_lemma(b, m);
  for (const auto& v : truth.violations) r.fail("truth-lemma", show(b, v.entry) + ": " + v.detail);
  if (!eval(base, m.world_of(b.root().prefix), b.root().payload)) {
    r.fail("truth-lemma", "root formula false at the root world");
  }

  r.ran("representatives-fixed");
  for (const auto& [n, u] : m.urfather_map) {
    auto it = m.urfather_map.find(u);
    if (it == m.urfather_map.end() || it->second != u) r.fail("representatives-fixed", "v(" + u + ") != " + u);
  }

  r.ran("closure");
  {
    // Warshall over a dense matrix, independent of the search used by extraction.
    const std::size_t n = base.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (auto [x, y] : m.r_e) reach[x][y] = true;
    if (m.variant != ModelVariant::K) {
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t x = 0; x < n; ++x)
          if (reach[x][k])
            for (std::size_t y = 0; y < n; ++y)
              if (reach[k][y]) reach[x][y] = true;
      if (m.variant == ModelVariant::PO)
        for (std::size_t x = 0; x < n; ++x) reach[x][x] = true;
    }
    for (WorldId x = 0; x < n; ++x) {
      std::vector<WorldId> expect;
      for (WorldId y = 0; y < n; ++y)
        if (reach[x][y]) expect.push_back(y);
      if (expect != base.successors(x)) r.fail("closure", "successors of " + base.name(x) + " differ from the closure");
    }
  }

  if (cal.has(RuleTag::Ser)) {
    r.ran("serial");
    const auto c = check_property(base, "serial");
    if (!c.passed) r.fail("serial", "no successor at " + c.witness.front());
  }

  const FrameClass target = frame_class_of(cal, m.variant);
  std::size_t depth = 0;
  for (std::size_t k = 0; k < b.size(); ++k) depth = std::max(depth, b[k].payload.modal_depth());
  const std::size_t copies = std::max<std::size_t>(2, depth + 1);

  r.ran("frame-class");
  const ClassReport cls = certify_class(bm, target, copies);
  if (!cls.passed()) r.fail("frame-class", cls.summary());

  if (m.variant == ModelVariant::K) return r;

  r.ran("clusters-unnamed");
  {
    const auto named = named_worlds(b, m);
    for (const auto& c : bm.clusters) {
      for (WorldId w : c.members) {
        if (named.count(w)) r.fail("clusters-unnamed", base.name(w) + " is named but lies in a cluster");
      }
    }
  }

  r.ran("no-clusters-after-bulldozing");
  {
    const TruncatedModel pre = truncate(bm, copies, Truncation::Prefix);
    const auto split = detect_clusters(pre.model, m.variant == ModelVariant::PO);
    if (!split.clusters.empty()) r.fail("no-clusters-after-bulldozing", "the prefix truncation still has clusters");
  }

  // Root-subformula entries at representatives, deduplicated by (world, formula).
  std::set<std::pair<WorldId, Formula>> facts;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto& e = b[k];
    if (!m.in_domain(e.prefix) || !b.universe().root_subformula(e.payload)) continue;
    facts.emplace(m.world_of(e.prefix), e.payload);
  }

  std::map<std::size_t, TruncatedModel> truncations;
  auto closed = [&](std::size_t n) -> const TruncatedModel& {
    auto it = truncations.find(n);
    if (it == truncations.end()) it = truncations.emplace(n, truncate(bm, n, Truncation::Closed)).first;
    return it->second;
  };
  auto holds = [&](std::size_t n, const BWorld& w, const Formula& f) {
    const TruncatedModel& t = closed(n);
    return eval(t.model, t.index_of(w), f);
  };

  r.ran("preservation");
  for (const auto& [w, f] : facts) {
    if (eval(base, w, f) != holds(copies, designated(bm, w), f)) {
      r.fail("preservation", to_string(f) + " at " + base.name(w) + " changes under bulldozing");
    }
  }

  r.ran("cluster-copies-agree");
  for (const auto& [w, f] : facts) {
    if (!bm.cluster_of(w)) continue;
    const std::size_t n = copies + 1;
    if (holds(n, BWorld{w, 0}, f) != holds(n, BWorld{w, 1}, f)) {
      r.fail("cluster-copies-agree", to_string(f) + " differs between copies 0 and 1 of " + base.name(w));
    }
  }

  r.ran("truncation-stable");
  for (std::size_t n = copies; n < max_copies; ++n) {
    for (const auto& [w, f] : facts) {
      if (holds(n, designated(bm, w), f) != holds(n + 1, designated(bm, w), f)) {
        r.fail("truncation-stable", to_string(f) + " at " + base.name(w) + " differs between " + std::to_string(n) +
                                        " and " + std::to_string(n + 1) + " copies");
      }
    }
  }
  return r;
}

}  // namespace hytab
