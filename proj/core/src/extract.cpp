#include "hytab/extract.hpp"

#include <algorithm>
#include <numeric>

#include "hytab/error.hpp"
#include "hytab/graph.hpp"
#include "hytab/rules.hpp"

namespace hytab {

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::K:
      return "K";
    case ModelVariant::I4:
      return "I4";
    case ModelVariant::PO:
      return "PO";
  }
  return "?";
}

ModelVariant model_variant(const CalculusSpec& cal) {
  switch (cal.closure) {
    case ClosureKind::None:
      return ModelVariant::K;
    case ClosureKind::Transitive:
      return ModelVariant::I4;
    case ClosureKind::ReflexiveTransitive:
      return ModelVariant::PO;
  }
  return ModelVariant::K;
}

WorldId ExtractedModel::world_of(const Nominal& i) const {
  auto it = urfather_map.find(i);
  if (it == urfather_map.end()) throw PreconditionError("nominal '" + i + "' has no representative");
  return base.at(it->second);
}

namespace {

bool nominal_dia(const Formula& f) { return f.kind() == Kind::Dia && f.child().kind() == Kind::Nom; }

// Without loop checking: nominals linked by @x y. Out-neighbours of a nominal
// are linked to each other by [Id], so every weakly connected part has one
// terminal strongly connected component; its earliest nominal represents the
// whole part, and only its members contribute edges.
std::map<Nominal, Nominal> k_representatives(const Branch& b, std::set<Nominal>& terminal) {
  const auto& noms = b.nominals();
  const std::size_t n = noms.size();
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (const auto& e : b.entries()) {
    if (e.payload.kind() == Kind::Nom) links.emplace_back(b.intro_rank(e.prefix), b.intro_rank(e.payload.name()));
  }
  const auto g = graph::from_edges(n, links);
  const auto sccs = graph::strongly_connected_components(g);
  std::vector<std::size_t> scc_of(n);
  for (std::size_t c = 0; c < sccs.size(); ++c)
    for (std::size_t v : sccs[c]) scc_of[v] = c;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, c] : links) parent[root(a)] = root(c);

  std::map<std::size_t, std::size_t> rep_of_part;
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    const bool sink = std::all_of(sccs[c].begin(), sccs[c].end(), [&](std::size_t v) {
      return std::all_of(g[v].begin(), g[v].end(), [&](std::size_t w) { return scc_of[w] == c; });
    });
    if (!sink) continue;
    const std::size_t part = root(sccs[c].front());
    if (rep_of_part.count(part)) throw Error("internal: nominal class with two terminal components");
    rep_of_part[part] = sccs[c].front();  // members are sorted by introduction rank
    for (std::size_t v : sccs[c]) terminal.insert(noms[v]);
  }
  std::map<Nominal, Nominal> out;
  for (std::size_t v = 0; v < n; ++v) out[noms[v]] = noms[rep_of_part.at(root(v))];
  return out;
}

}  // namespace

ExtractedModel extract(const Branch& b, const CalculusSpec& cal) {
  if (b.closed()) throw PreconditionError("cannot extract a model from a closed branch");
  if (!applicable_rules(b, cal).empty()) throw PreconditionError("cannot extract a model from an unsaturated branch");

  ExtractedModel m;
  m.variant = model_variant(cal);
  m.root_nominal = b.root().prefix;

  std::set<Nominal> contributes;
  if (m.variant == ModelVariant::K) {
    m.urfather_map = k_representatives(b, contributes);
  } else {
    for (const auto& n : b.nominals()) {
      if (auto v = b.identity_urfather(n)) {
        m.urfather_map[n] = *v;
        contributes.insert(n);
      }
    }
  }

  std::set<Nominal> worlds;
  for (const auto& [n, v] : m.urfather_map) worlds.insert(v);
  for (const auto& n : b.nominals()) {
    if (worlds.count(n)) m.base.add_world(n);
  }

  for (const auto& e : b.entries()) {
    if (!nominal_dia(e.payload)) continue;
    const Nominal& target = e.payload.child().name();
    if (!contributes.count(e.prefix) || !m.in_domain(target)) continue;
    m.r_e.emplace_back(m.world_of(e.prefix), m.world_of(target));
  }
  std::sort(m.r_e.begin(), m.r_e.end());
  m.r_e.erase(std::unique(m.r_e.begin(), m.r_e.end()), m.r_e.end());

  if (m.variant == ModelVariant::K) {
    for (auto [x, y] : m.r_e) m.base.add_edge(x, y);
  } else {
    const auto g = graph::from_edges(m.base.size(), m.r_e);
    for (auto [x, y] : graph::closure(g, m.variant == ModelVariant::PO)) m.base.add_edge(x, y);
  }

  for (const auto& p : props_of(b.root().payload)) m.base.declare_prop(p);
  for (const auto& e : b.entries()) {
    if (e.payload.kind() == Kind::Prop && m.in_domain(e.prefix)) m.base.set_prop(e.payload.name(), m.world_of(e.prefix));
  }
  for (const auto& n : b.nominals()) {
    m.base.set_nominal(n, m.in_domain(n) ? m.world_of(n) : m.base.at(m.root_nominal));
  }
  return m;
}

TruthReport check_truth_lemma(const Branch& b, const ExtractedModel& m) {
  TruthReport report;
  const auto& universe = b.universe();
  for (const auto& e : b.entries()) {
    if (!universe.root_subformula(e.payload) || !m.in_domain(e.prefix)) continue;
    if (m.variant == ModelVariant::K && e.accessibility) continue;
    ++report.checked;
    const WorldId w = m.world_of(e.prefix);
    bool ok = false;
    try {
      ok = eval(m.base, w, e.payload);
    } catch (const ModelError& err) {
      report.violations.push_back({e.seq, err.what()});
      continue;
    }
    if (!ok) {
      report.violations.push_back({e.seq, to_string(e.payload) + " is false at " + m.base.name(w)});
    }
  }
  return report;
}

std::set<WorldId> named_worlds(const Branch& b, const ExtractedModel& m) {
  std::set<WorldId> out;
  for (WorldId w = 0; w < m.base.size(); ++w) {
    for (const auto& f : b.t_set(m.base.name(w))) {
      if (f.kind() == Kind::Nom) {
        out.insert(w);
        break;
      }
    }
  }
  return out;
}

}  // namespace hytab
