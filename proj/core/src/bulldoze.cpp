#include "hytab/bulldoze.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hytab/error.hpp"
#include "hytab/graph.hpp"

namespace hytab {

ClusterSplit detect_clusters(const KripkeModel& m, bool proper_only) {
  if (!check_property(m, "transitive").passed) throw PreconditionError("cluster detection needs a transitive relation");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto e : m.edges()) edges.emplace_back(e);
  const auto sccs = graph::strongly_connected_components(graph::from_edges(m.size(), edges));

  ClusterSplit out;
  std::vector<bool> clustered(m.size(), false);
  std::vector<std::vector<std::size_t>> found;
  for (const auto& comp : sccs) {
    const bool cluster = comp.size() > 1 ? true : (!proper_only && m.related(comp[0], comp[0]));
    if (!cluster) continue;
    found.push_back(comp);
    for (std::size_t w : comp) clustered[w] = true;
  }
  std::sort(found.begin(), found.end());
  for (std::size_t k = 0; k < found.size(); ++k) {
    out.clusters.push_back(Cluster{k, std::vector<WorldId>(found[k].begin(), found[k].end())});
  }
  for (WorldId w = 0; w < m.size(); ++w) {
    if (!clustered[w]) out.w_minus.push_back(w);
  }
  return out;
}

std::optional<std::size_t> BulldozedModel::cluster_of(WorldId w) const {
  for (const auto& c : clusters) {
    if (std::find(c.members.begin(), c.members.end(), w) != c.members.end()) return c.index;
  }
  return std::nullopt;
}

BulldozedModel bulldoze(const ExtractedModel& m) {
  BulldozedModel bm;
  bm.base = m;
  bm.variant = m.variant;
  if (m.variant == ModelVariant::K) {
    for (WorldId w = 0; w < m.base.size(); ++w) bm.w_minus.push_back(w);
    return bm;
  }
  if (m.variant == ModelVariant::PO && !check_property(m.base, "reflexive").passed) {
    throw PreconditionError("partial-order bulldozing needs a reflexive relation");
  }
  auto split = detect_clusters(m.base, m.variant == ModelVariant::PO);
  bm.w_minus = std::move(split.w_minus);
  bm.clusters = std::move(split.clusters);
  return bm;
}

namespace {

const Cluster& cluster_at(const BulldozedModel& bm, std::size_t index) {
  for (const auto& c : bm.clusters) {
    if (c.index == index) return c;
  }
  throw PreconditionError("no cluster with index " + std::to_string(index));
}

std::size_t position(const Cluster& c, WorldId w) {
  return static_cast<std::size_t>(std::find(c.members.begin(), c.members.end(), w) - c.members.begin());
}

void check_ref(const BulldozedModel& bm, const BWorld& w) {
  if (w.world >= bm.base.base.size()) throw PreconditionError("unknown world " + std::to_string(w.world));
  if (bm.cluster_of(w.world).has_value() != w.copy.has_value()) {
    throw PreconditionError("world " + bm.base.base.name(w.world) +
                            (w.copy ? " is not in a cluster and has no copies" : " is in a cluster and needs a copy index"));
  }
}

}  // namespace

std::string world_name(const BulldozedModel& bm, const BWorld& w) {
  const std::string& base = bm.base.base.name(w.world);
  if (!w.copy) return base;
  return "(" + base + "," + std::to_string(*w.copy) + ")";
}

bool related(const BulldozedModel& bm, const BWorld& a, const BWorld& b) {
  check_ref(bm, a);
  check_ref(bm, b);
  const KripkeModel& base = bm.base.base;
  if (!a.copy || !b.copy) return base.related(a.world, b.world);
  const std::size_t ca = *bm.cluster_of(a.world);
  const std::size_t cb = *bm.cluster_of(b.world);
  if (ca != cb) return base.related(a.world, b.world);
  if (*a.copy != *b.copy) return *a.copy < *b.copy;
  const Cluster& c = cluster_at(bm, ca);
  const std::size_t pa = position(c, a.world);
  const std::size_t pb = position(c, b.world);
  return bm.variant == ModelVariant::PO ? pa <= pb : pa < pb;
}

BWorld designated(const BulldozedModel& bm, WorldId base_world) {
  if (bm.cluster_of(base_world)) return BWorld{base_world, 0};
  return BWorld{base_world, std::nullopt};
}

BWorld denotation(const BulldozedModel& bm, const Nominal& i) {
  auto w = bm.base.base.denotation(i);
  if (!w) throw ModelError("nominal '" + i + "' is not interpreted");
  return designated(bm, *w);
}

WorldId TruncatedModel::index_of(const BWorld& w) const {
  auto it = std::find(refs.begin(), refs.end(), w);
  if (it == refs.end()) throw PreconditionError("world is outside the truncation");
  return static_cast<WorldId>(it - refs.begin());
}

TruncatedModel truncate(const BulldozedModel& bm, std::size_t copies, Truncation mode) {
  if (copies < 1) throw PreconditionError("a truncation needs at least one copy");
  const KripkeModel& base = bm.base.base;
  TruncatedModel t;
  for (WorldId w : bm.w_minus) t.refs.push_back(BWorld{w, std::nullopt});
  for (std::size_t k = 0; k < copies; ++k)
    for (const auto& c : bm.clusters)
      for (WorldId w : c.members) t.refs.push_back(BWorld{w, k});

  for (const auto& r : t.refs) t.model.add_world(world_name(bm, r));
  for (WorldId x = 0; x < t.refs.size(); ++x) {
    for (WorldId y = 0; y < t.refs.size(); ++y) {
      const BWorld& a = t.refs[x];
      const BWorld& b = t.refs[y];
      bool edge = related(bm, a, b);
      if (!edge && mode == Truncation::Closed && a.copy && b.copy && *a.copy == copies - 1 &&
          *b.copy == copies - 1 && bm.cluster_of(a.world) == bm.cluster_of(b.world)) {
        edge = true;
      }
      if (edge) t.model.add_edge(x, y);
    }
  }
  for (const auto& [p, bits] : base.props()) {
    t.model.declare_prop(p);
    for (WorldId x = 0; x < t.refs.size(); ++x) {
      if (bits[t.refs[x].world]) t.model.set_prop(p, x);
    }
  }
  for (const auto& [i, w] : base.nominals()) t.model.set_nominal(i, t.index_of(designated(bm, w)));
  return t;
}

bool eval_truncated(const BulldozedModel& bm, const BWorld& w, const Formula& f, std::size_t copies) {
  check_ref(bm, w);
  if (copies < 2 || copies < f.modal_depth() + 1) {
    throw PreconditionError("truncation to " + std::to_string(copies) + " copies is too shallow for modal depth " +
                            std::to_string(f.modal_depth()));
  }
  if (w.copy && *w.copy >= copies) throw PreconditionError("copy index beyond the truncation");
  const auto t = truncate(bm, copies, Truncation::Closed);
  return eval(t.model, t.index_of(w), f);
}

ClassReport certify_class(const BulldozedModel& bm, FrameClass c, std::size_t copies) {
  if (copies < 2) throw PreconditionError("class certification needs at least two copies");
  const KripkeModel& base = bm.base.base;
  const auto t = truncate(bm, copies, Truncation::Prefix);
  ClassReport report{c, {}};

  for (const auto& prop : required_properties(c)) {
    if (prop != "serial") {
      report.checks.push_back(check_property(t.model, prop));
      continue;
    }
    PropertyCheck serial{"serial", true, {}};
    for (WorldId x = 0; x < t.refs.size() && serial.passed; ++x) {
      const bool last_layer = t.refs[x].copy && *t.refs[x].copy == copies - 1;
      if (t.model.successors(x).empty() && !last_layer) {
        serial.passed = false;
        serial.witness.push_back(t.model.name(x));
      }
    }
    report.checks.push_back(serial);
  }
  if (c == FrameClass::All) return report;

  // Structure of the presentation, which the truncation alone cannot show.
  PropertyCheck clusters{"cluster-order", true, {}};
  std::set<WorldId> seen;
  for (const auto& cl : bm.clusters) {
    if (cl.members.empty()) {
      clusters.passed = false;
      clusters.witness.push_back("cluster " + std::to_string(cl.index) + " is empty");
      break;
    }
    for (WorldId w : cl.members) {
      if (!seen.insert(w).second) {
        clusters.passed = false;
        clusters.witness.push_back(base.name(w));
      }
      for (WorldId v : cl.members) {
        if (!base.related(w, v)) {
          clusters.passed = false;
          clusters.witness = {base.name(w), base.name(v)};
        }
      }
    }
  }
  for (WorldId w : bm.w_minus) {
    if (seen.count(w)) {
      clusters.passed = false;
      clusters.witness.push_back(base.name(w));
    }
  }
  report.checks.push_back(clusters);

  PropertyCheck rest{"w-minus", true, {}};
  for (WorldId w : bm.w_minus) {
    if (bm.variant != ModelVariant::PO && base.related(w, w)) {
      rest.passed = false;
      rest.witness = {base.name(w), base.name(w)};
      break;
    }
    for (WorldId v : bm.w_minus) {
      if (bm.variant == ModelVariant::PO && v != w && base.related(w, v) && base.related(v, w)) {
        rest.passed = false;
        rest.witness = {base.name(w), base.name(v)};
      }
    }
  }
  report.checks.push_back(rest);
  return report;
}

std::string bulldozed_to_dot(const BulldozedModel& bm, std::size_t copies) {
  const std::size_t n = std::max<std::size_t>(copies, 1);
  const auto t = truncate(bm, n, Truncation::Prefix);
  std::ostringstream os;
  os << "digraph bulldozed {\n  rankdir=LR;\n";
  for (WorldId x = 0; x < t.refs.size(); ++x) {
    std::string facts;
    for (const auto& [p, bits] : t.model.props()) {
      if (bits[x]) facts += (facts.empty() ? "" : ",") + p;
    }
    os << "  \"" << t.model.name(x) << "\" [label=\"" << t.model.name(x) << (facts.empty() ? "" : "\\n" + facts)
       << "\"];\n";
  }
  for (auto [a, b] : t.model.edges()) os << "  \"" << t.model.name(a) << "\" -> \"" << t.model.name(b) << "\";\n";
  for (const auto& cl : bm.clusters) {
    const std::string tail = "tail" + std::to_string(cl.index);
    os << "  \"" << tail << "\" [label=\"...\", shape=plaintext];\n";
    os << "  \"" << world_name(bm, BWorld{cl.members.back(), n - 1})
       << "\" -> \"" << tail << "\" [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hytab
