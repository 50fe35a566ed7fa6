#include "hytab/loopcheck.hpp"

#include <algorithm>
#include <sstream>

namespace hytab {

std::set<Formula> TSet::all() const {
  std::set<Formula> out = t1;
  out.insert(t2.begin(), t2.end());
  return out;
}

namespace {

Formula t2_seed(const Nominal& j, TSetVariant variant) {
  const Formula irr = Formula::box(Formula::neg(Formula::nom(j)));
  return variant == TSetVariant::PO ? Formula::box(Formula::disj(Formula::nom(j), irr)) : irr;
}

}  // namespace

TSet t_set(const Branch& b, const Nominal& i, TSetVariant variant) {
  TSet out{i, {}, {}, variant};
  const PrefixedFormula& root = b.root();
  std::vector<PrefixedFormula> seeds;
  if (variant != TSetVariant::None) {
    for (const auto& j : nominals_of(root.formula())) seeds.push_back(PrefixedFormula{j, t2_seed(j, variant), false, {}, 0});
  }
  for (const auto& e : b.entries()) {
    if (e.prefix != i) continue;
    if (prefixed_subformula(e, root)) out.t1.insert(e.payload);
    for (const auto& s : seeds) {
      if (prefixed_subformula(e, s)) out.t2.insert(e.payload);
    }
  }
  return out;
}

bool twins(const Branch& b, const Nominal& i, const Nominal& j, TSetVariant variant) {
  return t_set(b, i, variant) == t_set(b, j, variant);
}

bool quasi_urfather(const Branch& b, const Nominal& i, TSetVariant variant) {
  const auto chain = GenerationGraph(b).ancestors_or_self(i);
  std::vector<std::set<Formula>> sets;
  for (const auto& n : chain) sets.push_back(t_set(b, n, variant).all());
  for (std::size_t x = 0; x < sets.size(); ++x)
    for (std::size_t y = x + 1; y < sets.size(); ++y)
      if (sets[x] == sets[y]) return false;
  return true;
}

std::optional<Nominal> identity_urfather(const Branch& b, const Nominal& i, TSetVariant variant) {
  const auto mine = t_set(b, i, variant).all();
  // nominals() is already in introduction order.
  for (const auto& j : b.nominals()) {
    if (t_set(b, j, variant).all() == mine && quasi_urfather(b, j, variant)) return j;
  }
  return std::nullopt;
}

GenerationGraph::GenerationGraph(const Branch& b) : nodes_(b.nominals()) {
  for (const auto& e : b.entries()) {
    if (e.accessibility && e.prefix != e.payload.child().name()) edges_.emplace_back(e.prefix, e.payload.child().name());
  }
}

std::vector<Nominal> GenerationGraph::parents(const Nominal& j) const {
  std::vector<Nominal> out;
  for (const auto& [from, to] : edges_) {
    if (to == j) out.push_back(from);
  }
  return out;
}

std::vector<Nominal> GenerationGraph::ancestors_or_self(const Nominal& i) const {
  std::vector<Nominal> out{i};
  std::set<Nominal> seen{i};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& p : parents(out[k])) {
      if (seen.insert(p).second) out.push_back(p);
    }
  }
  return out;
}

bool GenerationGraph::is_forest(std::string* problem) const {
  for (const auto& n : nodes_) {
    if (parents(n).size() > 1) {
      if (problem) *problem = "nominal " + n + " has more than one generator";
      return false;
    }
  }
  for (const auto& n : nodes_) {
    std::set<Nominal> seen{n};
    Nominal cur = n;
    for (auto ps = parents(cur); !ps.empty(); ps = parents(cur)) {
      cur = ps.front();
      if (!seen.insert(cur).second) {
        if (problem) *problem = "generation cycle through " + cur;
        return false;
      }
    }
  }
  return true;
}

std::string dump_loopcheck(const Branch& b, TSetVariant variant) {
  std::ostringstream os;
  for (const auto& n : b.nominals()) {
    const auto t = t_set(b, n, variant);
    os << "T(" << n << ") = {";
    bool first = true;
    for (const auto& f : t.all()) {
      os << (first ? "" : ", ") << f;
      first = false;
    }
    os << "}";
    if (variant != TSetVariant::None) {
      os << (quasi_urfather(b, n, variant) ? "  quasi-urfather" : "");
      if (auto v = identity_urfather(b, n, variant)) os << "  v=" << *v;
    }
    os << '\n';
  }
  const GenerationGraph g(b);
  os << "digraph generation {\n";
  for (const auto& n : g.nodes()) os << "  \"" << n << "\";\n";
  for (const auto& [from, to] : g.edges()) os << "  \"" << from << "\" -> \"" << to << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace hytab
