#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hytab/branch.hpp"

namespace hytab {

// These recompute everything from the branch entries, independently of the
// incremental bookkeeping inside Branch; the engine uses the latter.

struct TSet {
  Nominal owner;
  std::set<Formula> t1;
  std::set<Formula> t2;
  TSetVariant variant = TSetVariant::I4;

  std::set<Formula> all() const;
  friend bool operator==(const TSet& a, const TSet& b) { return a.all() == b.all(); }
};

TSet t_set(const Branch& b, const Nominal& i, TSetVariant variant);
bool twins(const Branch& b, const Nominal& i, const Nominal& j, TSetVariant variant);
bool quasi_urfather(const Branch& b, const Nominal& i, TSetVariant variant);
std::optional<Nominal> identity_urfather(const Branch& b, const Nominal& i, TSetVariant variant);

// i -> j for every accessibility formula @i<>j with j != i.
class GenerationGraph {
 public:
  explicit GenerationGraph(const Branch& b);

  const std::vector<Nominal>& nodes() const noexcept { return nodes_; }
  const std::vector<std::pair<Nominal, Nominal>>& edges() const noexcept { return edges_; }
  std::vector<Nominal> parents(const Nominal& j) const;
  // Reflexive-transitive ancestors, nearest first.
  std::vector<Nominal> ancestors_or_self(const Nominal& i) const;
  // Every node has at most one parent and following parents never cycles.
  bool is_forest(std::string* problem = nullptr) const;

 private:
  std::vector<Nominal> nodes_;
  std::vector<std::pair<Nominal, Nominal>> edges_;
};

// Per-nominal T-set listing followed by the generation forest as DOT.
std::string dump_loopcheck(const Branch& b, TSetVariant variant);

}  // namespace hytab
