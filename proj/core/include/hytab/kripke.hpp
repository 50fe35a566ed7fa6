#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hytab/error.hpp"
#include "hytab/formula.hpp"

namespace hytab {

using WorldId = std::size_t;

enum class FrameClass { All, SPO, USPO, PO };

std::string_view to_string(FrameClass c);

// Finite Kripke model with named worlds. Every nominal the model interprets
// maps to exactly one world; propositions default to false everywhere.
class KripkeModel {
 public:
  WorldId add_world(std::string name);
  void add_edge(WorldId from, WorldId to);
  void set_prop(const std::string& p, WorldId w);
  // Interpret p as false everywhere (it still appears in serialized output).
  void declare_prop(const std::string& p);
  void set_nominal(const Nominal& i, WorldId w);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(WorldId w) const;
  std::optional<WorldId> find(std::string_view name) const;
  WorldId at(std::string_view name) const;

  bool related(WorldId from, WorldId to) const;
  // Sorted, duplicate-free.
  const std::vector<WorldId>& successors(WorldId w) const;
  std::vector<std::pair<WorldId, WorldId>> edges() const;
  std::size_t edge_count() const;

  bool holds(const std::string& p, WorldId w) const;
  const std::map<std::string, std::vector<bool>>& props() const noexcept { return props_; }
  const std::map<Nominal, WorldId>& nominals() const noexcept { return noms_; }
  std::optional<WorldId> denotation(const Nominal& i) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  void check(WorldId w) const;

  std::vector<std::string> names_;
  std::vector<std::vector<WorldId>> succ_;
  std::map<std::string, std::vector<bool>> props_;
  std::map<Nominal, WorldId> noms_;
};

// Truth value of f at every world (index = WorldId).
std::vector<bool> truth_set(const KripkeModel& m, const Formula& f);
bool eval(const KripkeModel& m, WorldId w, const Formula& f);

struct PropertyCheck {
  std::string property;  // serial, reflexive, irreflexive, anti-symmetric, transitive
  bool passed = true;
  // Offending worlds on failure: (x) for seriality, (x,x) for (ir)reflexivity,
  // (x,y) for anti-symmetry, (x,y,z) for transitivity with x R y R z but not x R z.
  std::vector<std::string> witness;
};

struct ClassReport {
  FrameClass frame_class = FrameClass::All;
  std::vector<PropertyCheck> checks;

  bool passed() const;
  const PropertyCheck* failure() const;
  std::string summary() const;
};

std::vector<std::string> required_properties(FrameClass c);
PropertyCheck check_property(const KripkeModel& m, std::string_view property);
ClassReport relation_class_check(const KripkeModel& m, FrameClass c);

// JSON model file: {"worlds":[...],"rel":[[a,b],...],"props":{"p":[...]},"noms":{"i":w}}.
// World ids are strings; writing is canonical so write(read(s)) == s for canonical s.
std::string model_to_json(const KripkeModel& m);
KripkeModel model_from_json(std::string_view text);

// DOT rendering; highlighted worlds are drawn with a double outline.
std::string model_to_dot(const KripkeModel& m, const std::vector<WorldId>& highlighted = {});

}  // namespace hytab
