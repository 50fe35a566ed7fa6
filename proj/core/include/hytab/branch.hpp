#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hytab/calculus.hpp"
#include "hytab/prefixed.hpp"

namespace hytab {

using EntryPair = std::pair<std::size_t, std::size_t>;

// Formulas that may appear in some T-set: subformulas of the root payload (T1)
// and the irreflexivity or anti-symmetry payloads of root nominals (T2).
class TUniverse {
 public:
  TUniverse(const Nominal& root_nominal, const Formula& root_payload, TSetVariant variant);

  std::optional<std::size_t> index(const Formula& f) const;
  const Formula& member(std::size_t k) const { return members_[k]; }
  std::size_t size() const noexcept { return members_.size(); }
  bool in_t1(std::size_t k) const { return t1_[k]; }
  bool in_t2(std::size_t k) const { return t2_[k]; }
  bool root_subformula(const Formula& f) const;
  const std::set<Nominal>& root_nominals() const noexcept { return root_nominals_; }
  TSetVariant variant() const noexcept { return variant_; }

 private:
  void add(const Formula& f, bool t1);

  TSetVariant variant_;
  std::set<Nominal> root_nominals_;
  std::vector<Formula> members_;
  std::vector<bool> t1_, t2_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

// The T-set of a nominal as a bitset over the universe.
using TBits = std::vector<std::uint64_t>;

// One branch of a tableau: append-only entries plus the indexes the rules,
// closure detection and loop checking need. Copyable; a split copies it.
class Branch {
 public:
  Branch(Nominal root_nominal, Formula root_payload, TSetVariant variant);

  const PrefixedFormula& root() const { return entries_.front(); }
  const std::vector<PrefixedFormula>& entries() const noexcept { return entries_; }
  const PrefixedFormula& operator[](std::size_t k) const { return entries_[k]; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Appends @prefix payload unless an entry with that prefix and payload exists.
  // Returns the new index, or nullopt for a duplicate.
  std::optional<std::size_t> append(const Nominal& prefix, const Formula& payload, bool accessibility, Origin origin);
  std::optional<std::size_t> find(const Nominal& prefix, const Formula& payload) const;
  bool contains(const Nominal& prefix, const Formula& payload) const { return find(prefix, payload).has_value(); }

  // First complementary pair (earlier, later), if any.
  const std::optional<EntryPair>& closure_witness() const noexcept { return witness_; }
  bool closed() const noexcept { return witness_.has_value(); }

  // Nominals in introduction order (first occurrence as prefix or inside a payload).
  const std::vector<Nominal>& nominals() const noexcept { return noms_; }
  bool occurs(const Nominal& i) const { return nom_index_.count(i) != 0; }
  std::size_t intro_entry(const Nominal& i) const;
  std::size_t intro_rank(const Nominal& i) const;
  const std::vector<std::size_t>& at_prefix(const Nominal& i) const;
  Nominal fresh() const;

  // Generation relation: the accessibility formula @parent <>i.
  std::optional<Nominal> parent(const Nominal& i) const;
  std::vector<Nominal> children(const Nominal& i) const;

  // Once-per-formula flag of [<>] (keyed by entry index, which is unique per prefixed formula).
  bool dia_fired(std::size_t entry) const { return dia_fired_.count(entry) != 0; }
  void mark_dia_fired(std::size_t entry) { dia_fired_.insert(entry); }
  // Once-per-nominal flags of the premise-free rules.
  bool nullary_fired(RuleTag r, const Nominal& i) const;
  void mark_nullary_fired(RuleTag r, const Nominal& i);

  // Loop checking, maintained incrementally as entries are appended.
  const TUniverse& universe() const noexcept { return *universe_; }
  const TBits& t_bits(const Nominal& i) const;
  std::set<Formula> t_set(const Nominal& i) const;
  bool twins(const Nominal& i, const Nominal& j) const;
  bool quasi_urfather(const Nominal& i) const;
  std::optional<Nominal> identity_urfather(const Nominal& i) const;

 private:
  using NomId = std::size_t;

  struct Key {
    NomId prefix;
    Formula payload;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return k.payload.hash() * 31 + k.prefix; }
  };
  struct NomInfo {
    std::size_t intro_entry = 0;
    std::vector<std::size_t> entries;
    std::optional<NomId> parent;
    std::vector<NomId> children;
    TBits tbits;
  };

  NomId intern(const Nominal& i, std::size_t entry);
  NomId id(const Nominal& i) const;

  std::shared_ptr<const TUniverse> universe_;
  std::vector<PrefixedFormula> entries_;
  std::unordered_map<Key, std::size_t, KeyHash> index_;
  std::vector<Nominal> noms_;
  std::unordered_map<Nominal, NomId> nom_index_;
  std::vector<NomInfo> info_;
  std::size_t next_fresh_ = 0;
  std::optional<EntryPair> witness_;
  std::set<std::size_t> dia_fired_;
  std::set<std::pair<RuleTag, NomId>> nullary_fired_;
};

}  // namespace hytab
