#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hytab {

using Nominal = std::string;

enum class Kind : std::uint8_t { Prop, Nom, Neg, And, Or, Dia, Box, At };

// Immutable hybrid-logic formula. Copies share structure; equality and
// ordering are structural, so formulas can be used directly as set members.
class Formula {
 public:
  static Formula prop(std::string name);
  static Formula nom(Nominal name);
  static Formula neg(Formula f);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  // a -> b is sugar for ~a | b.
  static Formula implies(Formula lhs, Formula rhs);
  static Formula dia(Formula f);
  static Formula box(Formula f);
  static Formula at(Nominal i, Formula f);

  Kind kind() const noexcept;
  // Proposition name, nominal name, or the nominal of an @.
  const std::string& name() const noexcept;
  // Operand of Neg, Dia, Box and At.
  const Formula& child() const;
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_atom() const noexcept { return kind() == Kind::Prop || kind() == Kind::Nom; }
  // An atom or a negated atom.
  bool is_literal() const noexcept;

  std::size_t hash() const noexcept;
  // Number of AST nodes.
  std::size_t size() const noexcept;
  // Nesting depth of <> and [] (@ does not count).
  std::size_t modal_depth() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind kind, std::string name, std::vector<Formula> kids);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using FormulaSet = std::unordered_set<Formula, FormulaHash>;

bool is_nnf(const Formula& f);
// Pushes negations to atoms; removes double negation; ~@i a becomes @i ~a.
Formula to_nnf(const Formula& f);
// NNF of the negation.
Formula complement(const Formula& f);

// Distinct subformulas (reflexive), in pre-order of first occurrence.
std::vector<Formula> subformulas(const Formula& f);
// Reflexive: every formula is a subformula of itself.
bool is_subformula(const Formula& part, const Formula& whole);

std::set<Nominal> nominals_of(const Formula& f);
std::set<std::string> props_of(const Formula& f);

class SubformulaClosure {
 public:
  explicit SubformulaClosure(Formula root);

  const Formula& root() const noexcept { return root_; }
  const std::vector<Formula>& members() const noexcept { return members_; }
  bool contains(const Formula& f) const { return index_.count(f) != 0; }
  std::size_t size() const noexcept { return members_.size(); }

 private:
  Formula root_;
  std::vector<Formula> members_;
  FormulaSet index_;
};

// Reserved namespace for generated nominals: "n" followed by decimal digits.
bool is_reserved_nominal(std::string_view name);
std::optional<std::size_t> reserved_index(std::string_view name);
// n<1 + largest reserved index in use>, or n0 when none is in use.
Nominal fresh_nominal(const std::set<Nominal>& used);

enum class Notation { Ascii, Unicode };

std::string to_string(const Formula& f, Notation notation = Notation::Ascii);
std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace hytab

template <>
struct std::hash<hytab::Formula> {
  std::size_t operator()(const hytab::Formula& f) const noexcept { return f.hash(); }
};
