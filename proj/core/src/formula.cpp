#include "hytab/formula.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace hytab {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> kids;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  // boost::hash_combine
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Kind kind, std::string name, std::vector<Formula> kids) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->kids = std::move(kids);
  std::size_t h = mix(static_cast<std::size_t>(kind) + 1, std::hash<std::string>{}(node->name));
  std::size_t depth = 0;
  for (const auto& k : node->kids) {
    h = mix(h, k.hash());
    node->size += k.size();
    depth = std::max(depth, k.modal_depth());
  }
  if (kind == Kind::Dia || kind == Kind::Box) ++depth;
  node->hash = h;
  node->depth = depth;
  return Formula(std::move(node));
}

Formula Formula::prop(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty proposition name");
  return make(Kind::Prop, std::move(name), {});
}

Formula Formula::nom(Nominal name) {
  if (name.empty()) throw std::invalid_argument("empty nominal name");
  return make(Kind::Nom, std::move(name), {});
}

Formula Formula::neg(Formula f) { return make(Kind::Neg, {}, {std::move(f)}); }
Formula Formula::conj(Formula lhs, Formula rhs) { return make(Kind::And, {}, {std::move(lhs), std::move(rhs)}); }
Formula Formula::disj(Formula lhs, Formula rhs) { return make(Kind::Or, {}, {std::move(lhs), std::move(rhs)}); }
Formula Formula::implies(Formula lhs, Formula rhs) { return disj(neg(std::move(lhs)), std::move(rhs)); }
Formula Formula::dia(Formula f) { return make(Kind::Dia, {}, {std::move(f)}); }
Formula Formula::box(Formula f) { return make(Kind::Box, {}, {std::move(f)}); }

Formula Formula::at(Nominal i, Formula f) {
  if (i.empty()) throw std::invalid_argument("empty nominal name");
  return make(Kind::At, std::move(i), {std::move(f)});
}

Kind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const noexcept { return node_->name; }

const Formula& Formula::child() const {
  if (node_->kids.size() != 1) throw std::logic_error("formula has no single operand");
  return node_->kids[0];
}

const Formula& Formula::lhs() const {
  if (node_->kids.size() != 2) throw std::logic_error("formula is not binary");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() != 2) throw std::logic_error("formula is not binary");
  return node_->kids[1];
}

bool Formula::is_literal() const noexcept {
  return is_atom() || (kind() == Kind::Neg && node_->kids[0].is_atom());
}

std::size_t Formula::hash() const noexcept { return node_->hash; }
std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::modal_depth() const noexcept { return node_->depth; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind ||
      a.node_->size != b.node_->size || a.node_->name != b.node_->name) {
    return false;
  }
  return a.node_->kids == b.node_->kids;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->name.compare(b.node_->name); c != 0) {
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const auto& ka = a.node_->kids;
  const auto& kb = b.node_->kids;
  for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i) {
    if (auto c = ka[i] <=> kb[i]; c != 0) return c;
  }
  return ka.size() <=> kb.size();
}

bool is_nnf(const Formula& f) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::Nom:
      return true;
    case Kind::Neg:
      return f.child().is_atom();
    case Kind::And:
    case Kind::Or:
      return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case Kind::Dia:
    case Kind::Box:
    case Kind::At:
      return is_nnf(f.child());
  }
  return false;
}

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::Nom:
      return negated ? Formula::neg(f) : f;
    case Kind::Neg:
      return nnf(f.child(), !negated);
    case Kind::And:
      return negated ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Kind::Or:
      return negated ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Kind::Dia:
      return negated ? Formula::box(nnf(f.child(), true)) : Formula::dia(nnf(f.child(), false));
    case Kind::Box:
      return negated ? Formula::dia(nnf(f.child(), true)) : Formula::box(nnf(f.child(), false));
    case Kind::At:
      return Formula::at(f.name(), nnf(f.child(), negated));
  }
  throw std::logic_error("unknown formula kind");
}

void collect_subformulas(const Formula& f, std::vector<Formula>& out, FormulaSet& seen) {
  if (!seen.insert(f).second) return;
  out.push_back(f);
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::Nom:
      return;
    case Kind::And:
    case Kind::Or:
      collect_subformulas(f.lhs(), out, seen);
      collect_subformulas(f.rhs(), out, seen);
      return;
    default:
      collect_subformulas(f.child(), out, seen);
  }
}

void collect_atoms(const Formula& f, std::set<Nominal>* noms, std::set<std::string>* props) {
  switch (f.kind()) {
    case Kind::Prop:
      if (props) props->insert(f.name());
      return;
    case Kind::Nom:
      if (noms) noms->insert(f.name());
      return;
    case Kind::And:
    case Kind::Or:
      collect_atoms(f.lhs(), noms, props);
      collect_atoms(f.rhs(), noms, props);
      return;
    case Kind::At:
      if (noms) noms->insert(f.name());
      collect_atoms(f.child(), noms, props);
      return;
    default:
      collect_atoms(f.child(), noms, props);
  }
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }
Formula complement(const Formula& f) { return nnf(f, true); }

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  FormulaSet seen;
  collect_subformulas(f, out, seen);
  return out;
}

bool is_subformula(const Formula& part, const Formula& whole) {
  if (part.size() > whole.size()) return false;
  if (part == whole) return true;
  switch (whole.kind()) {
    case Kind::Prop:
    case Kind::Nom:
      return false;
    case Kind::And:
    case Kind::Or:
      return is_subformula(part, whole.lhs()) || is_subformula(part, whole.rhs());
    default:
      return is_subformula(part, whole.child());
  }
}

std::set<Nominal> nominals_of(const Formula& f) {
  std::set<Nominal> out;
  collect_atoms(f, &out, nullptr);
  return out;
}

std::set<std::string> props_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, nullptr, &out);
  return out;
}

SubformulaClosure::SubformulaClosure(Formula root) : root_(std::move(root)), members_(subformulas(root_)) {
  index_.insert(members_.begin(), members_.end());
}

std::optional<std::size_t> reserved_index(std::string_view name) {
  if (name.size() < 2 || name[0] != 'n') return std::nullopt;
  std::size_t value = 0;
  const char* first = name.data() + 1;
  const char* last = name.data() + name.size();
  if (!std::all_of(first, last, [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

bool is_reserved_nominal(std::string_view name) { return reserved_index(name).has_value(); }

Nominal fresh_nominal(const std::set<Nominal>& used) {
  std::optional<std::size_t> top;
  for (const auto& n : used) {
    if (auto idx = reserved_index(n); idx && (!top || *idx > *top)) top = idx;
  }
  return "n" + std::to_string(top ? *top + 1 : 0);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

struct Symbols {
  const char* neg;
  const char* conj;
  const char* disj;
  const char* dia;
  const char* box;
};

constexpr Symbols kAscii{"~", " & ", " | ", "<>", "[]"};
constexpr Symbols kUnicode{"¬", " ∧ ", " ∨ ", "◇", "□"};

// Precedence: unary 3, and 2, or 1.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
      return 2;
    case Kind::Or:
      return 1;
    default:
      return 3;
  }
}

void print(const Formula& f, const Symbols& s, std::string& out);

void print_operand(const Formula& f, int min_prec, const Symbols& s, std::string& out) {
  if (precedence(f) < min_prec) {
    out += '(';
    print(f, s, out);
    out += ')';
  } else {
    print(f, s, out);
  }
}

void print(const Formula& f, const Symbols& s, std::string& out) {
  switch (f.kind()) {
    case Kind::Prop:
    case Kind::Nom:
      out += f.name();
      return;
    case Kind::Neg:
      out += s.neg;
      print_operand(f.child(), 3, s, out);
      return;
    case Kind::Dia:
      out += s.dia;
      print_operand(f.child(), 3, s, out);
      return;
    case Kind::Box:
      out += s.box;
      print_operand(f.child(), 3, s, out);
      return;
    case Kind::At:
      out += '@';
      out += f.name();
      out += ' ';
      print_operand(f.child(), 3, s, out);
      return;
    case Kind::And:
    case Kind::Or: {
      // Right-associative: a & (b & c) prints as a & b & c.
      const int p = precedence(f);
      print_operand(f.lhs(), p + 1, s, out);
      out += f.kind() == Kind::And ? s.conj : s.disj;
      print_operand(f.rhs(), p, s, out);
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f, Notation notation) {
  std::string out;
  print(f, notation == Notation::Ascii ? kAscii : kUnicode, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

}  // namespace hytab
