#include "hytab/branch.hpp"

#include <algorithm>
#include <stdexcept>

namespace hytab {

bool prefixed_subformula(const PrefixedFormula& a, const PrefixedFormula& b) {
  return is_subformula(a.payload, b.payload);
}

TUniverse::TUniverse(const Nominal& root_nominal, const Formula& root_payload, TSetVariant variant)
    : variant_(variant), root_nominals_(nominals_of(Formula::at(root_nominal, root_payload))) {
  for (const auto& f : subformulas(root_payload)) add(f, true);
  if (variant == TSetVariant::None) return;
  for (const auto& j : root_nominals_) {
    const Formula nj = Formula::nom(j);
    const Formula irr = Formula::box(Formula::neg(nj));
    const Formula seed = variant == TSetVariant::I4 ? irr : Formula::box(Formula::disj(nj, irr));
    for (const auto& f : subformulas(seed)) add(f, false);
  }
}

void TUniverse::add(const Formula& f, bool t1) {
  auto [it, inserted] = index_.emplace(f, members_.size());
  if (inserted) {
    members_.push_back(f);
    t1_.push_back(false);
    t2_.push_back(false);
  }
  (t1 ? t1_ : t2_)[it->second] = true;
}

std::optional<std::size_t> TUniverse::index(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool TUniverse::root_subformula(const Formula& f) const {
  auto k = index(f);
  return k && t1_[*k];
}

// ---------------------------------------------------------------------------

Branch::Branch(Nominal root_nominal, Formula root_payload, TSetVariant variant)
    : universe_(std::make_shared<TUniverse>(root_nominal, root_payload, variant)) {
  if (nominals_of(root_payload).count(root_nominal)) {
    throw std::invalid_argument("root nominal '" + root_nominal + "' occurs in the root payload");
  }
  append(root_nominal, root_payload, false, Origin{RuleTag::Root, {}});
}

Branch::NomId Branch::intern(const Nominal& i, std::size_t entry) {
  auto [it, inserted] = nom_index_.emplace(i, noms_.size());
  if (inserted) {
    noms_.push_back(i);
    NomInfo info;
    info.intro_entry = entry;
    info.tbits.assign((universe_->size() + 63) / 64, 0);
    info_.push_back(std::move(info));
    if (auto k = reserved_index(i)) next_fresh_ = std::max(next_fresh_, *k + 1);
  }
  return it->second;
}

Branch::NomId Branch::id(const Nominal& i) const {
  auto it = nom_index_.find(i);
  if (it == nom_index_.end()) throw std::out_of_range("nominal '" + i + "' does not occur in the branch");
  return it->second;
}

std::optional<std::size_t> Branch::append(const Nominal& prefix, const Formula& payload, bool accessibility,
                                          Origin origin) {
  if (auto it = nom_index_.find(prefix); it != nom_index_.end() && index_.count(Key{it->second, payload})) {
    return std::nullopt;
  }
  const std::size_t k = entries_.size();
  const NomId p = intern(prefix, k);
  for (const auto& n : nominals_of(payload)) intern(n, k);

  entries_.push_back(PrefixedFormula{prefix, payload, accessibility, std::move(origin), k});
  index_.emplace(Key{p, payload}, k);
  info_[p].entries.push_back(k);

  if (accessibility) {
    const NomId child = id(payload.child().name());
    if (child != p && !info_[child].parent) {
      info_[child].parent = p;
      info_[p].children.push_back(child);
    }
  }
  if (auto u = universe_->index(payload)) info_[p].tbits[*u / 64] |= std::uint64_t{1} << (*u % 64);

  if (!witness_) {
    if (auto other = index_.find(Key{p, complement(payload)}); other != index_.end()) {
      witness_ = EntryPair{other->second, k};
    }
  }
  return k;
}

std::optional<std::size_t> Branch::find(const Nominal& prefix, const Formula& payload) const {
  auto n = nom_index_.find(prefix);
  if (n == nom_index_.end()) return std::nullopt;
  auto it = index_.find(Key{n->second, payload});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Branch::intro_entry(const Nominal& i) const { return info_[id(i)].intro_entry; }
std::size_t Branch::intro_rank(const Nominal& i) const { return id(i); }

const std::vector<std::size_t>& Branch::at_prefix(const Nominal& i) const {
  static const std::vector<std::size_t> none;
  auto it = nom_index_.find(i);
  return it == nom_index_.end() ? none : info_[it->second].entries;
}

Nominal Branch::fresh() const { return "n" + std::to_string(next_fresh_); }

std::optional<Nominal> Branch::parent(const Nominal& i) const {
  const auto& p = info_[id(i)].parent;
  if (!p) return std::nullopt;
  return noms_[*p];
}

std::vector<Nominal> Branch::children(const Nominal& i) const {
  std::vector<Nominal> out;
  for (NomId c : info_[id(i)].children) out.push_back(noms_[c]);
  return out;
}

bool Branch::nullary_fired(RuleTag r, const Nominal& i) const { return nullary_fired_.count({r, id(i)}) != 0; }
void Branch::mark_nullary_fired(RuleTag r, const Nominal& i) { nullary_fired_.insert({r, id(i)}); }

const TBits& Branch::t_bits(const Nominal& i) const { return info_[id(i)].tbits; }

std::set<Formula> Branch::t_set(const Nominal& i) const {
  std::set<Formula> out;
  const auto& bits = t_bits(i);
  for (std::size_t k = 0; k < universe_->size(); ++k) {
    if ((bits[k / 64] >> (k % 64)) & 1U) out.insert(universe_->member(k));
  }
  return out;
}

bool Branch::twins(const Nominal& i, const Nominal& j) const { return t_bits(i) == t_bits(j); }

bool Branch::quasi_urfather(const Nominal& i) const {
  // Ancestors-or-self along the generation forest (in-degree is at most one).
  std::set<TBits> seen;
  std::optional<NomId> cur = id(i);
  while (cur) {
    if (!seen.insert(info_[*cur].tbits).second) return false;
    cur = info_[*cur].parent;
  }
  return true;
}

std::optional<Nominal> Branch::identity_urfather(const Nominal& i) const {
  const auto& bits = t_bits(i);
  for (NomId j = 0; j < noms_.size(); ++j) {
    if (info_[j].tbits == bits && quasi_urfather(noms_[j])) return noms_[j];
  }
  return std::nullopt;
}

}  // namespace hytab
