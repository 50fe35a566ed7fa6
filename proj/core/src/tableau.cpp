#include "hytab/tableau.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>

#include "hytab/error.hpp"

namespace hytab {

std::string_view to_string(BranchStatus s) {
  switch (s) {
    case BranchStatus::Open:
      return "open";
    case BranchStatus::Closed:
      return "closed";
    case BranchStatus::BudgetExceeded:
      return "budget-exceeded";
    case BranchStatus::Unexplored:
      return "unexplored";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Provable:
      return "provable";
    case Verdict::NotProvable:
      return "not provable";
    case Verdict::Budget:
      return "budget exceeded";
  }
  return "?";
}

namespace {

// Two tiers: everything that does not invent a nominal runs before [<>]/[Ser],
// so twins are visible to (D) before new nominals appear. Within a tier the
// order is (latest premise, priority, arrival).
class Agenda {
 public:
  void push(const Branch& b, RuleSite site) {
    Key key{trigger_entry(b, site), rule_priority(site.rule), counter_++};
    (is_generating(site.rule) ? generating_ : plain_).emplace(key, std::move(site));
  }

  bool has_plain() const { return !plain_.empty(); }

  RuleSite pop_plain(std::mt19937_64* rng) {
    auto it = plain_.begin();
    if (rng) std::advance(it, static_cast<std::ptrdiff_t>((*rng)() % plain_.size()));
    RuleSite site = std::move(it->second);
    plain_.erase(it);
    return site;
  }

  // First generating instance that is applicable now. Instances whose once-only
  // flag has been used are dropped; those blocked by (D) stay queued.
  std::optional<RuleInstance> take_generating(const Branch& b, const CalculusSpec& cal, std::mt19937_64* rng) {
    std::vector<Key> order;
    order.reserve(generating_.size());
    for (const auto& [k, s] : generating_) order.push_back(k);
    if (rng) std::shuffle(order.begin(), order.end(), *rng);
    for (const Key& k : order) {
      const RuleSite& site = generating_.at(k);
      if (auto inst = evaluate(b, cal, site)) {
        generating_.erase(k);
        return inst;
      }
      const bool spent = site.rule == RuleTag::Dia ? b.dia_fired(site.premises[0])
                                                   : b.nullary_fired(RuleTag::Ser, site.nominal);
      if (spent) generating_.erase(k);
    }
    return std::nullopt;
  }

 private:
  using Key = std::tuple<std::size_t, int, std::uint64_t>;
  std::map<Key, RuleSite> plain_;
  std::map<Key, RuleSite> generating_;
  std::uint64_t counter_ = 0;
};

struct Work {
  std::size_t node;
  Branch branch;
  Agenda agenda;
  std::uint64_t firings = 0;
};

void enqueue(Work& w, const CalculusSpec& cal, std::size_t entry) {
  for (auto& site : sites_triggered_by(w.branch, cal, entry)) w.agenda.push(w.branch, std::move(site));
}

void apply(Work& w, const CalculusSpec& cal, const RuleInstance& inst, std::size_t alternative) {
  const RuleSite& site = inst.site;
  if (site.rule == RuleTag::Dia) w.branch.mark_dia_fired(site.premises[0]);
  if (site.rule == RuleTag::Ser) w.branch.mark_nullary_fired(RuleTag::Ser, site.nominal);
  for (const auto& c : inst.alternatives[alternative]) {
    if (auto k = w.branch.append(c.prefix, c.payload, c.accessibility, Origin{site.rule, site.premises})) {
      enqueue(w, cal, *k);
    }
  }
  ++w.firings;
}

std::string describe(const RuleSite& site) {
  std::string out = "[" + std::string(rule_name(site.rule));
  for (std::size_t p : site.premises) out += " " + std::to_string(p + 1);
  if (site.premises.empty()) out += " " + site.nominal;
  return out + "]";
}

}  // namespace

Tableau::Tableau(Nominal root_nominal, Formula root_payload, CalculusSpec calculus)
    : calculus_(std::move(calculus)), root_nominal_(std::move(root_nominal)), root_payload_(std::move(root_payload)) {}

void Tableau::expand(const ExpandOptions& options) {
  if (expanded_) throw Error("tableau already expanded");
  expanded_ = true;
  if (options.budget < 1) throw Error("budget must be at least 1");

  std::mt19937_64 engine(options.seed);
  std::mt19937_64* rng = options.seed ? &engine : nullptr;

  nodes_.assign(1, TableauNode{});
  std::vector<Work> stack;
  stack.push_back(Work{0, Branch(root_nominal_, root_payload_, calculus_.tset), {}, 0});
  enqueue(stack.back(), calculus_, 0);

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    TableauNode* node = &nodes_[w.node];
    BranchStatus status = BranchStatus::Open;

    while (true) {
      if (w.branch.closed()) {
        status = BranchStatus::Closed;
        break;
      }
      std::optional<RuleInstance> inst;
      while (!inst && w.agenda.has_plain()) inst = evaluate(w.branch, calculus_, w.agenda.pop_plain(rng));
      if (!inst) inst = w.agenda.take_generating(w.branch, calculus_, rng);
      if (!inst) break;
      if (w.firings >= options.budget) {
        status = BranchStatus::BudgetExceeded;
        break;
      }
      if (inst->alternatives.size() == 1) {
        apply(w, calculus_, *inst, 0);
        continue;
      }
      // [|]: this node ends here; each alternative continues in a child.
      node->end = w.branch.size();
      node->split = inst->site;
      const std::size_t left = nodes_.size();
      for (std::size_t alt = 0; alt < inst->alternatives.size(); ++alt) {
        TableauNode child;
        child.parent = w.node;
        child.begin = w.branch.size();
        nodes_.push_back(std::move(child));
      }
      node = &nodes_[w.node];
      for (std::size_t alt = 0; alt < inst->alternatives.size(); ++alt) node->children.push_back(left + alt);
      for (std::size_t alt = inst->alternatives.size(); alt-- > 0;) {
        Work child{left + alt, w.branch, w.agenda, w.firings};
        apply(child, calculus_, *inst, alt);
        stack.push_back(std::move(child));
      }
      status = BranchStatus::Unexplored;
      break;
    }
    if (!node->children.empty()) continue;

    if (status == BranchStatus::Open && options.verify_saturation) {
      auto missed = applicable_rules(w.branch, calculus_);
      if (!missed.empty()) {
        throw Error("internal: branch reported saturated but " + describe(missed.front().site) + " applies");
      }
    }
    node->end = w.branch.size();
    node->status = status;
    node->firings = w.firings;
    node->branch = std::make_shared<const Branch>(std::move(w.branch));
    if (status == BranchStatus::Open && options.stop_at_open) break;
  }
}

std::vector<std::size_t> Tableau::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    if (nodes_[k].children.empty()) out.push_back(k);
  }
  return out;
}

bool Tableau::closed() const {
  if (nodes_.empty()) return false;
  for (std::size_t k : leaves()) {
    if (nodes_[k].status != BranchStatus::Closed) return false;
  }
  return true;
}

bool Tableau::budget_exceeded() const {
  for (std::size_t k : leaves()) {
    if (nodes_[k].status == BranchStatus::BudgetExceeded) return true;
  }
  return false;
}

std::optional<std::size_t> Tableau::first_open_leaf() const {
  for (std::size_t k : leaves()) {
    if (nodes_[k].status == BranchStatus::Open) return k;
  }
  return std::nullopt;
}

std::size_t Tableau::max_branch_size() const {
  std::size_t out = 0;
  for (const auto& n : nodes_) {
    if (n.branch) out = std::max(out, n.branch->size());
  }
  return out;
}

std::uint64_t Tableau::total_firings() const {
  std::uint64_t out = 0;
  for (const auto& n : nodes_) out += n.firings;
  return out;
}

std::optional<EntryPair> is_closed(const Branch& b) {
  const auto& es = b.entries();
  std::vector<Formula> comp;
  comp.reserve(es.size());
  for (const auto& e : es) comp.push_back(complement(e.payload));
  for (std::size_t later = 0; later < es.size(); ++later) {
    for (std::size_t earlier = 0; earlier < later; ++earlier) {
      if (es[earlier].prefix == es[later].prefix && es[earlier].payload == comp[later]) {
        return EntryPair{earlier, later};
      }
    }
  }
  return std::nullopt;
}

const Branch& Decision::open_branch() const {
  if (!open_leaf) throw PreconditionError("decision has no open branch");
  return *tableau.nodes()[*open_leaf].branch;
}

Nominal root_nominal_for(const Formula& f) {
  const auto noms = nominals_of(f);
  const auto props = props_of(f);
  auto used = [&](const std::string& s) { return noms.count(s) || props.count(s); };
  if (!used("i")) return "i";
  for (std::size_t k = 0;; ++k) {
    std::string name = "i" + std::to_string(k);
    if (!used(name)) return name;
  }
}

namespace {

Decision run(const Formula& input, const Formula& payload, const CalculusSpec& cal, ExpandOptions options) {
  options.stop_at_open = true;
  Decision d{Verdict::Budget, input, Tableau(root_nominal_for(input), payload, cal), std::nullopt};
  d.tableau.expand(options);
  d.open_leaf = d.tableau.first_open_leaf();
  if (d.open_leaf) {
    d.verdict = Verdict::NotProvable;
  } else if (d.tableau.closed()) {
    d.verdict = Verdict::Provable;
  }
  return d;
}

}  // namespace

Decision decide(const Formula& f, const CalculusSpec& cal, ExpandOptions options) {
  return run(f, complement(f), cal, options);
}

Decision satisfy(const Formula& f, const CalculusSpec& cal, ExpandOptions options) {
  return run(f, to_nnf(f), cal, options);
}

}  // namespace hytab
