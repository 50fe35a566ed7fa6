#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "hytab/branch.hpp"
#include "hytab/calculus.hpp"
#include "hytab/rules.hpp"

namespace hytab {

enum class BranchStatus { Open, Closed, BudgetExceeded, Unexplored };

std::string_view to_string(BranchStatus s);

struct ExpandOptions {
  // Rule firings allowed per branch (counted from the root).
  std::uint64_t budget = 50'000;
  // 0 = deterministic agenda order; otherwise instances are picked at random
  // (still fairly: every queued instance is eventually examined).
  std::uint64_t seed = 0;
  // Stop once some leaf is open and saturated; the remaining leaves stay Unexplored.
  bool stop_at_open = false;
  // Re-derive saturation of every open leaf with the exhaustive rule scan.
  bool verify_saturation = true;
};

struct TableauNode {
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  // Entries [begin, end) of the branch were added while in this node.
  std::size_t begin = 0;
  std::size_t end = 0;
  // The [|] application that split this node, if any.
  std::optional<RuleSite> split;
  BranchStatus status = BranchStatus::Unexplored;
  // Full branch state at the leaf (null for inner nodes and unexplored leaves).
  std::shared_ptr<const Branch> branch;
  std::uint64_t firings = 0;
};

class Tableau {
 public:
  Tableau(Nominal root_nominal, Formula root_payload, CalculusSpec calculus);

  const CalculusSpec& calculus() const noexcept { return calculus_; }
  const Nominal& root_nominal() const noexcept { return root_nominal_; }
  const Formula& root_payload() const noexcept { return root_payload_; }
  const std::vector<TableauNode>& nodes() const noexcept { return nodes_; }

  std::vector<std::size_t> leaves() const;
  bool closed() const;
  bool budget_exceeded() const;
  std::optional<std::size_t> first_open_leaf() const;
  // Longest branch among explored leaves.
  std::size_t max_branch_size() const;
  std::uint64_t total_firings() const;

  // Runs the expansion; may be called once.
  void expand(const ExpandOptions& options);

 private:
  CalculusSpec calculus_;
  Nominal root_nominal_;
  Formula root_payload_;
  std::vector<TableauNode> nodes_;
  bool expanded_ = false;
};

// Complementary pair (@i a, @i ~a) with a compared in NNF; checked from scratch.
std::optional<EntryPair> is_closed(const Branch& b);

enum class Verdict { Provable, NotProvable, Budget };

std::string_view to_string(Verdict v);

struct Decision {
  Verdict verdict = Verdict::Budget;
  Formula input;
  Tableau tableau;
  // Leaf holding the open saturated branch when NotProvable.
  std::optional<std::size_t> open_leaf;

  const Branch& open_branch() const;
};

// Root nominal: i, i0, i1, ... whichever first does not occur in f.
Nominal root_nominal_for(const Formula& f);

// Tableau for @i nnf(~f) with i fresh for f.
Decision decide(const Formula& f, const CalculusSpec& cal, ExpandOptions options = {});

// Tableau for @i nnf(f): does f have a model (in the calculus' class)?
Decision satisfy(const Formula& f, const CalculusSpec& cal, ExpandOptions options = {});

}  // namespace hytab
