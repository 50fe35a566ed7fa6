#include "hytab/trace.hpp"

#include <functional>
#include <sstream>

namespace hytab {

std::string entry_line(const Branch& b, std::size_t k, Notation notation) {
  const PrefixedFormula& e = b[k];
  std::string out = std::to_string(k + 1) + ". @" + e.prefix + " " + to_string(e.payload, notation);
  if (e.accessibility) out += " *";
  if (e.origin.rule == RuleTag::Root) return out;
  out += "  [" + std::string(rule_name(e.origin.rule));
  if (!e.origin.premises.empty()) {
    out += notation == Notation::Ascii ? " <- " : " ← ";
    for (std::size_t p = 0; p < e.origin.premises.size(); ++p) {
      out += (p ? "," : "") + std::to_string(e.origin.premises[p] + 1);
    }
  }
  return out + "]";
}

std::string branch_text(const Branch& b, Notation notation) {
  std::string out;
  for (std::size_t k = 0; k < b.size(); ++k) out += entry_line(b, k, notation) + "\n";
  return out;
}

std::string trace_text(const Tableau& t, Notation notation) {
  const auto& nodes = t.nodes();
  std::ostringstream os;
  const char* cross = notation == Notation::Ascii ? "x" : "✗";

  std::function<const Branch*(std::size_t)> branch_below = [&](std::size_t k) -> const Branch* {
    if (nodes[k].branch) return nodes[k].branch.get();
    for (std::size_t c : nodes[k].children) {
      if (const Branch* b = branch_below(c)) return b;
    }
    return nullptr;
  };

  std::function<void(std::size_t, const std::string&)> render = [&](std::size_t k, const std::string& indent) {
    const auto& node = nodes[k];
    const Branch* b = branch_below(k);
    if (!b) {
      os << indent << "(not explored)\n";
      return;
    }
    for (std::size_t e = node.begin; e < node.end; ++e) os << indent << entry_line(*b, e, notation) << '\n';
    if (!node.children.empty()) {
      for (std::size_t c = 0; c < node.children.size(); ++c) {
        os << indent << "branch " << (c + 1) << " of " << node.children.size() << ":\n";
        render(node.children[c], indent + "  ");
      }
      return;
    }
    switch (node.status) {
      case BranchStatus::Closed: {
        const auto [x, y] = *node.branch->closure_witness();
        os << indent << cross << " closed by " << (x + 1) << " and " << (y + 1) << '\n';
        break;
      }
      case BranchStatus::Open:
        os << indent << "open, saturated\n";
        break;
      case BranchStatus::BudgetExceeded:
        os << indent << "budget exceeded after " << node.firings << " firings\n";
        break;
      case BranchStatus::Unexplored:
        os << indent << "(not explored)\n";
        break;
    }
  };
  if (!nodes.empty()) render(0, "");
  return os.str();
}

}  // namespace hytab
