#include "hytab/graph.hpp"

#include <algorithm>
#include <limits>

namespace hytab::graph {

Adjacency from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Adjacency g(n);
  for (auto [a, b] : edges) g[a].push_back(b);
  for (auto& s : g) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> closure(const Adjacency& g, bool reflexive) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = g.size();
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack(g[s].begin(), g[s].end());
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      if (seen[v]) continue;
      seen[v] = true;
      stack.insert(stack.end(), g[v].begin(), g[v].end());
    }
    if (reflexive) seen[s] = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v]) out.emplace_back(s, v);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& g) {
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.size();
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  // Iterative Tarjan: frames of (node, next child position).
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < g[v].size()) {
        const std::size_t w = g[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      const std::size_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return out;
}

}  // namespace hytab::graph
