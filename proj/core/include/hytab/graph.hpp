#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hytab::graph {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// Transitive closure by a search from every node; reflexive adds all (x, x).
std::vector<std::pair<std::size_t, std::size_t>> closure(const Adjacency& g, bool reflexive);

// Strongly connected components (Tarjan). Components come out in reverse
// topological order; members are sorted.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Adjacency& g);

}  // namespace hytab::graph
