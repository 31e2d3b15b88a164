#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blocker/graph.hpp"

namespace blocker {

// N(U') for U' a subset of the U side. Result sorted.
VertexSet neighborhood_of_set(const BipartiteGraph& g,
                              std::span<const int> subset_u);

struct MaxFlowResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> flow;  // per arc
  std::vector<int> cut;            // arcs from source side to sink side
  VertexSet source_side;
};

// `removed_arcs`, when non-empty, has one flag per arc; flagged arcs carry
// no flow.
MaxFlowResult max_flow_min_cut(const Digraph& g, int s, int t,
                               std::span<const char> removed_arcs = {});

struct Path {
  std::vector<int> vertices;
  std::int64_t length = 0;
};

// Minimum-length s-t path through non-forbidden vertices. Among shortest
// paths the one with fewest arcs is taken, then the lexicographically
// smallest vertex sequence. `forbidden` is a per-vertex flag vector or empty.
std::optional<Path> shortest_path_avoiding(const Digraph& g, int s, int t,
                                           std::span<const char> forbidden = {});

// Components sorted by smallest vertex; each component sorted. Masked
// vertices (flag set in `removed`) are skipped entirely.
std::vector<VertexSet> connected_components(const UndirectedGraph& g,
                                            std::span<const char> removed = {});

struct Coloring {
  int color_count = 0;
  std::vector<int> color_of;
};

// Builds color classes one at a time as maximal independent sets scanned in
// vertex order.
Coloring greedy_coloring(const UndirectedGraph& g);

std::vector<int> coreness(const UndirectedGraph& g);

// Hopcroft-Karp. Returns matched (u, v) pairs sorted by u. Flagged V
// vertices in `removed_v` are unavailable.
std::vector<std::pair<int, int>> maximum_matching(
    const BipartiteGraph& g, std::span<const char> removed_v = {});

}  // namespace blocker
