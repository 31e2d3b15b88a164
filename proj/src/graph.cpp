#include "blocker/graph.hpp"

#include <algorithm>

namespace blocker {

UndirectedGraph::UndirectedGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), adj_(n) {
  if (n < 0) throw InputError("negative vertex count");
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge endpoint out of range");
    }
    if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InputError("duplicate edge");
  }
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

bool UndirectedGraph::adjacent(int u, int v) const {
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

UndirectedGraph UndirectedGraph::induced(std::span<const int> keep) const {
  std::vector<int> index(n_, -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    if (keep[i] < 0 || keep[i] >= n_ || index[keep[i]] != -1) {
      throw InputError("invalid vertex list for induced subgraph");
    }
    index[keep[i]] = i;
  }
  std::vector<std::pair<int, int>> sub;
  for (const auto& [u, v] : edges_) {
    if (index[u] >= 0 && index[v] >= 0) sub.emplace_back(index[u], index[v]);
  }
  return UndirectedGraph(static_cast<int>(keep.size()), std::move(sub));
}

Digraph::Digraph(int n, std::vector<Arc> arcs)
    : n_(n), arcs_(std::move(arcs)), out_(n), in_(n) {
  if (n < 0) throw InputError("negative vertex count");
  for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.tail < 0 || arc.head < 0 || arc.tail >= n || arc.head >= n) {
      throw InputError("arc endpoint out of range");
    }
    if (arc.tail == arc.head) throw InputError("self-loop arc");
    if (arc.capacity < 0 || arc.length < 0 || arc.cost < 0) {
      throw InputError("negative arc attribute");
    }
    out_[arc.tail].push_back(a);
    in_[arc.head].push_back(a);
  }
}

BipartiteGraph::BipartiteGraph(int size_u, int size_v,
                               std::vector<std::pair<int, int>> edges)
    : size_u_(size_u), size_v_(size_v), adj_u_(size_u), adj_v_(size_v) {
  if (size_u < 0 || size_v < 0) throw InputError("negative side size");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= size_u || v < 0 || v >= size_v) {
      throw InputError("bipartite edge endpoint out of range");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw InputError("duplicate edge");
  }
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adj_u_[u].push_back(v);
    adj_v_[v].push_back(u);
  }
  for (auto& list : adj_v_) std::sort(list.begin(), list.end());
}

bool BipartiteGraph::adjacent(int u, int v) const {
  const auto& list = adj_u_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

}  // namespace blocker
