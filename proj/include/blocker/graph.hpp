#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace blocker {

// Raised for malformed instances, out-of-range ids and contract violations
// detectable from the arguments alone.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

using VertexSet = std::vector<int>;

// Simple undirected graph. Edges are stored with u < v, sorted.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  UndirectedGraph(int n, std::vector<std::pair<int, int>> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::span<const int> neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool adjacent(int u, int v) const;

  // Subgraph induced by `keep` (any order); vertex i of the result is keep[i].
  UndirectedGraph induced(std::span<const int> keep) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

struct Arc {
  int tail = 0;
  int head = 0;
  std::int64_t capacity = 0;
  std::int64_t length = 0;
  std::int64_t cost = 0;
};

// Directed graph with per-arc attributes. Parallel arcs allowed.
class Digraph {
 public:
  Digraph() = default;
  Digraph(int n, std::vector<Arc> arcs);

  int num_vertices() const { return n_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::span<const int> out_arcs(int v) const { return out_[v]; }
  std::span<const int> in_arcs(int v) const { return in_[v]; }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Bipartite graph with sides U = [0, size_u) and V = [0, size_v).
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(int size_u, int size_v, std::vector<std::pair<int, int>> edges);

  int size_u() const { return size_u_; }
  int size_v() const { return size_v_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::span<const int> neighbors_u(int u) const { return adj_u_[u]; }
  std::span<const int> neighbors_v(int v) const { return adj_v_[v]; }
  bool adjacent(int u, int v) const;

 private:
  int size_u_ = 0;
  int size_v_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_u_;
  std::vector<std::vector<int>> adj_v_;
};

}  // namespace blocker
