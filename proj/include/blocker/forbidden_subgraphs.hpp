#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "blocker/graph.hpp"

namespace blocker {

// Adjacency bitmasks; n <= 64.
struct SmallGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;

  explicit SmallGraph(int count = 0) : n(count), adj(count, 0) {}
  static SmallGraph from(const UndirectedGraph& g);
  void add_edge(int u, int v) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  bool has(int u, int v) const { return adj[u] >> v & 1u; }
  int num_edges() const;
};

int clique_number(const SmallGraph& g);
bool is_chordal(const SmallGraph& g);
bool has_asteroidal_triple(const SmallGraph& g);
// Chordal and asteroidal-triple-free (Lekkerkerker-Boland).
bool is_interval(const SmallGraph& g);
bool is_m_clique_free_interval(const SmallGraph& g, int m);

enum class PatternKind { kBipartiteClaw, kUmbrella, kNet, kTent, kHole, kClique };

const char* to_string(PatternKind kind);

struct Pattern {
  PatternKind kind = PatternKind::kHole;
  int size = 0;  // n of n-net / n-tent, cycle length, clique order; 0 otherwise
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // role indices, u < v
  std::vector<std::string> roles;          // labels as in the figures
  bool has_edge(int a, int b) const;
};

// Claw and umbrella roles are 1..7; n-net roles a, b, 1..n, c, d; n-tent
// roles a, b, c, 1..n; hole roles u1..un; clique roles 1..n.
Pattern make_pattern(PatternKind kind, int size = 0);

struct Embedding {
  PatternKind kind = PatternKind::kHole;
  int size = 0;
  std::vector<int> vertices;  // host vertex of each role
};

struct EdgeCoef {
  int u = 0;  // host vertices, u < v
  int v = 0;
  int coef = 0;
};

// sum coef * z_uv <= rhs
struct CutRow {
  std::vector<EdgeCoef> terms;
  int rhs = 0;
  // z(u, v) for host pairs
  template <class Z>
  double lhs(Z&& z) const {
    double total = 0.0;
    for (const EdgeCoef& t : terms) total += t.coef * z(t.u, t.v);
    return total;
  }
};

CutRow bipartite_claw_cut(const Embedding& emb, int m);
CutRow umbrella_cut(const Embedding& emb, int m);
CutRow nnet_cut(const Embedding& emb);
// Throws when the clique inequality dominates (the tent has a clique of
// more than m vertices).
CutRow ntent_cut(const Embedding& emb, int m);
CutRow hole_cut(const Embedding& emb, int m);

// Minimum number of edges to delete from K_n so no clique has m + 1
// vertices (Turan).
std::int64_t f_km(int clique_size, int m);
// sum_i max(|K_i| - 1, 0) - (max_i |K_i| - 1) over the Turan parts.
std::int64_t clique_hole_alpha(int clique_size, int m);

CutRow clique_cut(std::span<const int> clique, int m);
CutRow clique_hole_cut(std::span<const int> clique, int m);

// Cut of the embedding's family (clique kinds use clique_cut).
CutRow cut_for(const Embedding& emb, int m);

// Copies of the pattern in g: every pattern edge present and, when
// `induced`, every other role pair absent. Each vertex set appears once per
// automorphism class order found first. At most `limit` results.
std::vector<Embedding> find_embeddings(const SmallGraph& g, const Pattern& p, bool induced,
                                       std::size_t limit = 1u << 20);

// Searches every graph on `n` labeled vertices for one that is m-clique-free
// interval and violates the row. Returns its edges when found.
std::optional<std::vector<std::pair<int, int>>> find_cut_counterexample(const CutRow& row, int n,
                                                                        int m);

// Identity embedding of the pattern on vertices 0..vertex_count-1.
Embedding identity_embedding(const Pattern& p);

}  // namespace blocker
