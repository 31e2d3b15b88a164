#include <numeric>
#include <sstream>

#include "blocker/graph.hpp"
#include "blocker/graph_algorithms.hpp"
#include "blocker/graph_io.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace blocker;

TEST_CASE("graph construction rejects loops and duplicates") {
  CHECK_THROWS_AS(UndirectedGraph(3, {{0, 0}}), InputError);
  CHECK_THROWS_AS(UndirectedGraph(3, {{0, 1}, {1, 0}}), InputError);
  CHECK_THROWS_AS(UndirectedGraph(3, {{0, 3}}), InputError);
  UndirectedGraph g(3, {{2, 0}, {1, 2}});
  CHECK(g.adjacent(0, 2));
  CHECK(g.adjacent(2, 1));
  CHECK(!g.adjacent(0, 1));
  CHECK(g.neighbors(2).size() == 2);
}

TEST_CASE("neighborhood_of_set") {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < 5; ++v) {
    e.emplace_back(0, v);
    e.emplace_back(1, v);
  }
  BipartiteGraph k25(2, 5, e);
  CHECK(neighborhood_of_set(k25, std::vector<int>{0}) == VertexSet{0, 1, 2, 3, 4});
  CHECK(neighborhood_of_set(k25, std::vector<int>{}).empty());
  CHECK_THROWS_AS(neighborhood_of_set(k25, std::vector<int>{2}), InputError);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    BipartiteGraph g = testutil::random_bipartite(4, 6, 0.4, rng);
    std::vector<int> sub{1, 3};
    std::vector<char> hit(6, 0);
    for (const auto& [u, v] : g.edges()) {
      if (u == 1 || u == 3) hit[v] = 1;
    }
    VertexSet expect;
    for (int v = 0; v < 6; ++v) {
      if (hit[v]) expect.push_back(v);
    }
    CHECK(neighborhood_of_set(g, sub) == expect);
  }
}

TEST_CASE("max flow examples") {
  Digraph one(2, {{0, 1, 7}});
  MaxFlowResult r = max_flow_min_cut(one, 0, 1);
  CHECK(r.value == 7);
  CHECK(r.cut == std::vector<int>{0});
  CHECK_THROWS_AS(max_flow_min_cut(one, 0, 0), InputError);

  // s=0 a=1 b=2 t=3
  Digraph two(4, {{0, 1, 3}, {0, 2, 3}, {1, 3, 1}, {2, 3, 5}});
  r = max_flow_min_cut(two, 0, 3);
  CHECK(r.value == 4);
  std::vector<char> removed{0, 1, 0, 0};
  CHECK(max_flow_min_cut(two, 0, 3, removed).value == 1);
}

TEST_CASE("max flow equals exhaustive min cut on random digraphs") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> cap(0, 9);
  std::bernoulli_distribution coin(0.45);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 8;
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        // Mostly forward arcs with a few back arcs to exercise cycles.
        if (u != v && coin(rng) && (u < v || trial % 3 == 0)) {
          arcs.push_back({u, v, cap(rng)});
        }
      }
    }
    Digraph g(n, arcs);
    const MaxFlowResult r = max_flow_min_cut(g, 0, n - 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int mask = 0; mask < (1 << (n - 2)); ++mask) {
      std::vector<char> side(n, 0);
      side[0] = 1;
      for (int v = 1; v < n - 1; ++v) side[v] = (mask >> (v - 1)) & 1;
      std::int64_t c = 0;
      for (const Arc& a : arcs) {
        if (side[a.tail] && !side[a.head]) c += a.capacity;
      }
      best = std::min(best, c);
    }
    CHECK(r.value == best);
    // Conservation and capacity.
    std::vector<std::int64_t> net(n, 0);
    for (int a = 0; a < g.num_arcs(); ++a) {
      CHECK(r.flow[a] >= 0);
      CHECK(r.flow[a] <= g.arc(a).capacity);
      net[g.arc(a).tail] -= r.flow[a];
      net[g.arc(a).head] += r.flow[a];
    }
    for (int v = 1; v < n - 1; ++v) CHECK(net[v] == 0);
    CHECK(net[n - 1] == r.value);
    std::int64_t cut_cap = 0;
    for (int a : r.cut) cut_cap += g.arc(a).capacity;
    CHECK(cut_cap == r.value);
    CHECK(std::find(r.source_side.begin(), r.source_side.end(), n - 1) == r.source_side.end());
  }
}

TEST_CASE("shortest path examples") {
  Digraph g(3, {{0, 1, 0, 1}, {1, 2, 0, 1}});
  std::vector<char> forbid{0, 1, 0};
  CHECK(!shortest_path_avoiding(g, 0, 2, forbid).has_value());
  auto p = shortest_path_avoiding(g, 0, 2);
  REQUIRE(p.has_value());
  CHECK(p->vertices == std::vector<int>{0, 1, 2});
  CHECK(p->length == 2);
}

TEST_CASE("shortest path equals simple-path enumeration") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> len(0, 4);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 50; ++trial) {
    // 3x3 grid plus random extra arcs; s = 0, t = 8.
    const int n = 9;
    std::vector<Arc> arcs;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        const int v = 3 * r + c;
        if (c < 2 && coin(rng)) arcs.push_back({v, v + 1, 0, len(rng)});
        if (r < 2 && coin(rng)) arcs.push_back({v, v + 3, 0, len(rng)});
        if (c > 0 && coin(rng)) arcs.push_back({v, v - 1, 0, len(rng)});
        if (r > 0 && coin(rng)) arcs.push_back({v, v - 3, 0, len(rng)});
      }
    }
    Digraph g(n, arcs);
    std::vector<char> forbidden(n, 0);
    if (trial % 2) forbidden[4] = 1;
    std::int64_t best = -1;
    std::vector<char> on(n, 0);
    auto dfs = [&](auto&& self, int v, std::int64_t d) -> void {
      if (v == n - 1) {
        if (best < 0 || d < best) best = d;
        return;
      }
      on[v] = 1;
      for (int a : g.out_arcs(v)) {
        const int w = g.arc(a).head;
        if (!on[w] && !forbidden[w]) self(self, w, d + g.arc(a).length);
      }
      on[v] = 0;
    };
    dfs(dfs, 0, 0);
    auto p = shortest_path_avoiding(g, 0, n - 1, forbidden);
    if (best < 0) {
      CHECK(!p.has_value());
      continue;
    }
    REQUIRE(p.has_value());
    CHECK(p->length == best);
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < p->vertices.size(); ++i) {
      std::int64_t arc_len = -1;
      for (int a : g.out_arcs(p->vertices[i])) {
        if (g.arc(a).head == p->vertices[i + 1] &&
            (arc_len < 0 || g.arc(a).length < arc_len)) {
          arc_len = g.arc(a).length;
        }
      }
      REQUIRE(arc_len >= 0);
      CHECK(!forbidden[p->vertices[i]]);
      total += arc_len;
    }
    CHECK(total == best);
  }
}

TEST_CASE("connected components") {
  CHECK(connected_components(UndirectedGraph(3, {})).size() == 3);
  CHECK(connected_components(UndirectedGraph(3, {{0, 1}, {1, 2}, {0, 2}})).size() == 1);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    UndirectedGraph g = testutil::random_graph(10, 0.2, rng);
    std::vector<int> parent(10);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (const auto& [u, v] : g.edges()) parent[find(u)] = find(v);
    auto comps = connected_components(g);
    int roots = 0;
    for (int v = 0; v < 10; ++v) roots += find(v) == v;
    CHECK(static_cast<int>(comps.size()) == roots);
    for (const auto& c : comps) {
      for (int v : c) CHECK(find(v) == find(c[0]));
    }
  }
}

TEST_CASE("greedy coloring and coreness") {
  UndirectedGraph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(greedy_coloring(k3).color_count == 3);
  UndirectedGraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
  CHECK(greedy_coloring(c6).color_count == 2);
  UndirectedGraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK(coreness(c5) == std::vector<int>(5, 2));
  UndirectedGraph star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(coreness(star) == std::vector<int>(5, 1));

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    UndirectedGraph g = testutil::random_graph(12, trial % 2 ? 0.5 : 0.4, rng);
    const Coloring col = greedy_coloring(g);
    for (const auto& [u, v] : g.edges()) CHECK(col.color_of[u] != col.color_of[v]);
    CHECK(col.color_count >= testutil::brute_clique_number(g));
    const auto core = coreness(g);
    for (int v = 0; v < 12; ++v) {
      CHECK(core[v] + 1 >= testutil::brute_clique_number(g, v));
    }
  }
}

TEST_CASE("maximum matching and Hall deficiency") {
  BipartiteGraph k22(2, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(maximum_matching(k22).size() == 2);
  BipartiteGraph iso(2, 2, {{1, 0}});
  CHECK(maximum_matching(iso).size() < 2);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    BipartiteGraph g = testutil::random_bipartite(5, 7, 0.3, rng);
    const auto m = maximum_matching(g);
    CHECK(static_cast<int>(m.size()) == testutil::brute_matching(g));
    int deficiency = 0;
    for (int mask = 1; mask < 32; ++mask) {
      std::vector<int> sub;
      for (int u = 0; u < 5; ++u) {
        if (mask >> u & 1) sub.push_back(u);
      }
      deficiency = std::max(deficiency, static_cast<int>(sub.size()) -
                                            static_cast<int>(neighborhood_of_set(g, sub).size()));
    }
    CHECK(5 - static_cast<int>(m.size()) == deficiency);
  }
}

TEST_CASE("dimacs round trip and rejection") {
  std::istringstream in("c sample\np edge 4 3\ne 1 2\ne 2 3\ne 3 2\ne 4 1\n");
  UndirectedGraph g = read_dimacs(in);
  CHECK(g.num_vertices() == 4);
  CHECK(g.num_edges() == 3);
  std::ostringstream out;
  write_dimacs(out, g);
  std::istringstream back(out.str());
  CHECK(read_dimacs(back).edges() == g.edges());
  std::istringstream dup("p edge 2 1\np edge 2 1\ne 1 2\n");
  CHECK_THROWS_AS(read_dimacs(dup), InputError);
  std::istringstream range("p edge 2 1\ne 1 3\n");
  CHECK_THROWS_AS(read_dimacs(range), InputError);
}
