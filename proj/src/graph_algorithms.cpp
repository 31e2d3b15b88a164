#include "blocker/graph_algorithms.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "blocker/max_flow.hpp"

namespace blocker {

namespace {

bool flagged(std::span<const char> mask, int i) {
  return !mask.empty() && mask[i];
}

}  // namespace

VertexSet neighborhood_of_set(const BipartiteGraph& g,
                              std::span<const int> subset_u) {
  std::vector<char> hit(g.size_v(), 0);
  for (int u : subset_u) {
    if (u < 0 || u >= g.size_u()) throw InputError("U vertex out of range");
    for (int v : g.neighbors_u(u)) hit[v] = 1;
  }
  VertexSet out;
  for (int v = 0; v < g.size_v(); ++v) {
    if (hit[v]) out.push_back(v);
  }
  return out;
}

MaxFlowResult max_flow_min_cut(const Digraph& g, int s, int t,
                               std::span<const char> removed_arcs) {
  const int n = g.num_vertices();
  if (s < 0 || t < 0 || s >= n || t >= n) throw InputError("s/t out of range");
  if (s == t) throw InputError("max flow requires s != t");
  if (!removed_arcs.empty() &&
      static_cast<int>(removed_arcs.size()) != g.num_arcs()) {
    throw InputError("arc mask size mismatch");
  }
  PushRelabel<std::int64_t> solver(n);
  std::vector<int> ids(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    ids[a] = solver.add_arc(arc.tail, arc.head,
                            flagged(removed_arcs, a) ? 0 : arc.capacity);
  }
  MaxFlowResult result;
  result.value = solver.solve(s, t);
  result.flow.resize(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) result.flow[a] = solver.flow(ids[a]);
  const std::vector<char> side = solver.source_side();
  for (int v = 0; v < n; ++v) {
    if (side[v]) result.source_side.push_back(v);
  }
  for (int a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    if (side[arc.tail] && !side[arc.head] && !flagged(removed_arcs, a)) {
      result.cut.push_back(a);
    }
  }
  return result;
}

std::optional<Path> shortest_path_avoiding(const Digraph& g, int s, int t,
                                           std::span<const char> forbidden) {
  const int n = g.num_vertices();
  if (s < 0 || t < 0 || s >= n || t >= n) throw InputError("s/t out of range");
  if (flagged(forbidden, s) || flagged(forbidden, t)) return std::nullopt;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  // Reverse Dijkstra from t keyed by (distance, arc count).
  std::vector<std::int64_t> dist(n, kInf);
  std::vector<int> hops(n, std::numeric_limits<int>::max());
  using Key = std::tuple<std::int64_t, int, int>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  dist[t] = 0;
  hops[t] = 0;
  heap.emplace(0, 0, t);
  while (!heap.empty()) {
    const auto [d, h, v] = heap.top();
    heap.pop();
    if (d != dist[v] || h != hops[v]) continue;
    for (int a : g.in_arcs(v)) {
      const int u = g.arc(a).tail;
      if (flagged(forbidden, u)) continue;
      const std::int64_t nd = d + g.arc(a).length;
      if (nd < dist[u] || (nd == dist[u] && h + 1 < hops[u])) {
        dist[u] = nd;
        hops[u] = h + 1;
        heap.emplace(nd, h + 1, u);
      }
    }
  }
  if (dist[s] == kInf) return std::nullopt;
  Path path;
  path.length = dist[s];
  path.vertices.push_back(s);
  int v = s;
  while (v != t) {
    int next = -1;
    for (int a : g.out_arcs(v)) {
      const int w = g.arc(a).head;
      if (flagged(forbidden, w) || dist[w] == kInf) continue;
      if (dist[v] == g.arc(a).length + dist[w] && hops[v] == hops[w] + 1 &&
          (next == -1 || w < next)) {
        next = w;
      }
    }
    path.vertices.push_back(next);
    v = next;
  }
  return path;
}

std::vector<VertexSet> connected_components(const UndirectedGraph& g,
                                            std::span<const char> removed) {
  const int n = g.num_vertices();
  std::vector<char> seen(n, 0);
  std::vector<VertexSet> out;
  for (int r = 0; r < n; ++r) {
    if (seen[r] || flagged(removed, r)) continue;
    VertexSet comp{r};
    seen[r] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (int w : g.neighbors(comp[i])) {
        if (!seen[w] && !flagged(removed, w)) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Coloring greedy_coloring(const UndirectedGraph& g) {
  const int n = g.num_vertices();
  Coloring c;
  c.color_of.assign(n, -1);
  std::vector<int> uncolored(n);
  for (int v = 0; v < n; ++v) uncolored[v] = v;
  std::vector<char> blocked(n, 0);
  while (!uncolored.empty()) {
    std::fill(blocked.begin(), blocked.end(), 0);
    std::vector<int> rest;
    for (int v : uncolored) {
      if (blocked[v]) {
        rest.push_back(v);
        continue;
      }
      c.color_of[v] = c.color_count;
      for (int w : g.neighbors(v)) blocked[w] = 1;
    }
    ++c.color_count;
    uncolored = std::move(rest);
  }
  return c;
}

std::vector<int> coreness(const UndirectedGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> deg(n), core(n, 0);
  int max_deg = 0;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket peeling (Batagelj-Zaversnik).
  std::vector<int> bin(max_deg + 2, 0), pos(n), order(n);
  for (int v = 0; v < n; ++v) ++bin[deg[v]];
  int start = 0;
  for (int d = 0; d <= max_deg; ++d) {
    const int count = bin[d];
    bin[d] = start;
    start += count;
  }
  for (int v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (int d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    core[v] = deg[v];
    for (int w : g.neighbors(v)) {
      if (deg[w] > deg[v]) {
        const int dw = deg[w];
        const int pw = pos[w];
        const int first = bin[dw];
        const int u = order[first];
        if (u != w) {
          order[first] = w;
          pos[w] = first;
          order[pw] = u;
          pos[u] = pw;
        }
        ++bin[dw];
        --deg[w];
      }
    }
  }
  return core;
}

std::vector<std::pair<int, int>> maximum_matching(
    const BipartiteGraph& g, std::span<const char> removed_v) {
  const int nu = g.size_u();
  const int nv = g.size_v();
  constexpr int kNone = -1;
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> mate_u(nu, kNone), mate_v(nv, kNone), layer(nu);
  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < nu; ++u) {
      if (mate_u[u] == kNone) {
        layer[u] = 0;
        q.push(u);
      } else {
        layer[u] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : g.neighbors_u(u)) {
        if (flagged(removed_v, v)) continue;
        const int w = mate_v[v];
        if (w == kNone) {
          found = true;
        } else if (layer[w] == kInf) {
          layer[w] = layer[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };
  auto dfs = [&](auto&& self, int u) -> bool {
    for (int v : g.neighbors_u(u)) {
      if (flagged(removed_v, v)) continue;
      const int w = mate_v[v];
      if (w == kNone || (layer[w] == layer[u] + 1 && self(self, w))) {
        mate_u[u] = v;
        mate_v[v] = u;
        return true;
      }
    }
    layer[u] = kInf;
    return false;
  };
  while (bfs()) {
    for (int u = 0; u < nu; ++u) {
      if (mate_u[u] == kNone) dfs(dfs, u);
    }
  }
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < nu; ++u) {
    if (mate_u[u] != kNone) out.emplace_back(u, mate_u[u]);
  }
  return out;
}

}  // namespace blocker
