#include "blocker/forbidden_subgraphs.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace blocker {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

Mask all_vertices(int n) { return n == 64 ? ~Mask{0} : bit(n) - 1; }

// Largest clique inside `cand`, capped once `need` is reached.
int clique_in(const SmallGraph& g, Mask cand, int size, int need) {
  if (cand == 0 || size >= need) return size;
  int best = size;
  while (cand != 0) {
    if (size + std::popcount(cand) <= best) break;
    int v = std::countr_zero(cand);
    cand &= cand - 1;
    best = std::max(best, clique_in(g, cand & g.adj[v], size + 1, need));
    if (best >= need) break;
  }
  return best;
}

bool has_clique(const SmallGraph& g, Mask cand, int k) {
  if (k <= 0) return true;
  return clique_in(g, cand, 0, k) >= k;
}

// Component label of every vertex of g restricted to `alive`; -1 outside.
std::vector<int> components(const SmallGraph& g, Mask alive) {
  std::vector<int> label(g.n, -1);
  int next = 0;
  Mask left = alive;
  while (left != 0) {
    Mask comp = bit(std::countr_zero(left));
    Mask frontier = comp;
    while (frontier != 0) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      Mask fresh = g.adj[v] & alive & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    for (Mask c = comp; c != 0; c &= c - 1) label[std::countr_zero(c)] = next;
    ++next;
    left &= ~comp;
  }
  return label;
}

std::pair<int, int> ordered(int u, int v) { return u < v ? std::pair{u, v} : std::pair{v, u}; }

// Row over role pairs mapped to host vertices; zero coefficients dropped.
CutRow map_row(const Embedding& emb, const std::map<std::pair<int, int>, int>& coef, int rhs) {
  CutRow row;
  row.rhs = rhs;
  for (const auto& [roles, c] : coef) {
    if (c == 0) continue;
    auto [u, v] = ordered(emb.vertices.at(roles.first), emb.vertices.at(roles.second));
    row.terms.push_back({u, v, c});
  }
  std::sort(row.terms.begin(), row.terms.end(), [](const EdgeCoef& a, const EdgeCoef& b) {
    return std::pair{a.u, a.v} < std::pair{b.u, b.v};
  });
  return row;
}

void check_embedding(const Embedding& emb, PatternKind kind, const char* name) {
  if (emb.kind != kind) throw InputError(std::string(name) + ": wrong embedding kind");
  Pattern p = make_pattern(kind, emb.size);
  if (static_cast<int>(emb.vertices.size()) != p.vertex_count)
    throw InputError(std::string(name) + ": embedding has wrong vertex count");
  std::vector<int> sorted = emb.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      (!sorted.empty() && sorted.front() < 0))
    throw InputError(std::string(name) + ": embedding vertices must be distinct");
}

// Pairs given with the 1-based figure labels.
std::vector<std::pair<int, int>> labels(std::initializer_list<std::pair<int, int>> pairs) {
  std::vector<std::pair<int, int>> out;
  for (auto [a, b] : pairs) out.push_back(ordered(a - 1, b - 1));
  return out;
}

// Pattern edges minus `free_pattern` get +1, complement pairs minus
// `free_complement` get -1, rhs = |positive| - 1.
CutRow removal_or_addition_cut(const Embedding& emb, const Pattern& p,
                               const std::vector<std::pair<int, int>>& free_pattern,
                               const std::vector<std::pair<int, int>>& free_complement) {
  std::map<std::pair<int, int>, int> coef;
  int positive = 0;
  for (int a = 0; a < p.vertex_count; ++a) {
    for (int b = a + 1; b < p.vertex_count; ++b) {
      std::pair<int, int> e{a, b};
      if (p.has_edge(a, b)) {
        if (std::find(free_pattern.begin(), free_pattern.end(), e) != free_pattern.end()) continue;
        coef[e] = 1;
        ++positive;
      } else if (std::find(free_complement.begin(), free_complement.end(), e) ==
                 free_complement.end()) {
        coef[e] = -1;
      }
    }
  }
  return map_row(emb, coef, positive - 1);
}

struct TuranParts {
  std::int64_t small = 0;  // parts of size alpha - 1
  std::int64_t large = 0;  // parts of size alpha
  std::int64_t alpha = 0;
};

TuranParts turan_parts(int size, int m) {
  if (size < 1 || m < 1) throw InputError("f_km: clique size and m must be positive");
  TuranParts t;
  t.alpha = (size + m - 1) / m;
  t.small = m * t.alpha - size;
  t.large = (size - t.small * (t.alpha - 1)) / t.alpha;
  return t;
}

std::vector<int> checked_clique(std::span<const int> clique) {
  std::vector<int> k(clique.begin(), clique.end());
  std::sort(k.begin(), k.end());
  if (k.empty()) throw InputError("clique cut: empty clique");
  if (std::adjacent_find(k.begin(), k.end()) != k.end() || k.front() < 0)
    throw InputError("clique cut: vertices must be distinct");
  return k;
}

CutRow all_pairs_row(const std::vector<int>& k, std::int64_t rhs) {
  CutRow row;
  row.rhs = static_cast<int>(rhs);
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = i + 1; j < k.size(); ++j) row.terms.push_back({k[i], k[j], 1});
  return row;
}

}  // namespace

SmallGraph SmallGraph::from(const UndirectedGraph& g) {
  if (g.num_vertices() > 64) throw InputError("SmallGraph holds at most 64 vertices");
  SmallGraph s(g.num_vertices());
  for (auto [u, v] : g.edges()) s.add_edge(u, v);
  return s;
}

int SmallGraph::num_edges() const {
  int total = 0;
  for (Mask a : adj) total += std::popcount(a);
  return total / 2;
}

int clique_number(const SmallGraph& g) { return clique_in(g, all_vertices(g.n), 0, g.n + 1); }

bool is_chordal(const SmallGraph& g) {
  // Strip simplicial vertices; chordal iff everything goes.
  Mask alive = all_vertices(g.n);
  bool progress = true;
  while (alive != 0 && progress) {
    progress = false;
    for (Mask left = alive; left != 0; left &= left - 1) {
      int v = std::countr_zero(left);
      Mask nb = g.adj[v] & alive;
      bool simplicial = true;
      for (Mask w = nb; w != 0 && simplicial; w &= w - 1) {
        int u = std::countr_zero(w);
        if ((nb & ~bit(u) & ~g.adj[u]) != 0) simplicial = false;
      }
      if (simplicial) {
        alive &= ~bit(v);
        progress = true;
      }
    }
  }
  return alive == 0;
}

bool has_asteroidal_triple(const SmallGraph& g) {
  Mask all = all_vertices(g.n);
  std::vector<std::vector<int>> comp(g.n);
  for (int v = 0; v < g.n; ++v) comp[v] = components(g, all & ~g.adj[v] & ~bit(v));
  for (int x = 0; x < g.n; ++x) {
    for (int y = x + 1; y < g.n; ++y) {
      if (g.has(x, y) || comp[x][y] < 0) continue;
      for (int z = y + 1; z < g.n; ++z) {
        if (g.has(x, z) || g.has(y, z)) continue;
        if (comp[z][x] == comp[z][y] && comp[y][x] == comp[y][z] && comp[x][y] == comp[x][z])
          return true;
      }
    }
  }
  return false;
}

bool is_interval(const SmallGraph& g) { return is_chordal(g) && !has_asteroidal_triple(g); }

bool is_m_clique_free_interval(const SmallGraph& g, int m) {
  return !has_clique(g, all_vertices(g.n), m + 1) && is_interval(g);
}

const char* to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::kBipartiteClaw: return "bipartite-claw";
    case PatternKind::kUmbrella: return "umbrella";
    case PatternKind::kNet: return "n-net";
    case PatternKind::kTent: return "n-tent";
    case PatternKind::kHole: return "hole";
    case PatternKind::kClique: return "clique";
  }
  return "?";
}

bool Pattern::has_edge(int a, int b) const {
  return std::find(edges.begin(), edges.end(), ordered(a, b)) != edges.end();
}

Pattern make_pattern(PatternKind kind, int size) {
  Pattern p;
  p.kind = kind;
  p.size = size;
  auto numbered = [&p](int count) {
    for (int i = 1; i <= count; ++i) p.roles.push_back(std::to_string(i));
  };
  switch (kind) {
    case PatternKind::kBipartiteClaw:
      p.size = 0;
      p.vertex_count = 7;
      numbered(7);
      p.edges = labels({{1, 2}, {1, 3}, {1, 4}, {2, 5}, {4, 7}, {3, 6}});
      break;
    case PatternKind::kUmbrella:
      p.size = 0;
      p.vertex_count = 7;
      numbered(7);
      p.edges = labels({{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                        {4, 7}});
      break;
    case PatternKind::kNet: {
      if (size < 2) throw InputError("n-net needs n >= 2");
      // a, b, path 1..n, c, d
      p.vertex_count = size + 4;
      p.roles = {"a", "b"};
      for (int i = 1; i <= size; ++i) p.roles.push_back(std::to_string(i));
      p.roles.push_back("c");
      p.roles.push_back("d");
      p.edges.push_back({0, 1});
      for (int i = 1; i <= size; ++i) p.edges.push_back({1, 1 + i});
      for (int i = 1; i < size; ++i) p.edges.push_back({1 + i, 2 + i});
      p.edges.push_back({2, size + 2});
      p.edges.push_back({size + 1, size + 3});
      break;
    }
    case PatternKind::kTent: {
      if (size < 3) throw InputError("n-tent needs n >= 3");
      // a, b, c, path 1..n; b sees 1..n-1, c sees 2..n
      p.vertex_count = size + 3;
      p.roles = {"a", "b", "c"};
      for (int i = 1; i <= size; ++i) p.roles.push_back(std::to_string(i));
      p.edges = {{0, 1}, {0, 2}, {1, 2}};
      for (int i = 1; i < size; ++i) p.edges.push_back({1, 2 + i});
      for (int i = 2; i <= size; ++i) p.edges.push_back({2, 2 + i});
      for (int i = 1; i < size; ++i) p.edges.push_back({2 + i, 3 + i});
      break;
    }
    case PatternKind::kHole:
      if (size < 4) throw InputError("hole needs at least 4 vertices");
      p.vertex_count = size;
      for (int i = 1; i <= size; ++i) p.roles.push_back("u" + std::to_string(i));
      for (int i = 0; i < size; ++i) p.edges.push_back(ordered(i, (i + 1) % size));
      break;
    case PatternKind::kClique:
      if (size < 1) throw InputError("clique needs a vertex");
      p.vertex_count = size;
      numbered(size);
      for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) p.edges.push_back({i, j});
      break;
  }
  std::sort(p.edges.begin(), p.edges.end());
  return p;
}

Embedding identity_embedding(const Pattern& p) {
  Embedding emb{p.kind, p.size, {}};
  for (int i = 0; i < p.vertex_count; ++i) emb.vertices.push_back(i);
  return emb;
}

CutRow bipartite_claw_cut(const Embedding& emb, int m) {
  check_embedding(emb, PatternKind::kBipartiteClaw, "bipartite_claw_cut");
  if (m < 2) throw InputError("bipartite_claw_cut: m must be at least 2");
  std::map<std::pair<int, int>, int> coef;
  auto set = [&coef](const std::vector<std::pair<int, int>>& pairs, int c) {
    for (auto e : pairs) coef[e] = c;
  };
  auto bc = labels({{1, 2}, {1, 3}, {1, 4}, {2, 5}, {4, 7}, {3, 6}});
  if (m == 2) {
    set(bc, 1);
    return map_row(emb, coef, 5);
  }
  set(bc, 2);
  set(labels({{3, 5}, {2, 6}, {5, 4}, {2, 7}, {3, 7}, {4, 6}}), -1);  // closes a 4-hole
  set(labels({{2, 3}, {2, 4}, {3, 4}}), -1);                          // inner triangle
  set(labels({{1, 5}, {1, 6}, {1, 7}}), -2);                          // center to leaves
  return map_row(emb, coef, 10);
}

CutRow umbrella_cut(const Embedding& emb, int m) {
  check_embedding(emb, PatternKind::kUmbrella, "umbrella_cut");
  if (m < 3) throw InputError("umbrella_cut: m must be at least 3 (a triangle already breaks m = 2)");
  std::map<std::pair<int, int>, int> coef;
  auto set = [&coef](const std::vector<std::pair<int, int>>& pairs, int c) {
    for (auto e : pairs) coef[e] = c;
  };
  auto around = labels({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}, {4, 7}});
  auto triangle = labels({{1, 7}, {3, 7}, {5, 7}});
  if (m == 3) {
    // Keeping all ten umbrella edges needs one of the triangle edges.
    set(around, 1);
    set(labels({{1, 3}, {1, 4}, {1, 5}}), 1);
    set(triangle, -1);
    return map_row(emb, coef, 9);
  }
  set(around, 1);
  set(triangle, -1);
  set(labels({{2, 4}, {3, 5}, {4, 6}}), -1);
  return map_row(emb, coef, 6);
}

CutRow nnet_cut(const Embedding& emb) {
  check_embedding(emb, PatternKind::kNet, "nnet_cut");
  int n = emb.size;
  Pattern p = make_pattern(PatternKind::kNet, n);
  const int a = 0, b = 1, c = n + 2, d = n + 3;
  auto path = [](int i) { return 1 + i; };
  std::vector<std::pair<int, int>> free_pattern;
  for (int i = 2; i <= n - 1; ++i) free_pattern.push_back(ordered(b, path(i)));
  std::vector<std::pair<int, int>> free_complement = {ordered(a, c), ordered(a, d), ordered(c, d)};
  for (int i = 3; i <= n; ++i) free_complement.push_back(ordered(c, path(i)));
  for (int i = 1; i <= n - 2; ++i) free_complement.push_back(ordered(d, path(i)));
  return removal_or_addition_cut(emb, p, free_pattern, free_complement);
}

CutRow ntent_cut(const Embedding& emb, int m) {
  check_embedding(emb, PatternKind::kTent, "ntent_cut");
  int n = emb.size;
  Pattern p = make_pattern(PatternKind::kTent, n);
  SmallGraph tent(p.vertex_count);
  for (auto [u, v] : p.edges) tent.add_edge(u, v);
  if (clique_number(tent) > m)
    throw InputError("ntent_cut: the tent holds a clique larger than m; use the clique cut");
  const int b = 1, c = 2;
  auto path = [](int i) { return 2 + i; };
  std::vector<std::pair<int, int>> free_pattern;
  for (auto e : {ordered(b, c), ordered(c, path(4)), ordered(b, path(2))})
    if (e.second < p.vertex_count && p.has_edge(e.first, e.second)) free_pattern.push_back(e);
  std::vector<std::pair<int, int>> free_complement;
  for (int i = 1; i + 3 <= n; ++i) free_complement.push_back(ordered(path(i), path(i + 3)));
  return removal_or_addition_cut(emb, p, free_pattern, free_complement);
}

CutRow hole_cut(const Embedding& emb, int m) {
  check_embedding(emb, PatternKind::kHole, "hole_cut");
  if (m < 2) throw InputError("hole_cut: m must be at least 2");
  int len = emb.size;
  Pattern p = make_pattern(PatternKind::kHole, len);
  std::map<std::pair<int, int>, int> coef;
  for (int a = 0; a < len; ++a) {
    for (int b = a + 1; b < len; ++b) {
      bool cycle = p.has_edge(a, b);
      if (m == 2) coef[{a, b}] = 1;
      else coef[{a, b}] = cycle ? len - 3 : -1;
    }
  }
  return map_row(emb, coef, m == 2 ? len - 1 : (len - 1) * (len - 3));
}

std::int64_t f_km(int clique_size, int m) {
  TuranParts t = turan_parts(clique_size, m);
  return t.small * (t.alpha - 1) * (t.alpha - 2) / 2 + t.large * t.alpha * (t.alpha - 1) / 2;
}

std::int64_t clique_hole_alpha(int clique_size, int m) {
  TuranParts t = turan_parts(clique_size, m);
  std::int64_t sum = t.small * std::max<std::int64_t>(t.alpha - 2, 0) +
                     t.large * std::max<std::int64_t>(t.alpha - 1, 0);
  std::int64_t biggest = t.large > 0 ? t.alpha : t.alpha - 1;
  return sum - (biggest - 1);
}

CutRow clique_cut(std::span<const int> clique, int m) {
  if (m < 1) throw InputError("clique_cut: m must be positive");
  std::vector<int> k = checked_clique(clique);
  std::int64_t size = static_cast<std::int64_t>(k.size());
  std::int64_t edges = size * (size - 1) / 2;
  if (m == 2) return all_pairs_row(k, size - 1);
  return all_pairs_row(k, edges - f_km(static_cast<int>(size), m));
}

CutRow clique_hole_cut(std::span<const int> clique, int m) {
  if (m < 1) throw InputError("clique_hole_cut: m must be positive");
  std::vector<int> k = checked_clique(clique);
  int size = static_cast<int>(k.size());
  std::int64_t edges = static_cast<std::int64_t>(size) * (size - 1) / 2;
  return all_pairs_row(k, edges - (f_km(size, m) + clique_hole_alpha(size, m)));
}

CutRow cut_for(const Embedding& emb, int m) {
  switch (emb.kind) {
    case PatternKind::kBipartiteClaw: return bipartite_claw_cut(emb, m);
    case PatternKind::kUmbrella: return umbrella_cut(emb, m);
    case PatternKind::kNet: return nnet_cut(emb);
    case PatternKind::kTent: return ntent_cut(emb, m);
    case PatternKind::kHole: return hole_cut(emb, m);
    case PatternKind::kClique: return clique_cut(emb.vertices, m);
  }
  throw InputError("cut_for: unknown kind");
}

std::vector<Embedding> find_embeddings(const SmallGraph& g, const Pattern& p, bool induced,
                                       std::size_t limit) {
  std::vector<Embedding> out;
  int k = p.vertex_count;
  if (k > g.n || k == 0) return out;
  // Roles in BFS order so each new role has a mapped pattern neighbor.
  std::vector<int> order;
  std::vector<char> seen(k, 0);
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    seen[start] = 1;
    order.push_back(start);
    for (std::size_t h = order.size() - 1; h < order.size(); ++h) {
      for (int r = 0; r < k; ++r) {
        if (!seen[r] && p.has_edge(order[h], r)) {
          seen[r] = 1;
          order.push_back(r);
        }
      }
    }
  }
  std::vector<std::vector<char>> padj(k, std::vector<char>(k, 0));
  for (auto [a, b] : p.edges) padj[a][b] = padj[b][a] = 1;

  std::vector<int> map(k, -1);
  Mask used = 0;
  Mask all = all_vertices(g.n);
  auto rec = [&](auto&& self, int depth) -> void {
    if (out.size() >= limit) return;
    if (depth == k) {
      Embedding emb{p.kind, p.size, map};
      if (p.kind == PatternKind::kHole) {
        // one rotation and direction per cycle
        if (map[0] != *std::min_element(map.begin(), map.end()) || map[1] > map[k - 1]) return;
      } else if (p.kind == PatternKind::kClique) {
        if (!std::is_sorted(map.begin(), map.end())) return;
      }
      out.push_back(std::move(emb));
      return;
    }
    int role = order[depth];
    Mask cand = all & ~used;
    for (int i = 0; i < depth; ++i) {
      int other = order[i];
      Mask nb = g.adj[map[other]];
      if (padj[role][other]) cand &= nb;
      else if (induced) cand &= ~nb;
    }
    if (p.kind == PatternKind::kClique && depth > 0) cand &= ~(bit(map[order[depth - 1]] + 1) - 1);
    for (; cand != 0; cand &= cand - 1) {
      int v = std::countr_zero(cand);
      map[role] = v;
      used |= bit(v);
      self(self, depth + 1);
      used &= ~bit(v);
      map[role] = -1;
      if (out.size() >= limit) return;
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<std::vector<std::pair<int, int>>> find_cut_counterexample(const CutRow& row, int n,
                                                                        int m) {
  if (n < 1 || n > 16) throw InputError("find_cut_counterexample: 1 <= n <= 16");
  std::map<std::pair<int, int>, int> coef;
  for (const EdgeCoef& t : row.terms) {
    if (t.u < 0 || t.v >= n || t.u >= t.v) throw InputError("find_cut_counterexample: bad term");
    coef[{t.u, t.v}] += t.coef;
  }
  struct Slot {
    int u, v, c;
  };
  std::vector<Slot> slots;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      auto it = coef.find({u, v});
      slots.push_back({u, v, it == coef.end() ? 0 : it->second});
    }
  // positives (largest first), then negatives, then zeros
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    auto rank = [](int c) { return c > 0 ? 0 : (c < 0 ? 1 : 2); };
    if (rank(a.c) != rank(b.c)) return rank(a.c) < rank(b.c);
    return a.c > 0 ? a.c > b.c : a.c < b.c;
  });
  std::vector<long long> suffix(slots.size() + 1, 0);
  for (std::size_t i = slots.size(); i-- > 0;) suffix[i] = suffix[i + 1] + std::max(slots[i].c, 0);

  SmallGraph g(n);
  std::optional<std::vector<std::pair<int, int>>> found;
  auto rec = [&](auto&& self, std::size_t i, long long lhs) -> bool {
    if (lhs + suffix[i] <= row.rhs) return false;
    if (i == slots.size()) {
      if (lhs > row.rhs && is_interval(g)) {
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (g.has(u, v)) edges.push_back({u, v});
        found = std::move(edges);
        return true;
      }
      return false;
    }
    const Slot& s = slots[i];
    // present: only if no clique of m + 1 appears
    if (!has_clique(g, g.adj[s.u] & g.adj[s.v], m - 1)) {
      g.add_edge(s.u, s.v);
      bool hit = self(self, i + 1, lhs + s.c);
      g.adj[s.u] &= ~bit(s.v);
      g.adj[s.v] &= ~bit(s.u);
      if (hit) return true;
    }
    return self(self, i + 1, lhs);
  };
  rec(rec, 0, 0);
  return found;
}

}  // namespace blocker
