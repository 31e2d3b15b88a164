#include "blocker/generators.hpp"

#include <stdexcept>

#include "blocker/graph_algorithms.hpp"

namespace blocker {

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw InputError("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

UndirectedGraph gen_graph(int n, int density_percent, SplitMix64& rng) {
  if (n < 0 || density_percent <= 0 || density_percent > 100) throw InputError("bad generator spec");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.chance(density_percent)) edges.emplace_back(u, v);
    }
  }
  return UndirectedGraph(n, std::move(edges));
}

BipartiteGraph gen_bipartite(int size_u, int size_v, int density_percent, SplitMix64& rng) {
  if (size_u < 0 || size_v < 0 || density_percent <= 0 || density_percent > 100) {
    throw InputError("bad generator spec");
  }
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < size_u; ++u) {
    for (int v = 0; v < size_v; ++v) {
      if (rng.chance(density_percent)) edges.emplace_back(u, v);
    }
  }
  return BipartiteGraph(size_u, size_v, std::move(edges));
}

MvvspInstance gen_mvvsp(int n, int density_percent, SplitMix64& rng, int max_length) {
  if (n < 3 || density_percent <= 0 || density_percent > 100 || max_length < 1) {
    throw InputError("bad generator spec");
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Arc> arcs;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        if (u == v || (u == 0 && v == n - 1)) continue;
        if (rng.chance(density_percent)) {
          Arc a;
          a.tail = u;
          a.head = v;
          a.length = rng.uniform(1, max_length);
          arcs.push_back(a);
        }
      }
    }
    MvvspInstance inst{Digraph(n, std::move(arcs)), 0, n - 1, 0};
    if (shortest_path_avoiding(inst.g, inst.s, inst.t)) return inst;
  }
  throw std::runtime_error("gen_mvvsp: no connected instance in 100 attempts");
}

std::optional<MvvspSweep> mvvsp_sweep(const MvvspInstance& inst) {
  const auto p = shortest_path_avoiding(inst.g, inst.s, inst.t);
  if (!p) return std::nullopt;
  const auto sep = min_vertex_separator(inst.g, inst.s, inst.t);
  if (!sep) return std::nullopt;
  MvvspSweep out;
  out.sp = p->length;
  MvvspInstance probe = inst;
  for (probe.d = p->length + 1;; ++probe.d) {
    const MvvspResult r = solve_mvvsp(probe);
    if (r.status == MipStatus::kOptimal && static_cast<int>(r.blocker.size()) == *sep) break;
  }
  out.disc = probe.d;
  return out;
}

MfbpInstance gen_mfbp(int n, int m, SplitMix64& rng) {
  if (n < 2 || m < 0) throw InputError("bad generator spec");
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) {
    Arc a;
    a.tail = static_cast<int>(rng.uniform(0, n - 1));
    do {
      a.head = static_cast<int>(rng.uniform(0, n - 1));
    } while (a.head == a.tail);
    a.capacity = rng.uniform(1, 20);
    a.cost = rng.uniform(1, 10);
    arcs.push_back(a);
  }
  MfbpInstance inst{Digraph(n, std::move(arcs)), 0, n - 1, 0};
  inst.phi = rng.uniform(0, residual_max_flow(inst, {}));
  return inst;
}

GosdcInstance gen_gosdc(int machines, int jobs_per_machine, int density_percent, SplitMix64& rng,
                        std::int64_t p_lo, std::int64_t p_hi) {
  if (machines < 1 || jobs_per_machine < 1 || p_lo < 1 || p_hi < p_lo)
    throw InputError("bad generator spec");
  GosdcInstance inst;
  inst.machines = machines;
  for (int i = 0; i < machines; ++i)
    for (int j = 0; j < jobs_per_machine; ++j)
      inst.jobs.push_back({i, static_cast<int>(inst.jobs.size()) + 1, rng.uniform(p_lo, p_hi)});
  int n = static_cast<int>(inst.jobs.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (inst.jobs[a].machine != inst.jobs[b].machine && rng.chance(density_percent))
        inst.incompatible.push_back({a, b});
  return inst;
}

}  // namespace blocker
