#include "blocker/oracles.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <climits>
#include <cmath>
#include <limits>
#include <numeric>

#include "blocker/graph_algorithms.hpp"

namespace blocker {

namespace {

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))) {}
  void check(const char* who) const {
    if (std::chrono::steady_clock::now() > end_) {
      throw OracleRefusal(std::string(who) + ": time budget exceeded");
    }
  }

 private:
  std::chrono::steady_clock::time_point end_;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw OracleRefusal(what);
}

double count_or_inf(double base, int exp) { return std::pow(base, exp); }

}  // namespace

BcmbpOracle oracle_bcmbp(const BcmbpInstance& inst, const OracleBudget& budget) {
  const BipartiteGraph& g = inst.g;
  const int nv = g.size_v();
  const int nu = g.size_u();
  require(nu >= 1, "oracle_bcmbp: empty U");
  require(nv <= 12, "oracle_bcmbp: |V| above cap 12");
  require(count_or_inf(2, nv) <= static_cast<double>(budget.max_subsets),
          "oracle_bcmbp: subset budget");
  Deadline deadline(budget.max_seconds);
  BcmbpOracle out;
  const int nu_matched = static_cast<int>(maximum_matching(g).size());
  if (nu_matched < nu) {
    out.kappa = nu_matched - nu;
    return out;
  }
  // Removing k vertices for increasing k; the first k that breaks the
  // complete matching gives kappa = k - 1.
  std::vector<char> removed(nv, 0);
  for (int k = 1; k <= nv; ++k) {
    deadline.check("oracle_bcmbp");
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : idx) removed[i] = 1;
      if (static_cast<int>(maximum_matching(g, removed).size()) < nu) {
        out.kappa = k - 1;
        out.blocker = idx;
        return out;
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == nv - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  out.kappa = nv - nu;  // unreachable with nu >= 1
  return out;
}

MbcmbpOracle oracle_mbcmbp(const MbcmbpInstance& inst, const OracleBudget& budget,
                           Parallelism par) {
  validate(inst);
  const BipartiteGraph& g = inst.g;
  const int nv = g.size_v();
  const int m = static_cast<int>(inst.partition_u.size());
  require(nv <= 9, "oracle_mbcmbp: |V| above cap 9");
  require(m <= 3, "oracle_mbcmbp: m above cap 3");
  require(count_or_inf(m, nv) <= static_cast<double>(budget.max_subsets),
          "oracle_mbcmbp: partition budget");
  Deadline deadline(budget.max_seconds);

  // neighbourhood masks of every subset of each part
  std::vector<std::vector<std::uint32_t>> nbr(m);
  for (int i = 0; i < m; ++i) {
    const VertexSet& part = inst.partition_u[i];
    const int s = static_cast<int>(part.size());
    nbr[i].assign(std::size_t{1} << s, 0);
    for (int mask = 1; mask < (1 << s); ++mask) {
      const int low = std::countr_zero(static_cast<unsigned>(mask));
      std::uint32_t bits = nbr[i][mask & (mask - 1)];
      for (int v : g.neighbors_u(part[low])) bits |= 1u << v;
      nbr[i][mask] = bits;
    }
  }
  std::int64_t total = 1;
  for (int v = 0; v < nv; ++v) total *= m;

  auto evaluate = [&](std::int64_t code) {
    std::vector<std::uint32_t> vmask(m, 0);
    for (int v = 0; v < nv; ++v) {
      vmask[code % m] |= 1u << v;
      code /= m;
    }
    int worst = INT_MAX;
    for (int i = 0; i < m; ++i) {
      for (std::size_t mask = 1; mask < nbr[i].size(); ++mask) {
        const int val = std::popcount(nbr[i][mask] & vmask[i]) - std::popcount(mask);
        worst = std::min(worst, val);
      }
    }
    return worst;
  };

  int best = INT_MIN;
  std::int64_t best_code = 0;
  if (par == Parallelism::kSerial) {
    for (std::int64_t code = 0; code < total; ++code) {
      if ((code & 0xfff) == 0) deadline.check("oracle_mbcmbp");
      const int val = evaluate(code);
      if (val > best) {
        best = val;
        best_code = code;
      }
    }
  } else {
#pragma omp parallel
    {
      int local = INT_MIN;
      std::int64_t local_code = 0;
#pragma omp for schedule(static) nowait
      for (std::int64_t code = 0; code < total; ++code) {
        const int val = evaluate(code);
        if (val > local) {
          local = val;
          local_code = code;
        }
      }
#pragma omp critical
      {
        if (local > best || (local == best && local_code < best_code)) {
          best = local;
          best_code = local_code;
        }
      }
    }
    deadline.check("oracle_mbcmbp");
  }
  MbcmbpOracle out;
  out.z = best;
  out.partition_v.assign(m, {});
  for (int v = 0; v < nv; ++v) {
    out.partition_v[best_code % m].push_back(v);
    best_code /= m;
  }
  return out;
}

namespace {

// Calls visit(idx) for every k-subset of {0..n-1} in lexicographic order
// until it returns true.
template <typename Visit>
bool for_each_subset(int n, int k, Visit&& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (visit(idx)) return true;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

VkcutOracle oracle_vkcut(const KCutInstance& inst, const OracleBudget& budget) {
  const UndirectedGraph& g = inst.g;
  const int n = g.num_vertices();
  require(inst.k >= 2, "oracle_vkcut: k < 2");
  require(n <= 12, "oracle_vkcut: n above cap 12");
  require(count_or_inf(2, n) <= static_cast<double>(budget.max_subsets),
          "oracle_vkcut: subset budget");
  Deadline deadline(budget.max_seconds);
  VkcutOracle out;
  std::vector<char> removed(n);
  for (int size = 0; size <= n; ++size) {
    deadline.check("oracle_vkcut");
    const bool hit = for_each_subset(n, size, [&](const std::vector<int>& idx) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int v : idx) removed[v] = 1;
      if (static_cast<int>(connected_components(g, removed).size()) < inst.k) return false;
      out.cut = idx;
      return true;
    });
    if (hit) {
      out.feasible = true;
      out.kept = n - size;
      return out;
    }
  }
  return out;
}

MvvspOracle oracle_mvvsp(const MvvspInstance& inst, const OracleBudget& budget) {
  validate(inst);
  const Digraph& g = inst.g;
  const int n = g.num_vertices();
  require(n <= 12, "oracle_mvvsp: n above cap 12");
  Deadline deadline(budget.max_seconds);
  std::vector<int> inner;
  for (int v = 0; v < n; ++v) {
    if (v != inst.s && v != inst.t) inner.push_back(v);
  }
  const int r = static_cast<int>(inner.size());
  MvvspOracle out;
  std::vector<char> removed(n);
  for (int size = 0; size <= r; ++size) {
    deadline.check("oracle_mvvsp");
    const bool hit = for_each_subset(r, size, [&](const std::vector<int>& idx) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : idx) removed[inner[i]] = 1;
      const auto p = shortest_path_avoiding(g, inst.s, inst.t, removed);
      if (p && p->length <= inst.d) return false;
      out.blocker.clear();
      for (int i : idx) out.blocker.push_back(inner[i]);
      return true;
    });
    if (hit) {
      out.feasible = true;
      return out;
    }
  }
  return out;
}

namespace {

std::vector<int> arcs_of(std::uint32_t mask, int m) {
  std::vector<int> out;
  for (int a = 0; a < m; ++a) {
    if (mask >> a & 1u) out.push_back(a);
  }
  return out;
}

}  // namespace

MfbpOracle oracle_mfbp(const MfbpInstance& inst, const OracleBudget& budget) {
  validate(inst);
  const int m = inst.g.num_arcs();
  require(m <= 16, "oracle_mfbp: more than 16 arcs");
  require((std::uint64_t{1} << m) <= budget.max_subsets, "oracle_mfbp: subset budget");
  Deadline deadline(budget.max_seconds);
  std::int64_t best = -1;
  std::uint32_t best_mask = 0;
  std::vector<char> removed(m);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if ((mask & 0xfffu) == 0) deadline.check("oracle_mfbp");
    std::int64_t cost = 0;
    for (int a = 0; a < m; ++a) {
      removed[a] = mask >> a & 1u;
      if (removed[a]) cost += inst.g.arc(a).cost;
    }
    if (best >= 0 && cost >= best) continue;
    if (max_flow_min_cut(inst.g, inst.s, inst.t, removed).value > inst.phi) continue;
    best = cost;
    best_mask = mask;
  }
  return MfbpOracle{best, arcs_of(best_mask, m)};
}

MfipOracle oracle_mfip(const MfipInstance& inst, const OracleBudget& budget) {
  validate(inst);
  const int m = inst.g.num_arcs();
  require(m <= 16, "oracle_mfip: more than 16 arcs");
  require((std::uint64_t{1} << m) <= budget.max_subsets, "oracle_mfip: subset budget");
  Deadline deadline(budget.max_seconds);
  std::int64_t best_flow = -1;
  std::int64_t best_cost = 0;
  std::uint32_t best_mask = 0;
  std::vector<char> removed(m);
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if ((mask & 0xfffu) == 0) deadline.check("oracle_mfip");
    std::int64_t cost = 0;
    for (int a = 0; a < m; ++a) {
      removed[a] = mask >> a & 1u;
      if (removed[a]) cost += inst.g.arc(a).cost;
    }
    if (cost > inst.budget) continue;
    const std::int64_t flow = max_flow_min_cut(inst.g, inst.s, inst.t, removed).value;
    if (best_flow >= 0 && (flow > best_flow || (flow == best_flow && cost >= best_cost))) continue;
    best_flow = flow;
    best_cost = cost;
    best_mask = mask;
  }
  return MfipOracle{arcs_of(best_mask, m), best_flow};
}

VertexSet oracle_max_clique(const UndirectedGraph& g, std::span<const char> removed) {
  const int n = g.num_vertices();
  require(n <= 40, "oracle_max_clique: n above cap 40");
  VertexSet best, cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (cur.size() > best.size()) best = cur;
    for (int v = from; v < n; ++v) {
      if (!removed.empty() && removed[v]) continue;
      if (cur.size() + static_cast<std::size_t>(n - v) <= best.size()) return;
      bool ok = true;
      for (int u : cur) {
        if (!g.adjacent(u, v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

CipOracle oracle_cip(const CipInstance& inst, const OracleBudget& budget) {
  validate(inst);
  const UndirectedGraph& g = inst.g;
  const int n = g.num_vertices();
  require(n <= 14, "oracle_cip: n above cap 14");
  require(inst.k <= 3, "oracle_cip: k above cap 3");
  Deadline deadline(budget.max_seconds);
  CipOracle out;
  out.theta = n + 1;
  std::vector<char> removed(n);
  for (int size = 0; size <= inst.k; ++size) {
    deadline.check("oracle_cip");
    for_each_subset(n, size, [&](const std::vector<int>& idx) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int v : idx) removed[v] = 1;
      const int theta = static_cast<int>(oracle_max_clique(g, removed).size());
      // larger sets never do worse; prefer them on ties so the witness
      // has size min(k, n)
      if (theta < out.theta || (theta == out.theta && idx.size() > out.interdicted.size())) {
        out.theta = theta;
        out.interdicted = idx;
      }
      return false;
    });
  }
  return out;
}

GosdcOracle oracle_gosdc(const GosdcInstance& inst, const OracleBudget& budget) {
  validate(inst);
  const int n = static_cast<int>(inst.jobs.size());
  require(n <= 10, "oracle_gosdc: more than 10 jobs");
  Deadline deadline(budget.max_seconds);
  std::vector<std::vector<char>> clash(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && inst.jobs[a].machine == inst.jobs[b].machine) clash[a][b] = 1;
  for (auto [a, b] : inst.incompatible) clash[a][b] = clash[b][a] = 1;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int64_t> start(n);
  GosdcOracle best;
  best.makespan = std::numeric_limits<std::int64_t>::max();
  std::uint64_t count = 0;
  do {
    if ((++count & 0xfff) == 0) deadline.check("oracle_gosdc");
    std::int64_t makespan = 0;
    for (int i = 0; i < n; ++i) {
      int j = order[i];
      std::int64_t s = 0;
      for (int k = 0; k < i; ++k)
        if (clash[j][order[k]]) s = std::max(s, start[order[k]] + inst.jobs[order[k]].p);
      start[j] = s;
      makespan = std::max(makespan, s + inst.jobs[j].p);
      if (makespan >= best.makespan) break;
    }
    if (makespan < best.makespan) {
      best.makespan = makespan;
      best.start = start;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace blocker
