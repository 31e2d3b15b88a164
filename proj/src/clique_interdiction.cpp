#include "blocker/clique_interdiction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "blocker/clique.hpp"
#include "blocker/graph_algorithms.hpp"

namespace blocker {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

VertexSet pick_sorted(std::vector<int> cand, int k, const std::vector<int>& key) {
  std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return key[a] > key[b]; });
  cand.resize(std::min<std::size_t>(cand.size(), static_cast<std::size_t>(k)));
  std::sort(cand.begin(), cand.end());
  return cand;
}

struct Core {
  SolveReport report;
  InterdictionPolicy policy;
};

Core solve_core(const UndirectedGraph& g, int k, int lower,
                const std::optional<VertexSet>& start, const CipOptions& options) {
  const int n = g.num_vertices();
  MipModel model;
  for (int v = 0; v < n; ++v) model.lp.add_column(0.0, 0.0, 1.0);
  model.lp.add_column(1.0, static_cast<double>(lower), static_cast<double>(std::max(lower, n)));
  std::vector<Entry> budget;
  for (int v = 0; v < n; ++v) budget.push_back({v, 1.0});
  if (!budget.empty()) model.lp.add_row(budget, Relation::kLessEqual, static_cast<double>(k));
  model.integer.assign(n + 1, 1);
  model.objective_is_integral = true;
  model.limits = options.limits;
  model.log_cuts = options.log_cuts;
  if (start) {
    std::vector<double> x(n + 1, 0.0);
    for (int v : *start) x[v] = 1.0;
    x[n] = std::max(lower, residual_clique_number(g, *start));
    model.initial_solution = x;
  }
  CutCallback ci;
  ci.family = "ci";
  ci.scope = CutScope::kIntegerOnly;
  ci.separate = [&g, n](const NodeContext& ctx) {
    std::vector<LpRow> rows;
    auto cut = separate_ci_cut(g, ctx.x.first(n), ctx.x[n]);
    if (cut) rows.push_back(std::move(cut->row));
    return rows;
  };
  model.cuts.push_back(ci);

  Core out;
  out.report = solve_mip(std::move(model));
  if (!out.report.incumbent.empty()) {
    for (int v = 0; v < n; ++v) {
      if (out.report.incumbent[v] > 0.5) out.policy.interdicted.push_back(v);
    }
    out.policy.theta = residual_clique_number(g, out.policy.interdicted);
  }
  return out;
}

}  // namespace

void validate(const CipInstance& inst) {
  if (inst.k < 0 || inst.k > inst.g.num_vertices()) throw InputError("CIP budget outside [0, n]");
}

int residual_clique_number(const UndirectedGraph& g, const VertexSet& interdicted) {
  std::vector<char> removed(g.num_vertices(), 0);
  for (int v : interdicted) removed[v] = 1;
  return clique_number(g, removed);
}

int packing_budget(std::span<const int> sizes) {
  if (sizes.empty()) return 0;
  int total = 0;
  for (int s : sizes) total += std::max(0, s - (sizes.front() - 1));
  return total;
}

int lmin_for_prefix(std::span<const int> sizes, int q, int k) {
  if (q < 1 || q > static_cast<int>(sizes.size())) throw InputError("prefix out of range");
  const int p = q - 1;
  const int kq = packing_budget(sizes.first(q));
  int value;
  if (k < kq) {
    if (p == 0) {
      value = sizes[0];
    } else {
      const int kp = packing_budget(sizes.first(p));
      value = std::max(sizes[q - 1], sizes[p - 1] - 1 - floor_div(k - kp, p));
    }
  } else {
    value = sizes[q - 1] - 1 - floor_div(k - kq, q);
  }
  return std::max(0, value);
}

LminResult lower_bound_lmin(const UndirectedGraph& g, int k) {
  const int n = g.num_vertices();
  LminResult out;
  std::vector<char> removed(n, 0);
  int left = n;
  while (left > 0) {
    VertexSet c = maximum_clique(g, removed);
    for (int v : c) removed[v] = 1;
    left -= static_cast<int>(c.size());
    out.packing.push_back(std::move(c));
  }
  std::vector<int> sizes;
  for (const VertexSet& c : out.packing) sizes.push_back(static_cast<int>(c.size()));
  for (int q = 1; q <= static_cast<int>(sizes.size()); ++q) {
    const int v = lmin_for_prefix(sizes, q, k);
    if (v > out.lmin) {
      out.lmin = v;
      out.best_prefix = q;
    }
  }
  return out;
}

std::vector<HeuristicPolicy> upper_bound_heuristics(const UndirectedGraph& g, int k,
                                                    std::span<const char> fixed) {
  const int n = g.num_vertices();
  auto is_fixed = [&](int v) { return !fixed.empty() && fixed[v]; };
  std::vector<int> cand;
  for (int v = 0; v < n; ++v) {
    if (!is_fixed(v)) cand.push_back(v);
  }
  std::vector<HeuristicPolicy> out;
  auto add = [&](const char* name, VertexSet chosen) {
    HeuristicPolicy h;
    h.name = name;
    h.policy.theta = residual_clique_number(g, chosen);
    h.policy.interdicted = std::move(chosen);
    out.push_back(std::move(h));
  };

  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = g.degree(v);
  add("degree", pick_sorted(cand, k, degree));

  {
    std::vector<int> live = degree;
    std::vector<char> taken(n, 0);
    VertexSet chosen;
    while (static_cast<int>(chosen.size()) < std::min<int>(k, static_cast<int>(cand.size()))) {
      int best = -1;
      for (int v : cand) {
        if (!taken[v] && (best < 0 || live[v] > live[best])) best = v;
      }
      taken[best] = 1;
      chosen.push_back(best);
      for (int u : g.neighbors(best)) --live[u];
    }
    std::sort(chosen.begin(), chosen.end());
    add("updated-degree", std::move(chosen));
  }

  add("coreness", pick_sorted(cand, k, coreness(g)));
  add("color", pick_sorted(cand, k, greedy_coloring(g).color_of));
  return out;
}

Preprocessed preprocess(const UndirectedGraph& g, int lmin) {
  Preprocessed out;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) + 1 <= lmin) {
      out.removed.push_back(v);
      ++out.degree_filtered;
    } else if (lmin > 0 && clique_number_through(g, v) <= lmin) {
      out.removed.push_back(v);
    } else {
      out.kept.push_back(v);
    }
  }
  out.reduced = g.induced(out.kept);
  return out;
}

BoundsReport compute_bounds(const CipInstance& inst) {
  validate(inst);
  BoundsReport out;
  LminResult lm = lower_bound_lmin(inst.g, inst.k);
  out.lmin = lm.lmin;
  out.packing = std::move(lm.packing);
  const Preprocessed pre = preprocess(inst.g, out.lmin);
  std::vector<char> fixed(inst.g.num_vertices(), 0);
  for (int v : pre.removed) fixed[v] = 1;
  out.policies = upper_bound_heuristics(inst.g, inst.k, fixed);
  out.lmax = inst.g.num_vertices();
  for (const HeuristicPolicy& h : out.policies) out.lmax = std::min(out.lmax, h.policy.theta);
  return out;
}

std::optional<CiCut> separate_ci_cut(const UndirectedGraph& g, std::span<const double> w,
                                     double theta) {
  const int n = g.num_vertices();
  std::vector<double> weight(n);
  for (int v = 0; v < n; ++v) weight[v] = std::clamp(1.0 - w[v], 0.0, 1.0);
  const WeightedClique best = max_weight_clique(g, weight);
  if (best.weight <= theta + 1e-6) return std::nullopt;
  CiCut cut;
  cut.clique = extend_to_maximal(g, best.clique);
  cut.row.relation = Relation::kGreaterEqual;
  cut.row.rhs = static_cast<double>(cut.clique.size());
  for (int u : cut.clique) cut.row.entries.push_back({u, 1.0});
  cut.row.entries.push_back({n, 1.0});
  return cut;
}

CipResult solve_cip(const CipInstance& inst, const CipOptions& options) {
  validate(inst);
  const UndirectedGraph& g = inst.g;
  CipResult out;
  out.bounds = compute_bounds(inst);
  const int lmin = out.bounds.lmin;
  const HeuristicPolicy* best = nullptr;
  for (const HeuristicPolicy& h : out.bounds.policies) {
    if (!best || h.policy.theta < best->policy.theta) best = &h;
  }
  const int lower = options.lmin_row ? lmin : 0;

  if (!options.preprocess) {
    std::optional<VertexSet> start;
    if (options.heuristics && best) start = best->policy.interdicted;
    Core core = solve_core(g, inst.k, lower, start, options);
    out.report = std::move(core.report);
    out.status = out.report.status;
    out.policy = std::move(core.policy);
    return out;
  }

  const Preprocessed pre = preprocess(g, lmin);
  std::vector<int> local(g.num_vertices(), -1);
  for (int i = 0; i < static_cast<int>(pre.kept.size()); ++i) local[pre.kept[i]] = i;
  std::optional<VertexSet> start;
  if (options.heuristics && best) {
    VertexSet mapped;
    for (int v : best->policy.interdicted) {
      if (local[v] >= 0) mapped.push_back(local[v]);
    }
    start = mapped;
  }
  const int k_reduced = std::min(inst.k, static_cast<int>(pre.kept.size()));
  Core core = solve_core(pre.reduced, k_reduced, lower, start, options);
  out.report = std::move(core.report);
  out.status = out.report.status;
  out.kept = pre.kept;
  out.reduced_theta = core.policy.theta;
  for (int v : core.policy.interdicted) out.policy.interdicted.push_back(pre.kept[v]);
  out.policy.theta = residual_clique_number(g, out.policy.interdicted);
  if (out.status == MipStatus::kOptimal &&
      out.policy.theta != std::max(out.reduced_theta, lmin)) {
    throw std::logic_error("CIP recombination failed");
  }
  return out;
}

}  // namespace blocker
