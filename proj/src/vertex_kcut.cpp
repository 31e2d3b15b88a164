#include "blocker/vertex_kcut.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

#include "blocker/graph_algorithms.hpp"
#include "blocker/max_flow.hpp"

namespace blocker {

namespace {

constexpr double kPriceTol = 1e-6;
constexpr double kBig = 1e9;

bool contains(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

void check_instance(const KCutInstance& inst) {
  if (inst.k < 2) throw InputError("vertex k-cut needs k >= 2");
}

// max closure for fixed forced/excluded sets; returns the source side, or
// nullopt when the forced vertex cannot be taken.
std::optional<VertexSet> closure(int n, std::span<const double> nu, std::span<const double> pi,
                  const std::vector<VertexSet>& cover, int forced,
                  const std::vector<char>& excluded,
                  const std::vector<std::pair<int, int>>& same) {
  const int c = static_cast<int>(cover.size());
  const int s = n + c;
  const int t = s + 1;
  PushRelabel<double> net(n + c + 2);
  for (int v = 0; v < n; ++v) {
    if (nu[v] > 0) net.add_arc(s, v, nu[v]);
    if (nu[v] < 0) net.add_arc(v, t, -nu[v]);
    if (excluded[v]) net.add_arc(v, t, kBig);
  }
  net.add_arc(s, forced, kBig);
  for (int j = 0; j < c; ++j) {
    if (pi[j] > 0) net.add_arc(n + j, t, pi[j]);
    for (int v : cover[j]) net.add_arc(v, n + j, kBig);
  }
  for (const auto& [a, b] : same) {
    net.add_arc(a, b, kBig);
    net.add_arc(b, a, kBig);
  }
  if (net.solve(s, t) >= kBig / 2) return std::nullopt;
  const std::vector<char> side = net.source_side();
  VertexSet out;
  for (int v = 0; v < n; ++v) {
    if (side[v]) out.push_back(v);
  }
  return out;
}

double subset_value(int n, std::span<const double> nu, std::span<const double> pi,
                    const std::vector<VertexSet>& cover, const VertexSet& s) {
  std::vector<char> in(n, 0);
  double val = 0.0;
  for (int v : s) {
    in[v] = 1;
    val += nu[v];
  }
  for (std::size_t j = 0; j < cover.size(); ++j) {
    for (int v : cover[j]) {
      if (in[v]) {
        val -= pi[j];
        break;
      }
    }
  }
  return val;
}

// Best allowed subset containing `forced`, by branching on violated differ
// pairs over closure solutions.
std::optional<PricedSubset> best_with_forced(int n, std::span<const double> nu,
                                             std::span<const double> pi,
                                             const std::vector<VertexSet>& cover, int forced,
                                             const PricingRestrictions& r) {
  std::optional<PricedSubset> best;
  std::vector<char> excluded = r.excluded;
  excluded.resize(n, 0);
  std::function<void()> rec = [&]() {
    const auto got = closure(n, nu, pi, cover, forced, excluded, r.same);
    if (!got) return;
    const VertexSet& s = *got;
    const double val = subset_value(n, nu, pi, cover, s);
    if (best && val <= best->value + 1e-12) return;
    for (const auto& [a, b] : r.differ) {
      if (contains(s, a) && contains(s, b)) {
        for (int drop : {a, b}) {
          if (drop == forced || excluded[drop]) continue;
          excluded[drop] = 1;
          rec();
          excluded[drop] = 0;
        }
        return;
      }
    }
    best = PricedSubset{s, val};
  };
  rec();
  return best;
}

}  // namespace

int KCutSolution::kept() const {
  int c = 0;
  for (const VertexSet& s : components) c += static_cast<int>(s.size());
  return c;
}

bool PricingRestrictions::allows(const VertexSet& s) const {
  for (int v : s) {
    if (!excluded.empty() && excluded[v]) return false;
  }
  for (const auto& [a, b] : same) {
    if (contains(s, a) != contains(s, b)) return false;
  }
  for (const auto& [a, b] : differ) {
    if (contains(s, a) && contains(s, b)) return false;
  }
  return true;
}

bool is_valid_kcut(const KCutInstance& inst, const KCutSolution& sol) {
  const int n = inst.g.num_vertices();
  if (static_cast<int>(sol.components.size()) != inst.k) return false;
  std::vector<int> owner(n, -1);
  for (int v : sol.cut) {
    if (v < 0 || v >= n || owner[v] != -1) return false;
    owner[v] = -2;
  }
  for (int i = 0; i < inst.k; ++i) {
    if (sol.components[i].empty()) return false;
    for (int v : sol.components[i]) {
      if (v < 0 || v >= n || owner[v] != -1) return false;
      owner[v] = i;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (owner[v] == -1) return false;
  }
  for (const auto& [u, v] : inst.g.edges()) {
    if (owner[u] >= 0 && owner[v] >= 0 && owner[u] != owner[v]) return false;
  }
  return true;
}

std::optional<VertexSet> find_stable_set(const UndirectedGraph& g, int k) {
  const int n = g.num_vertices();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) < g.degree(b); });
  VertexSet chosen;
  std::vector<int> blocked(n, 0);
  std::function<bool(int)> rec = [&](int pos) {
    if (static_cast<int>(chosen.size()) == k) return true;
    for (int p = pos; p < n; ++p) {
      if (n - p < k - static_cast<int>(chosen.size())) return false;
      const int v = order[p];
      if (blocked[v]) continue;
      chosen.push_back(v);
      for (int w : g.neighbors(v)) ++blocked[w];
      if (rec(p + 1)) return true;
      for (int w : g.neighbors(v)) --blocked[w];
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<VertexSet> build_clique_cover(const UndirectedGraph& g, CoverMode mode) {
  std::vector<VertexSet> cover;
  if (mode == CoverMode::kEdges) {
    for (const auto& [u, v] : g.edges()) cover.push_back({u, v});
    return cover;
  }
  std::set<std::pair<int, int>> covered;
  for (const auto& [u, v] : g.edges()) {
    if (covered.count({u, v})) continue;
    VertexSet clique{u, v};
    for (int w = 0; w < g.num_vertices(); ++w) {
      if (w == u || w == v) continue;
      bool ok = true;
      for (int c : clique) ok = ok && g.adjacent(c, w);
      if (ok) clique.push_back(w);
    }
    std::sort(clique.begin(), clique.end());
    for (std::size_t a = 0; a < clique.size(); ++a) {
      for (std::size_t b = a + 1; b < clique.size(); ++b) covered.insert({clique[a], clique[b]});
    }
    cover.push_back(std::move(clique));
  }
  return cover;
}

std::optional<PricedSubset> max_weight_subset(int n, std::span<const double> nu,
                                              std::span<const double> pi,
                                              const std::vector<VertexSet>& cover,
                                              const PricingRestrictions& restrictions) {
  std::optional<PricedSubset> best;
  for (int u = 0; u < n; ++u) {
    if (!restrictions.excluded.empty() && restrictions.excluded[u]) continue;
    auto got = best_with_forced(n, nu, pi, cover, u, restrictions);
    if (got && (!best || got->value > best->value + 1e-12)) best = std::move(got);
  }
  return best;
}

std::optional<PricedSubset> price_subset(const KCutInstance& inst, const DualPrices& duals,
                                         const std::vector<VertexSet>& cover,
                                         const PricingRestrictions& restrictions) {
  const int n = inst.g.num_vertices();
  std::vector<double> nu(n);
  for (int v = 0; v < n; ++v) nu[v] = 1.0 - duals.lambda[v];
  auto best = max_weight_subset(n, nu, duals.pi, cover, restrictions);
  if (!best || best->value <= duals.gamma + kPriceTol) return std::nullopt;
  best->value -= duals.gamma;
  return best;
}

BranchDecision two_level_branch(int n, const std::vector<VertexSet>& columns,
                                std::span<const double> xi) {
  std::vector<double> cover(n, 0.0);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (int v : columns[j]) cover[v] += xi[j];
  }
  BranchDecision d;
  double best = kIntegralityTolerance;
  for (int v = 0; v < n; ++v) {
    const double frac = std::min(cover[v], 1.0 - cover[v]);
    if (frac > best + 1e-12) {
      best = frac;
      d = {1, v, -1};
    }
  }
  if (d.level) return d;
  best = kIntegralityTolerance;
  std::vector<std::vector<double>> together(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (xi[j] <= kIntegralityTolerance) continue;
    const VertexSet& s = columns[j];
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) together[s[a]][s[b]] += xi[j];
    }
  }
  for (int u = 0; u < n; ++u) {
    if (cover[u] < 0.5) continue;
    for (int v = u + 1; v < n; ++v) {
      if (cover[v] < 0.5) continue;
      const double frac = std::min(together[u][v], 1.0 - together[u][v]);
      if (frac > best + 1e-12) {
        best = frac;
        d = {2, u, v};
      }
    }
  }
  return d;
}

namespace {

KCutResult infeasible_result() {
  KCutResult r;
  r.status = MipStatus::kInfeasible;
  r.report.status = MipStatus::kInfeasible;
  return r;
}

void finish(const KCutInstance& inst, std::vector<VertexSet> parts, KCutResult& out) {
  const int n = inst.g.num_vertices();
  std::vector<char> kept(n, 0);
  for (auto& p : parts) {
    std::sort(p.begin(), p.end());
    for (int v : p) kept[v] = 1;
  }
  out.solution.components = std::move(parts);
  out.solution.cut.clear();
  for (int v = 0; v < n; ++v) {
    if (!kept[v]) out.solution.cut.push_back(v);
  }
  if (!is_valid_kcut(inst, out.solution)) {
    throw std::logic_error("decoded vertex k-cut violates its invariants");
  }
}

}  // namespace

KCutResult solve_compact(const KCutInstance& inst, const KCutOptions& options) {
  check_instance(inst);
  const UndirectedGraph& g = inst.g;
  const int n = g.num_vertices();
  const int k = inst.k;
  const auto stable = find_stable_set(g, k);
  if (!stable) return infeasible_result();
  auto col = [n](int v, int i) { return i * n + v; };

  MipModel model;
  model.lp.set_sense(Sense::kMaximize);
  for (int i = 0; i < k; ++i) {
    for (int v = 0; v < n; ++v) model.lp.add_column(1.0, 0.0, 1.0);
  }
  for (int v = 0; v < n; ++v) {
    std::vector<Entry> row;
    for (int i = 0; i < k; ++i) row.push_back({col(v, i), 1.0});
    model.lp.add_row(row, Relation::kLessEqual, 1.0);
  }
  for (const auto& [u, v] : g.edges()) {
    for (int i = 0; i < k; ++i) {
      std::vector<Entry> row{{col(u, i), 1.0}};
      for (int j = 0; j < k; ++j) {
        if (j != i) row.push_back({col(v, j), 1.0});
      }
      model.lp.add_row(row, Relation::kLessEqual, 1.0);
    }
  }
  for (int i = 0; i < k; ++i) {
    std::vector<Entry> row;
    for (int v = 0; v < n; ++v) row.push_back({col(v, i), 1.0});
    model.lp.add_row(row, Relation::kGreaterEqual, 1.0);
  }
  if (options.symmetry_breaking) {
    // Parts ordered by their smallest vertex.
    for (int i = 1; i < k; ++i) {
      for (int v = 0; v < n; ++v) {
        std::vector<Entry> row{{col(v, i), 1.0}};
        for (int u = 0; u < v; ++u) row.push_back({col(u, i - 1), -1.0});
        model.lp.add_row(row, Relation::kLessEqual, 0.0);
      }
    }
  }
  model.integer.assign(model.lp.num_columns(), 1);
  model.objective_is_integral = true;
  model.limits = options.limits;
  std::vector<double> start(model.lp.num_columns(), 0.0);
  for (int i = 0; i < k; ++i) start[col((*stable)[i], i)] = 1.0;
  model.initial_solution = start;

  KCutResult out;
  out.report = solve_mip(std::move(model));
  out.status = out.report.status;
  if (out.report.incumbent.empty()) return out;
  std::vector<VertexSet> parts(k);
  for (int i = 0; i < k; ++i) {
    for (int v = 0; v < n; ++v) {
      if (out.report.incumbent[col(v, i)] > 0.5) parts[i].push_back(v);
    }
  }
  finish(inst, std::move(parts), out);
  return out;
}

namespace {

struct NodeData {
  PricingRestrictions r;
  std::vector<char> covered;
};

// Column tags: a real column carries its sorted subset. Artificial columns
// carry {-1} (cardinality row) or {-2, v} (cover row of v).
bool is_artificial(const Tag& t) { return !t.empty() && t[0] < 0; }

}  // namespace

KCutResult solve_extended(const KCutInstance& inst, const KCutOptions& options) {
  check_instance(inst);
  const UndirectedGraph& g = inst.g;
  const int n = g.num_vertices();
  const int k = inst.k;
  const auto stable = find_stable_set(g, k);
  if (!stable) return infeasible_result();
  const auto cover = std::make_shared<const std::vector<VertexSet>>(build_clique_cover(g, options.cover));
  const int nc = static_cast<int>(cover->size());
  const int card_row = n + nc;
  const double penalty = n + 1.0;

  MipModel model;
  model.lp.set_sense(Sense::kMaximize);
  for (int v = 0; v < n; ++v) model.lp.add_row(std::vector<Entry>{}, Relation::kLessEqual, 1.0);
  for (int c = 0; c < nc; ++c) model.lp.add_row(std::vector<Entry>{}, Relation::kLessEqual, 1.0);
  model.lp.add_row(std::vector<Entry>{}, Relation::kEqual, static_cast<double>(k));

  auto entries_of = [cover, n, card_row](const VertexSet& s) {
    std::vector<Entry> e;
    for (int v : s) e.push_back({v, 1.0});
    for (int c = 0; c < static_cast<int>(cover->size()); ++c) {
      for (int v : (*cover)[c]) {
        if (contains(s, v)) {
          e.push_back({n + c, 1.0});
          break;
        }
      }
    }
    e.push_back({card_row, 1.0});
    return e;
  };
  auto pool = std::make_shared<std::set<VertexSet>>();
  for (int v = 0; v < n; ++v) {
    model.lp.add_column(1.0, 0.0, 1.0, entries_of({v}));
    model.column_tags.push_back({v});
    model.integer.push_back(1);
    model.artificial.push_back(0);
    pool->insert({v});
  }
  model.lp.add_column(-penalty, 0.0, kInfinity, std::vector<Entry>{{card_row, 1.0}});
  model.column_tags.push_back({-1});
  model.integer.push_back(0);
  model.artificial.push_back(1);
  for (int v = 0; v < n; ++v) {
    model.lp.add_column(-penalty, 0.0, kInfinity);
    model.column_tags.push_back({-2, v});
    model.integer.push_back(0);
    model.artificial.push_back(1);
  }
  model.objective_is_integral = true;
  model.limits = options.limits;
  std::vector<double> start(model.lp.num_columns(), 0.0);
  for (int v : *stable) start[v] = 1.0;
  model.initial_solution = start;

  const int per_round = options.max_columns_per_round;
  PricerCallback pricer;
  pricer.price = [=](const NodeContext& ctx) {
    const auto* data = static_cast<const NodeData*>(ctx.node_data);
    PricingRestrictions r;
    if (data) r = data->r;
    r.excluded.resize(n, 0);
    std::vector<double> nu(n, ctx.phase_one ? 0.0 : 1.0);
    std::vector<double> pi(nc);
    for (int v = 0; v < n; ++v) nu[v] -= ctx.dual[v];
    for (int c = 0; c < nc; ++c) pi[c] = std::max(0.0, ctx.dual[n + c]);
    const double gamma = ctx.dual[card_row];
    for (std::size_t t = 0; t < ctx.local_row_tags.size(); ++t) {
      const Tag& tag = ctx.local_row_tags[t];
      if (tag.size() == 2 && tag[0] == 1) nu[tag[1]] -= ctx.dual[ctx.global_rows + t];
    }
    std::vector<PricedSubset> found;
    for (int u = 0; u < n; ++u) {
      if (r.excluded[u]) continue;
      auto got = best_with_forced(n, nu, pi, *cover, u, r);
      if (!got || got->value - gamma <= kPriceTol) continue;
      if (pool->count(got->subset)) continue;
      bool dup = false;
      for (const auto& f : found) dup = dup || f.subset == got->subset;
      if (!dup) found.push_back(std::move(*got));
    }
    std::stable_sort(found.begin(), found.end(),
                     [](const PricedSubset& a, const PricedSubset& b) { return a.value > b.value; });
    if (static_cast<int>(found.size()) > per_round) found.resize(per_round);
    std::vector<NewColumn> cols;
    for (const PricedSubset& f : found) {
      pool->insert(f.subset);
      NewColumn c;
      c.objective = static_cast<double>(f.subset.size());
      c.entries = entries_of(f.subset);
      c.tag = f.subset;
      cols.push_back(std::move(c));
    }
    return cols;
  };
  model.pricer = pricer;

  BranchRule rule;
  rule.column_allowed = [](const void* node_data, const Tag& tag) {
    if (!node_data || is_artificial(tag)) return true;
    return static_cast<const NodeData*>(node_data)->r.allows(tag);
  };
  rule.local_coefficient = [](const Tag& row, const Tag& column) {
    if (row.size() != 2 || row[0] != 1) return 0.0;
    const int v = row[1];
    if (is_artificial(column)) return column.size() == 2 && column[1] == v ? 1.0 : 0.0;
    return contains(column, v) ? 1.0 : 0.0;
  };
  rule.branch = [n](const NodeContext& ctx) {
    std::vector<VertexSet> columns;
    std::vector<double> xi;
    for (std::size_t j = 0; j < ctx.column_tags.size(); ++j) {
      if (is_artificial(ctx.column_tags[j])) continue;
      columns.push_back(ctx.column_tags[j]);
      xi.push_back(ctx.x[j]);
    }
    const BranchDecision d = two_level_branch(n, columns, xi);
    if (d.level == 0) return std::vector<Child>{};
    NodeData base;
    if (ctx.node_data) base = *static_cast<const NodeData*>(ctx.node_data);
    base.r.excluded.resize(n, 0);
    base.covered.resize(n, 0);
    std::vector<Child> kids(2);
    auto a = std::make_shared<NodeData>(base);
    auto b = std::make_shared<NodeData>(base);
    if (d.level == 1) {
      a->covered[d.u] = 1;
      kids[0].rows.push_back({LpRow{{}, Relation::kGreaterEqual, 1.0}, Tag{1, d.u}});
      b->r.excluded[d.u] = 1;
    } else {
      a->r.same.emplace_back(d.u, d.v);
      b->r.differ.emplace_back(d.u, d.v);
    }
    kids[0].data = a;
    kids[1].data = b;
    return kids;
  };
  register_branch_rule(model, rule);

  KCutResult out;
  out.report = solve_mip(std::move(model));
  out.status = out.report.status;
  if (out.report.incumbent.empty()) return out;
  std::vector<VertexSet> parts;
  for (std::size_t j = 0; j < out.report.column_tags.size(); ++j) {
    if (is_artificial(out.report.column_tags[j])) continue;
    if (out.report.incumbent[j] > 0.5) parts.push_back(out.report.column_tags[j]);
  }
  finish(inst, std::move(parts), out);
  return out;
}

}  // namespace blocker
