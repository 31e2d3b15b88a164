#include "blocker/flow_blocker.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "blocker/graph_algorithms.hpp"

namespace blocker {

namespace {

void check_ends(const Digraph& g, int s, int t) {
  const int n = g.num_vertices();
  if (s < 0 || t < 0 || s >= n || t >= n) throw InputError("s/t out of range");
  if (s == t) throw InputError("flow instance needs s != t");
}

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-7 ? r : v;
}

std::vector<int> chosen(std::span<const double> x, int count) {
  std::vector<int> out;
  for (int a = 0; a < count; ++a) {
    if (x[a] > 0.5) out.push_back(a);
  }
  return out;
}

// Preprocessing shared by both methods: nothing to block when the intact
// graph already meets the target. Counted as one (root) node.
bool blocker_free(const MfbpInstance& inst, MfbpResult& out) {
  if (residual_max_flow(inst, {}) > inst.phi) return false;
  out.status = MipStatus::kOptimal;
  out.preprocessed = true;
  out.report.status = MipStatus::kOptimal;
  out.report.nodes = 1;
  out.report.incumbent.assign(inst.g.num_arcs(), 0.0);
  return true;
}

void finish(const MfbpInstance& inst, MfbpResult& out) {
  out.status = out.report.status;
  if (out.report.incumbent.empty()) return;
  out.blocked = chosen(out.report.incumbent, inst.g.num_arcs());
  out.cost = blocking_cost(inst, out.blocked);
  if (residual_max_flow(inst, out.blocked) > inst.phi) {
    throw std::logic_error("MFBP solution leaves flow above the target");
  }
}

}  // namespace

void validate(const MfbpInstance& inst) {
  check_ends(inst.g, inst.s, inst.t);
  if (inst.phi < 0) throw InputError("negative target flow");
}

void validate(const MfipInstance& inst) {
  check_ends(inst.g, inst.s, inst.t);
  if (inst.budget < 0) throw InputError("negative budget");
}

MfipInstance swap_to_mfip(const MfbpInstance& inst) {
  std::vector<Arc> arcs = inst.g.arcs();
  for (Arc& a : arcs) std::swap(a.capacity, a.cost);
  return MfipInstance{Digraph(inst.g.num_vertices(), std::move(arcs)), inst.s, inst.t, inst.phi};
}

std::int64_t residual_max_flow(const MfbpInstance& inst, const std::vector<int>& blocked) {
  std::vector<char> removed(inst.g.num_arcs(), 0);
  for (int a : blocked) removed[a] = 1;
  return max_flow_min_cut(inst.g, inst.s, inst.t, removed).value;
}

std::int64_t blocking_cost(const MfbpInstance& inst, const std::vector<int>& blocked) {
  std::int64_t total = 0;
  for (int a : blocked) total += inst.g.arc(a).cost;
  return total;
}

std::vector<int> FollowerPoint::support() const {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(y.size()); ++a) {
    if (y[a] > 1e-9) out.push_back(a);
  }
  return out;
}

BendersSeparation separate_benders(const MfbpInstance& inst, std::span<const double> x) {
  const Digraph& g = inst.g;
  const int m = g.num_arcs();
  if (static_cast<int>(x.size()) != m) throw InputError("x size mismatch");
  LinearProgram lp(Sense::kMaximize);
  for (int a = 0; a < m; ++a) {
    const Arc& arc = g.arc(a);
    const bool dead = arc.head == inst.s || arc.tail == inst.t;
    const double gain = (arc.tail == inst.s ? 1.0 : 0.0) - x[a];
    lp.add_column(gain, 0.0, dead ? 0.0 : static_cast<double>(arc.capacity));
  }
  std::vector<Entry> row;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == inst.s || v == inst.t) continue;
    row.clear();
    for (int a : g.in_arcs(v)) row.push_back({a, 1.0});
    for (int a : g.out_arcs(v)) row.push_back({a, -1.0});
    if (!row.empty()) lp.add_row(row, Relation::kEqual, 0.0);
  }
  row.clear();
  for (int a : g.out_arcs(inst.s)) row.push_back({a, 1.0});
  lp.add_row(row, Relation::kGreaterEqual, static_cast<double>(inst.phi + 1));

  BendersSeparation out;
  const LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::kInfeasible) {
    out.status = BendersStatus::kBlockerFree;
    return out;
  }
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error(std::string("follower LP: ") + to_string(sol.status));
  }
  if (sol.objective <= static_cast<double>(inst.phi) + 1e-6) return out;
  BendersCut cut;
  cut.value = sol.objective;
  cut.y.y.resize(m);
  double outflow = 0.0;
  for (int a = 0; a < m; ++a) {
    cut.y.y[a] = std::max(0.0, snap(sol.primal[a]));
    if (g.arc(a).tail == inst.s) outflow += cut.y.y[a];
  }
  cut.row.relation = Relation::kGreaterEqual;
  cut.row.rhs = outflow - static_cast<double>(inst.phi);
  for (int a : cut.y.support()) cut.row.entries.push_back({a, cut.y.y[a]});
  out.status = BendersStatus::kCut;
  out.cut = std::move(cut);
  return out;
}

std::optional<LpRow> separate_target_flow(const MfbpInstance& inst, std::span<const double> x,
                                          const FollowerPoint& y) {
  if (static_cast<int>(y.y.size()) != inst.g.num_arcs()) throw InputError("y size mismatch");
  LpRow row;
  row.relation = Relation::kGreaterEqual;
  row.rhs = 1.0;
  double lhs = 0.0;
  for (int a : y.support()) {
    row.entries.push_back({a, 1.0});
    lhs += x[a];
  }
  if (lhs >= 1.0 - 1e-6) return std::nullopt;
  return row;
}

MfbpResult solve_mfbp_compact(const MfbpInstance& inst, const MfbpOptions& options) {
  validate(inst);
  MfbpResult out;
  if (blocker_free(inst, out)) return out;
  const Digraph& g = inst.g;
  const int m = g.num_arcs();
  const int n = g.num_vertices();
  MipModel model;
  for (int a = 0; a < m; ++a) model.lp.add_column(static_cast<double>(g.arc(a).cost), 0.0, 1.0);
  for (int a = 0; a < m; ++a) model.lp.add_column(0.0, 0.0, 1.0);  // omega
  for (int v = 0; v < n; ++v) model.lp.add_column(0.0, 0.0, 1.0);  // gamma
  auto gamma = [&](int v) { return 2 * m + v; };
  for (int a = 0; a < m; ++a) {
    const Arc& arc = g.arc(a);
    const Entry e[] = {{a, 1.0}, {m + a, 1.0}, {gamma(arc.head), 1.0}, {gamma(arc.tail), -1.0}};
    model.lp.add_row(e, Relation::kGreaterEqual, 0.0);
  }
  const Entry ends[] = {{gamma(inst.s), 1.0}, {gamma(inst.t), -1.0}};
  model.lp.add_row(ends, Relation::kGreaterEqual, 1.0);
  std::vector<Entry> knap;
  for (int a = 0; a < m; ++a) {
    if (g.arc(a).capacity > 0) knap.push_back({m + a, static_cast<double>(g.arc(a).capacity)});
  }
  model.lp.add_row(knap, Relation::kLessEqual, static_cast<double>(inst.phi));
  model.integer.assign(model.lp.num_columns(), 1);
  model.objective_is_integral = true;
  model.limits = options.limits;
  model.log_cuts = options.log_cuts;

  out.report = solve_mip(std::move(model));
  if (!out.report.incumbent.empty()) {
    // an arc both blocked and counted in the cut: the omega is redundant
    for (int a = 0; a < m; ++a) {
      if (out.report.incumbent[a] > 0.5 && out.report.incumbent[m + a] > 0.5) {
        out.report.incumbent[m + a] = 0.0;
      }
    }
  }
  finish(inst, out);
  return out;
}

MfbpResult solve_mfbp_benders(const MfbpInstance& inst, const MfbpOptions& options) {
  validate(inst);
  MfbpResult out;
  if (blocker_free(inst, out)) return out;
  const Digraph& g = inst.g;
  const int m = g.num_arcs();
  MipModel model;
  for (int a = 0; a < m; ++a) model.lp.add_column(static_cast<double>(g.arc(a).cost), 0.0, 1.0);
  model.integer.assign(m, 1);
  model.objective_is_integral = true;
  model.limits = options.limits;
  model.log_cuts = options.log_cuts;

  // seed round at x = 0
  const std::vector<double> zero(m, 0.0);
  const BendersSeparation seed = separate_benders(inst, zero);
  if (seed.cut) {
    model.lp.add_row(seed.cut->row);
    if (options.target_flow_cuts) {
      if (auto row = separate_target_flow(inst, zero, seed.cut->y)) model.lp.add_row(*row);
    }
  }

  // The target-flow callback reuses the follower point found for the same
  // candidate by the Benders callback.
  struct Last {
    std::vector<double> x;
    std::optional<FollowerPoint> y;
  };
  auto last = std::make_shared<Last>();
  auto benders = [&inst, last](const NodeContext& ctx) {
    const std::vector<double> x(ctx.x.begin(), ctx.x.begin() + inst.g.num_arcs());
    BendersSeparation sep = separate_benders(inst, x);
    last->x = x;
    last->y.reset();
    std::vector<LpRow> rows;
    if (sep.cut) {
      last->y = sep.cut->y;
      rows.push_back(std::move(sep.cut->row));
    }
    return rows;
  };
  auto target = [&inst, last](const NodeContext& ctx) {
    std::vector<LpRow> rows;
    const std::vector<double> x(ctx.x.begin(), ctx.x.begin() + inst.g.num_arcs());
    if (!last->y || last->x != x) return rows;
    if (auto row = separate_target_flow(inst, x, *last->y)) rows.push_back(std::move(*row));
    return rows;
  };
  for (CutScope scope : {CutScope::kFractional, CutScope::kIntegerOnly}) {
    model.cuts.push_back({"benders", scope, benders});
    if (options.target_flow_cuts) model.cuts.push_back({"target-flow", scope, target});
  }

  out.report = solve_mip(std::move(model));
  finish(inst, out);
  return out;
}

std::vector<int> blocker_from_interdiction(const MfipSolution& sol, const MfbpInstance& inst) {
  validate(inst);
  const MfipInstance swapped = swap_to_mfip(inst);
  std::vector<char> removed(inst.g.num_arcs(), 0);
  std::int64_t spent = 0;
  for (int a : sol.interdicted) {
    if (a < 0 || a >= inst.g.num_arcs()) throw InputError("arc id out of range");
    removed[a] = 1;
    spent += swapped.g.arc(a).cost;
  }
  if (spent > swapped.budget) throw InputError("interdiction exceeds the budget");
  std::vector<int> cut = max_flow_min_cut(swapped.g, inst.s, inst.t, removed).cut;
  std::sort(cut.begin(), cut.end());
  if (residual_max_flow(inst, cut) > inst.phi) {
    throw std::logic_error("interdiction solution is not optimal for the swapped instance");
  }
  return cut;
}

}  // namespace blocker
