#include "blocker/matching_blocker.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "blocker/graph_algorithms.hpp"

namespace blocker {

namespace {

constexpr double kViolation = 1e-6;

bool near_integral(std::span<const double> x) {
  for (double v : x) {
    if (std::abs(v - std::round(v)) > 1e-6) return false;
  }
  return true;
}

// G[U' u V'] with both sides relabelled in the given order.
BipartiteGraph restrict(const BipartiteGraph& g, const VertexSet& us, const VertexSet& vs) {
  std::vector<int> vpos(g.size_v(), -1);
  for (int j = 0; j < static_cast<int>(vs.size()); ++j) vpos[vs[j]] = j;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < static_cast<int>(us.size()); ++i) {
    for (int v : g.neighbors_u(us[i])) {
      if (vpos[v] >= 0) edges.emplace_back(i, vpos[v]);
    }
  }
  return BipartiteGraph(static_cast<int>(us.size()), static_cast<int>(vs.size()), edges);
}

VertexSet all_v(const BipartiteGraph& g) {
  VertexSet out(g.size_v());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Weighted kappa LP over one part: min sum_v w_v y_v - sum_u y_u.
class HallLp {
 public:
  HallLp(const BipartiteGraph& g, const VertexSet& part, std::span<const double> w)
      : g_(g), part_(part), w_(w) {
    nbr_ = neighborhood_of_set(g, part);
    col_of_v_.assign(g.size_v(), -1);
    const int nu = static_cast<int>(part.size());
    for (int i = 0; i < nu; ++i) lp_.add_column(-1.0, 0.0, 1.0);
    for (int j = 0; j < static_cast<int>(nbr_.size()); ++j) {
      col_of_v_[nbr_[j]] = nu + j;
      lp_.add_column(w[nbr_[j]], 0.0, 1.0);
    }
    for (int i = 0; i < nu; ++i) {
      for (int v : g.neighbors_u(part[i])) {
        lp_.add_row(std::vector<Entry>{{i, 1.0}, {col_of_v_[v], -1.0}}, Relation::kLessEqual,
                    0.0);
      }
    }
  }

  // Returns the set U' of the lexicographic optimum, with its weighted
  // value |N(U')|_w - |U'|.
  std::pair<VertexSet, double> solve() {
    const int nu = static_cast<int>(part_.size());
    std::vector<double> value(nu);
    std::vector<std::vector<double>> sol(nu);
    double best = kInfinity;
    Basis basis;
    for (int i = 0; i < nu; ++i) {
      lp_.set_bounds(i, 1.0, 1.0);
      LpSolution s = solve_lp(lp_, i ? &basis : nullptr);
      lp_.set_bounds(i, 0.0, 1.0);
      if (s.status != LpStatus::kOptimal) throw std::runtime_error("hall LP: " + s.diagnostics);
      basis = s.basis;
      value[i] = s.objective;
      sol[i] = std::move(s.primal);
      best = std::min(best, value[i]);
    }
    int start = 0;
    while (value[start] > best + 1e-9) ++start;
    std::vector<double> pick = sol[start];

    // Imp 1: largest U' on the optimal face.
    const int base_rows = lp_.num_rows();
    std::vector<Entry> primary;
    for (int j = 0; j < lp_.num_columns(); ++j) {
      primary.push_back({j, lp_.column(j).objective});
    }
    lp_.add_row(primary, Relation::kLessEqual, best + 1e-9);
    std::vector<double> obj(lp_.num_columns());
    for (int j = 0; j < lp_.num_columns(); ++j) obj[j] = lp_.column(j).objective;
    for (int j = 0; j < lp_.num_columns(); ++j) lp_.set_objective(j, j < nu ? -1.0 : 0.0);
    int best_count = count_u(pick);
    int best_u0 = start;
    for (int i = start; i < nu; ++i) {
      if (value[i] > best + 1e-9) continue;
      lp_.set_bounds(i, 1.0, 1.0);
      LpSolution s = solve_lp(lp_);
      lp_.set_bounds(i, 0.0, 1.0);
      if (s.status == LpStatus::kOptimal && near_integral(s.primal) &&
          count_u(s.primal) > best_count) {
        best_count = count_u(s.primal);
        best_u0 = i;
        pick = s.primal;
      }
    }
    // Imp 2: then the smallest neighbourhood.
    std::vector<Entry> size_row;
    for (int i = 0; i < nu; ++i) size_row.push_back({i, 1.0});
    lp_.add_row(size_row, Relation::kGreaterEqual, best_count - 0.5);
    for (int j = 0; j < lp_.num_columns(); ++j) lp_.set_objective(j, j < nu ? 0.0 : 1.0);
    lp_.set_bounds(best_u0, 1.0, 1.0);
    LpSolution s = solve_lp(lp_);
    lp_.set_bounds(best_u0, 0.0, 1.0);
    if (s.status == LpStatus::kOptimal && near_integral(s.primal)) pick = s.primal;
    lp_.truncate_rows(base_rows);
    for (int j = 0; j < lp_.num_columns(); ++j) lp_.set_objective(j, obj[j]);

    VertexSet subset;
    for (int i = 0; i < nu; ++i) {
      if (pick[i] > 0.5) subset.push_back(part_[i]);
    }
    return {subset, weighted_value(subset)};
  }

  double weighted_value(const VertexSet& subset) const {
    double total = -static_cast<double>(subset.size());
    for (int v : neighborhood_of_set(g_, subset)) total += w_[v];
    return total;
  }

 private:
  int count_u(const std::vector<double>& x) const {
    int c = 0;
    for (int i = 0; i < static_cast<int>(part_.size()); ++i) c += x[i] > 0.5;
    return c;
  }

  const BipartiteGraph& g_;
  const VertexSet& part_;
  std::span<const double> w_;
  VertexSet nbr_;
  std::vector<int> col_of_v_;
  LinearProgram lp_;
};

MbcmbpCut hall_row(const MbcmbpInstance& inst, int part, const VertexSet& subset,
                   double violation) {
  MbcmbpCut cut;
  cut.family = "hall";
  cut.part = part;
  cut.subset = subset;
  cut.violation = violation;
  cut.row.relation = Relation::kGreaterEqual;
  cut.row.rhs = static_cast<double>(subset.size());
  for (int v : neighborhood_of_set(inst.g, subset)) {
    cut.row.entries.push_back({mbcmbp_column(inst, v, part), 1.0});
  }
  cut.row.entries.push_back({0, -1.0});
  return cut;
}

// Components of G[U' u N(U')], as subsets of U'.
std::vector<VertexSet> split_components(const BipartiteGraph& g, const VertexSet& subset) {
  const int nu = g.size_u();
  std::vector<int> parent(nu + g.size_v());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int u : subset) {
    for (int v : g.neighbors_u(u)) parent[find(u)] = find(nu + v);
  }
  std::vector<VertexSet> comps;
  std::vector<int> slot(nu + g.size_v(), -1);
  for (int u : subset) {
    const int r = find(u);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[r]].push_back(u);
  }
  return comps;
}

void keep_strongest(std::vector<MbcmbpCut>& cuts, int cap) {
  std::stable_sort(cuts.begin(), cuts.end(), [](const MbcmbpCut& a, const MbcmbpCut& b) {
    return a.violation > b.violation;
  });
  if (static_cast<int>(cuts.size()) > cap) cuts.resize(cap);
}

std::vector<std::vector<double>> unpack(const MbcmbpInstance& inst, std::span<const double> x) {
  const int m = static_cast<int>(inst.partition_u.size());
  std::vector<std::vector<double>> out(m, std::vector<double>(inst.g.size_v()));
  for (int i = 0; i < m; ++i) {
    for (int v = 0; v < inst.g.size_v(); ++v) out[i][v] = x[mbcmbp_column(inst, v, i)];
  }
  return out;
}

}  // namespace

void validate(const MbcmbpInstance& inst) {
  if (inst.partition_u.empty()) throw InputError("U partition needs at least one part");
  std::vector<int> seen(inst.g.size_u(), 0);
  for (const VertexSet& part : inst.partition_u) {
    if (part.empty()) throw InputError("empty part in U partition");
    for (int u : part) {
      if (u < 0 || u >= inst.g.size_u()) throw InputError("U vertex out of range in partition");
      if (seen[u]++) throw InputError("U vertex in two parts");
    }
  }
  for (int u = 0; u < inst.g.size_u(); ++u) {
    if (!seen[u]) throw InputError("U partition does not cover U");
  }
}

KappaResult kappa(const BcmbpInstance& inst) {
  const BipartiteGraph& g = inst.g;
  const int nu = g.size_u();
  const int nv = g.size_v();
  if (nu < 1) throw InputError("kappa needs |U| >= 1");
  LinearProgram lp(Sense::kMinimize);
  for (int u = 0; u < nu; ++u) lp.add_column(-1.0, 0.0, 1.0);
  for (int v = 0; v < nv; ++v) lp.add_column(1.0, 0.0, 1.0);
  for (const auto& [u, v] : g.edges()) {
    lp.add_row(std::vector<Entry>{{u, 1.0}, {nu + v, -1.0}}, Relation::kLessEqual, 0.0);
  }
  KappaResult out;
  out.kappa = INT_MAX;
  Basis basis;
  for (int u0 = 0; u0 < nu; ++u0) {
    lp.set_bounds(u0, 1.0, 1.0);
    LpSolution sol = solve_lp(lp, u0 ? &basis : nullptr);
    lp.set_bounds(u0, 0.0, 1.0);
    if (sol.status != LpStatus::kOptimal) throw std::runtime_error("kappa LP: " + sol.diagnostics);
    basis = sol.basis;
    ++out.lp_solves;
    out.max_duality_gap = std::max(out.max_duality_gap, sol.duality_gap);
    for (double x : sol.primal) {
      out.max_fractionality = std::max(out.max_fractionality, std::min(std::abs(x), std::abs(1 - x)));
    }
    VertexSet w;
    for (int u = 0; u < nu; ++u) {
      if (sol.primal[u] > 0.5) w.push_back(u);
    }
    const int value =
        static_cast<int>(neighborhood_of_set(g, w).size()) - static_cast<int>(w.size());
    if (std::abs(value - sol.objective) > 1e-6) {
      throw std::logic_error("kappa LP optimum is not attained by its rounded witness");
    }
    if (value < out.kappa) {
      out.kappa = value;
      out.witness_u = std::move(w);
    }
  }
  return out;
}

bool is_k_cm(const BcmbpInstance& inst, int k) {
  if (k < 0) throw InputError("k must be nonnegative");
  return kappa(inst).kappa >= k;
}

std::vector<int> part_kappas(const MbcmbpInstance& inst,
                             const std::vector<VertexSet>& partition_v) {
  std::vector<int> out;
  for (std::size_t i = 0; i < inst.partition_u.size(); ++i) {
    out.push_back(kappa({restrict(inst.g, inst.partition_u[i], partition_v[i])}).kappa);
  }
  return out;
}

std::vector<MbcmbpCut> separate_hall_cuts(const MbcmbpInstance& inst,
                                          const std::vector<std::vector<double>>& x,
                                          double z, std::vector<FoundSet>* found) {
  std::vector<MbcmbpCut> cuts;
  for (int i = 0; i < static_cast<int>(inst.partition_u.size()); ++i) {
    HallLp lp(inst.g, inst.partition_u[i], x[i]);
    auto [subset, value] = lp.solve();
    if (z - value < kViolation) continue;
    if (found) found->push_back({i, subset});
    // Imp 3
    for (const VertexSet& comp : split_components(inst.g, subset)) {
      const double viol = z - lp.weighted_value(comp);
      if (viol >= kViolation) cuts.push_back(hall_row(inst, i, comp, viol));
    }
  }
  return cuts;
}

PairBound pair_bound(const MbcmbpInstance& inst, const VertexSet& sub_s,
                     const VertexSet& sub_t) {
  const VertexSet ns = neighborhood_of_set(inst.g, sub_s);
  const VertexSet nt = neighborhood_of_set(inst.g, sub_t);
  VertexSet common;
  std::set_intersection(ns.begin(), ns.end(), nt.begin(), nt.end(), std::back_inserter(common));
  const int ks = static_cast<int>(ns.size() - common.size()) - static_cast<int>(sub_s.size());
  const int kt = static_cast<int>(nt.size() - common.size()) - static_cast<int>(sub_t.size());
  PairBound b;
  b.k_min = std::min(ks, kt);
  b.k_max = std::max(ks, kt);
  b.common = static_cast<int>(common.size());
  b.ell_is_t = !(ks < kt);
  b.first_case = b.k_max - b.k_min >= b.common;
  b.k_sup = b.first_case ? b.k_min + b.common
                         : b.k_max + 0.5 * (b.common - (b.k_max - b.k_min));
  return b;
}

std::vector<MbcmbpCut> separate_pair_cuts(const MbcmbpInstance& inst,
                                          const std::vector<std::vector<double>>& x,
                                          double z, const std::vector<FoundSet>& found) {
  const int m = static_cast<int>(inst.partition_u.size());
  std::vector<MbcmbpCut> cuts;
  for (const FoundSet& a : found) {
    for (const FoundSet& b : found) {
      if (a.part == b.part) continue;
      const PairBound bound = pair_bound(inst, a.subset, b.subset);
      const VertexSet ns = neighborhood_of_set(inst.g, a.subset);
      const VertexSet nt = neighborhood_of_set(inst.g, b.subset);
      std::vector<double> coef(inst.g.size_v(), 0.0);
      for (int v : ns) coef[v] += 1;
      for (int v : nt) coef[v] += 2;
      // coef: 1 only in N(U'_s), 2 only in N(U'_t), 3 common.
      const int ell_code = bound.ell_is_t ? 2 : 1;
      const double ell_coef = bound.first_case ? 1.0 : 0.5;
      MbcmbpCut cut;
      cut.family = "pair";
      cut.part = a.part;
      cut.other = b.part;
      cut.subset = a.subset;
      cut.subset.insert(cut.subset.end(), b.subset.begin(), b.subset.end());
      cut.row.relation = Relation::kLessEqual;
      cut.row.rhs = bound.k_sup;
      cut.row.entries.push_back({0, 1.0});
      double lhs = z;
      for (int v = 0; v < inst.g.size_v(); ++v) {
        const int code = static_cast<int>(coef[v]);
        double c = 0.0;
        if (code == 3) c = 0.5;
        if (code == ell_code) c = ell_coef;
        if (c == 0.0) continue;
        for (int i = 0; i < m; ++i) {
          if (i == a.part || i == b.part) continue;
          cut.row.entries.push_back({mbcmbp_column(inst, v, i), c});
          lhs += c * x[i][v];
        }
      }
      cut.violation = lhs - bound.k_sup;
      if (cut.violation >= kViolation) cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

MbcmbpResult solve_mbcmbp(const MbcmbpInstance& inst, const MbcmbpOptions& options) {
  validate(inst);
  const BipartiteGraph& g = inst.g;
  const int m = static_cast<int>(inst.partition_u.size());
  const int nv = g.size_v();
  MbcmbpResult out;

  std::vector<char> removed(nv, 0);
  for (int v = 0; v < nv && out.hypothesis_holds; ++v) {
    removed[v] = 1;
    out.hypothesis_holds = static_cast<int>(maximum_matching(g, removed).size()) == g.size_u();
    removed[v] = 0;
  }
  if (nv == 0) out.hypothesis_holds = false;
  if (!out.hypothesis_holds) {
    const auto matching = maximum_matching(g);
    if (static_cast<int>(matching.size()) < g.size_u()) return out;
    std::vector<int> part_of(g.size_u());
    for (int i = 0; i < m; ++i) {
      for (int u : inst.partition_u[i]) part_of[u] = i;
    }
    std::vector<int> owner(nv, 0);  // unmatched vertices go to part 0
    for (const auto& [u, v] : matching) owner[v] = part_of[u];
    out.solution.partition_v.assign(m, {});
    for (int v = 0; v < nv; ++v) out.solution.partition_v[owner[v]].push_back(v);
    out.solution.z = 0;
    out.status = MipStatus::kOptimal;
    out.report.status = MipStatus::kOptimal;
    return out;
  }

  int z_cap = INT_MAX;
  for (const VertexSet& part : inst.partition_u) {
    z_cap = std::min(z_cap, kappa({restrict(g, part, all_v(g))}).kappa);
  }

  MipModel model;
  model.lp.set_sense(Sense::kMaximize);
  model.lp.add_column(1.0, 0.0, z_cap);
  for (int i = 0; i < m; ++i) {
    for (int v = 0; v < nv; ++v) model.lp.add_column(0.0, 0.0, 1.0);
  }
  for (int v = 0; v < nv; ++v) {
    std::vector<Entry> row;
    for (int i = 0; i < m; ++i) row.push_back({mbcmbp_column(inst, v, i), 1.0});
    model.lp.add_row(row, Relation::kLessEqual, 1.0);
  }
  model.integer.assign(model.lp.num_columns(), 1);
  model.objective_is_integral = true;
  model.limits = options.limits;
  model.log_cuts = options.log_cuts;

  auto found = std::make_shared<std::vector<FoundSet>>();
  const int cap = options.max_cuts_per_round;
  auto hall = [&inst, found, cap](const NodeContext& ctx) {
    found->clear();
    std::vector<MbcmbpCut> cuts = separate_hall_cuts(inst, unpack(inst, ctx.x), ctx.x[0], found.get());
    keep_strongest(cuts, cap);
    std::vector<LpRow> rows;
    for (MbcmbpCut& c : cuts) rows.push_back(std::move(c.row));
    return rows;
  };
  model.cuts.push_back({"hall", CutScope::kFractional, hall});
  if (options.pair_cuts && m > 1) {
    model.cuts.push_back({"pair", CutScope::kFractional, [&inst, found, cap](const NodeContext& ctx) {
                            std::vector<MbcmbpCut> cuts =
                                separate_pair_cuts(inst, unpack(inst, ctx.x), ctx.x[0], *found);
                            keep_strongest(cuts, cap);
                            std::vector<LpRow> rows;
                            for (MbcmbpCut& c : cuts) rows.push_back(std::move(c.row));
                            return rows;
                          }});
  }
  // Exact separation again at integer candidates, in case the fractional
  // round limit stopped it.
  model.cuts.push_back({"hall", CutScope::kIntegerOnly, hall});

  out.report = solve_mip(std::move(model));
  out.status = out.report.status;
  if (out.report.incumbent.empty()) return out;
  const auto x = unpack(inst, out.report.incumbent);
  out.solution.z = static_cast<int>(std::lround(out.report.incumbent[0]));
  out.solution.partition_v.assign(m, {});
  for (int v = 0; v < nv; ++v) {
    int owner = 0;  // repair: unassigned vertices join part 0
    for (int i = 0; i < m; ++i) {
      if (x[i][v] > 0.5) owner = i;
    }
    out.solution.partition_v[owner].push_back(v);
  }
  return out;
}

}  // namespace blocker
