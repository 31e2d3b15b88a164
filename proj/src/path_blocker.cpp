#include "blocker/path_blocker.hpp"

#include <algorithm>
#include <limits>

namespace blocker {

void validate(const MvvspInstance& inst) {
  const int n = inst.g.num_vertices();
  if (inst.s < 0 || inst.t < 0 || inst.s >= n || inst.t >= n) throw InputError("s/t out of range");
  if (inst.s == inst.t) throw InputError("MVVSP needs s != t");
  if (inst.d < 0) throw InputError("negative length bound");
  for (const Arc& a : inst.g.arcs()) {
    if (a.length < 0) throw InputError("negative arc length");
  }
}

std::int64_t path_length(const Digraph& g, const std::vector<int>& path) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    std::int64_t best = -1;
    for (int a : g.out_arcs(path[i])) {
      if (g.arc(a).head == path[i + 1] && (best < 0 || g.arc(a).length < best)) {
        best = g.arc(a).length;
      }
    }
    if (best < 0) throw InputError("not a path of the digraph");
    total += best;
  }
  return total;
}

std::vector<int> minimalize_path(const MvvspInstance& inst, std::vector<int> path) {
  const Digraph& g = inst.g;
  auto arc_len = [&](int u, int v) {
    std::int64_t best = -1;
    for (int a : g.out_arcs(u)) {
      if (g.arc(a).head == v && (best < 0 || g.arc(a).length < best)) best = g.arc(a).length;
    }
    return best;
  };
  std::int64_t total = path_length(g, path);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::int64_t> prefix(path.size(), 0);
    for (std::size_t i = 1; i < path.size(); ++i) {
      prefix[i] = prefix[i - 1] + arc_len(path[i - 1], path[i]);
    }
    for (std::size_t i = 0; i + 2 < path.size() && !changed; ++i) {
      for (std::size_t j = path.size() - 1; j > i + 1; --j) {
        const std::int64_t len = arc_len(path[i], path[j]);
        if (len < 0) continue;
        const std::int64_t now = total - (prefix[j] - prefix[i]) + len;
        if (now > inst.d) continue;
        path.erase(path.begin() + i + 1, path.begin() + j);
        total = now;
        changed = true;
        break;
      }
    }
  }
  return path;
}

std::optional<PathCut> separate_path_cut(const MvvspInstance& inst, std::span<const double> x,
                                         std::span<const char> extra) {
  const int n = inst.g.num_vertices();
  std::vector<char> blocked(n, 0);
  for (int v = 0; v < n; ++v) {
    blocked[v] = (v < static_cast<int>(x.size()) && x[v] > 0.5) || (!extra.empty() && extra[v]);
  }
  blocked[inst.s] = blocked[inst.t] = 0;
  const auto p = shortest_path_avoiding(inst.g, inst.s, inst.t, blocked);
  if (!p || p->length > inst.d) return std::nullopt;
  PathCut cut;
  cut.path = p->vertices;
  cut.internal.assign(cut.path.begin() + 1, cut.path.end() - 1);
  std::sort(cut.internal.begin(), cut.internal.end());
  return cut;
}

std::optional<std::int64_t> residual_distance(const MvvspInstance& inst, const VertexSet& blocked) {
  std::vector<char> mask(inst.g.num_vertices(), 0);
  for (int v : blocked) mask[v] = 1;
  mask[inst.s] = mask[inst.t] = 0;
  const auto p = shortest_path_avoiding(inst.g, inst.s, inst.t, mask);
  if (!p) return std::nullopt;
  return p->length;
}

std::optional<int> min_vertex_separator(const Digraph& g, int s, int t) {
  const int n = g.num_vertices();
  // v_in = v, v_out = n + v
  std::vector<Arc> arcs;
  const std::int64_t inf = n + 1;
  for (int v = 0; v < n; ++v) arcs.push_back({v, n + v, (v == s || v == t) ? inf : 1});
  for (const Arc& a : g.arcs()) {
    if (a.tail == s && a.head == t) return std::nullopt;
    arcs.push_back({n + a.tail, a.head, inf});
  }
  const MaxFlowResult r = max_flow_min_cut(Digraph(2 * n, arcs), n + s, t);
  return static_cast<int>(r.value);
}

MvvspResult solve_mvvsp(const MvvspInstance& inst, const MvvspOptions& options) {
  validate(inst);
  const Digraph& g = inst.g;
  const int n = g.num_vertices();
  MvvspResult out;
  for (const Arc& a : g.arcs()) {
    if (a.tail == inst.s && a.head == inst.t && a.length <= inst.d) return out;
  }
  std::vector<int> col_of(n, -1);
  std::vector<int> vertex_of;
  MipModel model;
  for (int v = 0; v < n; ++v) {
    if (v == inst.s || v == inst.t) continue;
    col_of[v] = model.lp.add_column(1.0, 0.0, 1.0);
    vertex_of.push_back(v);
  }
  model.integer.assign(model.lp.num_columns(), 1);
  model.objective_is_integral = true;
  model.limits = options.limits;
  model.log_cuts = options.log_cuts;

  CutCallback paths;
  paths.family = "path";
  paths.scope = CutScope::kIntegerOnly;
  paths.separate = [&, n](const NodeContext& ctx) {
    std::vector<double> xv(n, 0.0);
    for (std::size_t j = 0; j < vertex_of.size(); ++j) xv[vertex_of[j]] = ctx.x[j];
    std::vector<char> extra(n, 0);
    std::vector<LpRow> rows;
    for (int round = 0; round < options.cuts_per_candidate; ++round) {
      auto cut = separate_path_cut(inst, xv, extra);
      if (!cut) break;
      std::vector<int> path = options.minimalize ? minimalize_path(inst, cut->path) : cut->path;
      LpRow row;
      row.relation = Relation::kGreaterEqual;
      row.rhs = 1.0;
      for (std::size_t i = 1; i + 1 < path.size(); ++i) row.entries.push_back({col_of[path[i]], 1.0});
      rows.push_back(std::move(row));
      for (int v : cut->internal) extra[v] = 1;
    }
    return rows;
  };
  model.cuts.push_back(paths);

  out.report = solve_mip(std::move(model));
  out.status = out.report.status;
  if (out.report.incumbent.empty()) return out;
  for (std::size_t j = 0; j < vertex_of.size(); ++j) {
    if (out.report.incumbent[j] > 0.5) out.blocker.push_back(vertex_of[j]);
  }
  const auto left = residual_distance(inst, out.blocker);
  if (left && *left <= inst.d && out.status == MipStatus::kOptimal) {
    throw std::logic_error("MVVSP blocker leaves a short path");
  }
  return out;
}

}  // namespace blocker
