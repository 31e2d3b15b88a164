#include "blocker/gosdc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "blocker/forbidden_subgraphs.hpp"
#include "blocker/graph.hpp"

namespace blocker {

void validate(const GosdcInstance& inst) {
  if (inst.machines < 1) throw InputError("gosdc: need at least one machine");
  if (inst.jobs.empty()) throw InputError("gosdc: no jobs");
  std::set<int> ids;
  for (const GosdcJob& j : inst.jobs) {
    if (j.machine < 0 || j.machine >= inst.machines)
      throw InputError("gosdc: job " + std::to_string(j.id) + " on unknown machine");
    if (j.p <= 0) throw InputError("gosdc: processing times must be positive");
    if (!ids.insert(j.id).second) throw InputError("gosdc: duplicate job id " + std::to_string(j.id));
  }
  int n = static_cast<int>(inst.jobs.size());
  for (auto [a, b] : inst.incompatible)
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw InputError("gosdc: bad incompatibility pair");
}

std::vector<std::pair<int, int>> conflict_pairs(const GosdcInstance& inst) {
  int n = static_cast<int>(inst.jobs.size());
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (inst.jobs[a].machine == inst.jobs[b].machine) conflict[a][b] = 1;
  for (auto [a, b] : inst.incompatible) conflict[std::min(a, b)][std::max(a, b)] = 1;
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (conflict[a][b]) out.push_back({a, b});
  return out;
}

std::int64_t check_schedule(const GosdcInstance& inst, const std::vector<std::int64_t>& start) {
  if (start.size() != inst.jobs.size()) throw std::logic_error("schedule: wrong number of starts");
  std::int64_t makespan = 0;
  for (std::size_t j = 0; j < start.size(); ++j) {
    if (start[j] < 0) throw std::logic_error("schedule: negative start");
    makespan = std::max(makespan, start[j] + inst.jobs[j].p);
  }
  for (auto [a, b] : conflict_pairs(inst)) {
    bool apart = start[a] + inst.jobs[a].p <= start[b] || start[b] + inst.jobs[b].p <= start[a];
    if (!apart)
      throw std::logic_error("schedule: jobs " + std::to_string(inst.jobs[a].id) + " and " +
                             std::to_string(inst.jobs[b].id) + " overlap");
  }
  return makespan;
}

std::vector<std::int64_t> sequence_starts(const GosdcInstance& inst,
                                          const std::vector<int>& sequence) {
  int n = static_cast<int>(inst.jobs.size());
  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (auto [a, b] : conflict_pairs(inst)) conflict[a][b] = conflict[b][a] = 1;
  std::vector<std::int64_t> start(n, 0);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    int j = sequence[i];
    for (std::size_t k = 0; k < i; ++k) {
      int o = sequence[k];
      if (conflict[j][o]) start[j] = std::max(start[j], start[o] + inst.jobs[o].p);
    }
  }
  return start;
}

unsigned method_families(int method) {
  switch (method) {
    case 0: return 0;
    case 1: return kFamilyClaw;
    case 2: return kFamilyUmbrella;
    case 3: return kFamilyHole;
    case 4: return kFamilyClique;
    case 5: return kFamilyNet;
    case 6: return kFamilyTent;
    case 7: return kFamilyAll;
  }
  throw InputError("gosdc: method must be 0..7");
}

unsigned parse_families(const std::string& list) {
  static const std::map<std::string, unsigned> names = {
      {"claw", kFamilyClaw}, {"umbrella", kFamilyUmbrella}, {"hole", kFamilyHole},
      {"clique", kFamilyClique}, {"clique-hole", kFamilyClique}, {"net", kFamilyNet},
      {"tent", kFamilyTent}, {"all", kFamilyAll}, {"none", 0}};
  unsigned out = 0;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto it = names.find(item);
    if (it == names.end()) throw InputError("gosdc: unknown cut family '" + item + "'");
    out |= it->second;
  }
  return out;
}

namespace {

struct Layout {
  int n = 0;
  int cmax = 0;
  std::vector<int> y;
  // per ordered pair (a, b): column of zbar_ab, -1 on the diagonal
  std::vector<std::vector<int>> before;
  // per unordered pair: column of z, -1 when the pair conflicts
  std::vector<std::vector<int>> together;
};

struct FamilyPattern {
  Pattern pattern;
  unsigned family;
};

std::vector<FamilyPattern> patterns_for(unsigned families, int jobs, int m) {
  std::vector<FamilyPattern> out;
  auto add = [&](PatternKind kind, int size, unsigned fam) {
    Pattern p = make_pattern(kind, size);
    if (p.vertex_count <= std::min(jobs, 8)) out.push_back({std::move(p), fam});
  };
  if (families & kFamilyClaw) add(PatternKind::kBipartiteClaw, 0, kFamilyClaw);
  if ((families & kFamilyUmbrella) && m >= 3) add(PatternKind::kUmbrella, 0, kFamilyUmbrella);
  if (families & kFamilyHole)
    for (int len = 4; len <= 8; ++len) add(PatternKind::kHole, len, kFamilyHole);
  if (families & kFamilyNet)
    for (int s = 2; s <= 4; ++s) add(PatternKind::kNet, s, kFamilyNet);
  if (families & kFamilyTent) {
    for (int s = 3; s <= 5; ++s) {
      Pattern p = make_pattern(PatternKind::kTent, s);
      SmallGraph t(p.vertex_count);
      for (auto [u, v] : p.edges) t.add_edge(u, v);
      if (clique_number(t) <= m) add(PatternKind::kTent, s, kFamilyTent);
    }
  }
  if (families & kFamilyClique)
    for (int s = m + 1; s <= 8; ++s) add(PatternKind::kClique, s, kFamilyClique);
  return out;
}

const char* family_name(unsigned fam) {
  switch (fam) {
    case kFamilyClaw: return "claw";
    case kFamilyUmbrella: return "umbrella";
    case kFamilyHole: return "hole";
    case kFamilyClique: return "clique";
    case kFamilyNet: return "net";
    case kFamilyTent: return "tent";
  }
  return "?";
}

}  // namespace

GosdcResult solve_gosdc(const GosdcInstance& inst, const GosdcOptions& options) {
  validate(inst);
  const int n = static_cast<int>(inst.jobs.size());
  const int m = inst.machines;
  std::int64_t total = 0;
  for (const GosdcJob& j : inst.jobs) total += j.p;
  const double big = static_cast<double>(total);

  std::vector<std::vector<char>> conflict(n, std::vector<char>(n, 0));
  for (auto [a, b] : conflict_pairs(inst)) conflict[a][b] = conflict[b][a] = 1;

  MipModel model;
  LinearProgram& lp = model.lp;
  lp.set_sense(Sense::kMinimize);
  Layout lay;
  lay.n = n;
  lay.cmax = lp.add_column(1.0, 0.0, big, {});
  model.integer.push_back(1);
  for (int j = 0; j < n; ++j) {
    // Fixed binaries leave a difference system, so starts come out integral.
    lay.y.push_back(lp.add_column(0.0, 0.0, big, {}));
    model.integer.push_back(0);
  }
  lay.before.assign(n, std::vector<int>(n, -1));
  lay.together.assign(n, std::vector<int>(n, -1));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) {
        lay.before[a][b] = lp.add_column(0.0, 0.0, 1.0, {});
        model.integer.push_back(1);
      }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!conflict[a][b]) {
        lay.together[a][b] = lay.together[b][a] = lp.add_column(0.0, 0.0, 1.0, {});
        model.integer.push_back(1);
      }

  for (int j = 0; j < n; ++j)
    lp.add_row(std::vector<Entry>{{lay.y[j], 1.0}, {lay.cmax, -1.0}}, Relation::kLessEqual,
               -static_cast<double>(inst.jobs[j].p));
  // zbar_ab = 1 puts a before b; otherwise the row is slack.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b)
        lp.add_row(std::vector<Entry>{{lay.y[a], 1.0}, {lay.y[b], -1.0}, {lay.before[a][b], big}},
                   Relation::kLessEqual, big - static_cast<double>(inst.jobs[a].p));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::vector<Entry> row = {{lay.before[a][b], 1.0}, {lay.before[b][a], 1.0}};
      if (lay.together[a][b] >= 0) row.push_back({lay.together[a][b], 1.0});
      lp.add_row(row, Relation::kEqual, 1.0);
    }
  if (options.load_bounds) {
    std::vector<std::int64_t> load(m, 0);
    for (const GosdcJob& j : inst.jobs) load[j.machine] += j.p;
    for (int i = 0; i < m; ++i)
      if (load[i] > 0)
        lp.add_row(std::vector<Entry>{{lay.cmax, 1.0}}, Relation::kGreaterEqual, static_cast<double>(load[i]));
  }

  // Start from a list schedule: longest jobs first.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return inst.jobs[a].p > inst.jobs[b].p; });
  auto encode = [&](const std::vector<std::int64_t>& start) {
    std::vector<double> x(lp.num_columns(), 0.0);
    std::int64_t ms = 0;
    for (int j = 0; j < n; ++j) {
      x[lay.y[j]] = static_cast<double>(start[j]);
      ms = std::max(ms, start[j] + inst.jobs[j].p);
    }
    x[lay.cmax] = static_cast<double>(ms);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (start[a] + inst.jobs[a].p <= start[b]) x[lay.before[a][b]] = 1.0;
        else if (start[b] + inst.jobs[b].p <= start[a]) x[lay.before[b][a]] = 1.0;
        else x[lay.together[a][b]] = 1.0;
      }
    return x;
  };
  model.initial_solution = encode(sequence_starts(inst, order));

  for (unsigned fam = 1; fam & kFamilyAll; fam <<= 1) {
    std::vector<FamilyPattern> pats = patterns_for(options.families & fam, n, m);
    if (pats.empty()) continue;
    auto separate = [pats, lay, m, options](const NodeContext& ctx) {
      auto z = [&](int u, int v) {
        int col = lay.together[u][v];
        return col < 0 ? 0.0 : ctx.x[col];
      };
      SmallGraph support(lay.n);
      for (int a = 0; a < lay.n; ++a)
        for (int b = a + 1; b < lay.n; ++b)
          if (z(a, b) > 1e-6) support.add_edge(a, b);
      struct Found {
        double violation;
        LpRow row;
      };
      std::map<std::vector<std::pair<int, double>>, Found> rows;
      for (const FamilyPattern& pat : pats) {
        for (const Embedding& emb : find_embeddings(support, pat.pattern, false, options.max_embeddings)) {
          std::vector<CutRow> cand;
          if (pat.pattern.kind == PatternKind::kClique) {
            CutRow a = clique_cut(emb.vertices, m);
            CutRow b = clique_hole_cut(emb.vertices, m);
            cand.push_back(a.rhs <= b.rhs ? a : b);
          } else {
            cand.push_back(cut_for(emb, m));
          }
          for (const CutRow& cut : cand) {
            double violation = cut.lhs(z) - cut.rhs;
            if (violation <= 1e-6) continue;
            LpRow row;
            row.relation = Relation::kLessEqual;
            row.rhs = cut.rhs;
            std::vector<std::pair<int, double>> key;
            for (const EdgeCoef& t : cut.terms) {
              int col = lay.together[t.u][t.v];
              if (col < 0) continue;  // z is 0 on conflicting pairs
              row.entries.push_back({col, static_cast<double>(t.coef)});
            }
            std::sort(row.entries.begin(), row.entries.end(),
                      [](const Entry& x, const Entry& y) { return x.index < y.index; });
            for (const Entry& e : row.entries) key.push_back({e.index, e.value});
            key.push_back({-1, row.rhs});
            auto it = rows.find(key);
            if (it == rows.end() || it->second.violation < violation)
              rows[key] = Found{violation, std::move(row)};
          }
        }
      }
      std::vector<Found> all;
      for (auto& [k, f] : rows) all.push_back(std::move(f));
      std::stable_sort(all.begin(), all.end(),
                       [](const Found& a, const Found& b) { return a.violation > b.violation; });
      if (static_cast<int>(all.size()) > options.max_cuts_per_round)
        all.resize(options.max_cuts_per_round);
      std::vector<LpRow> out;
      for (Found& f : all) out.push_back(std::move(f.row));
      return out;
    };
    model.cuts.push_back({family_name(fam), CutScope::kFractional, separate});
  }

  model.limits = options.limits;
  model.objective_is_integral = true;
  model.log_cuts = options.log_cuts;
  GosdcResult result;
  result.report = solve_mip(std::move(model));
  result.status = result.report.status;
  if (result.report.incumbent.empty()) return result;

  const std::vector<double>& x = result.report.incumbent;
  // Rebuild starts from the conflict orientation alone; the LP values may
  // carry slack on unconstrained pairs.
  std::vector<std::vector<int>> preds(n);
  for (auto [a, b] : conflict_pairs(inst)) {
    if (x[lay.before[a][b]] > 0.5) preds[b].push_back(a);
    else preds[a].push_back(b);
  }
  std::vector<std::int64_t> start(n, -1);
  std::vector<int> state(n, 0);
  auto visit = [&](auto&& self, int j) -> std::int64_t {
    if (state[j] == 2) return start[j];
    if (state[j] == 1) throw std::logic_error("gosdc: cyclic ordering in the incumbent");
    state[j] = 1;
    std::int64_t s = 0;
    for (int o : preds[j]) s = std::max(s, self(self, o) + inst.jobs[o].p);
    start[j] = s;
    state[j] = 2;
    return s;
  };
  for (int j = 0; j < n; ++j) visit(visit, j);
  result.start = start;
  result.makespan = check_schedule(inst, start);
  if (static_cast<double>(result.makespan) > result.report.objective + 1e-6)
    throw std::logic_error("gosdc: rebuilt schedule is longer than the model makespan");
  if (result.status == MipStatus::kOptimal &&
      static_cast<double>(result.makespan) < result.report.objective - 1e-6)
    throw std::logic_error("gosdc: rebuilt schedule beats the proven optimum");
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (start[a] + inst.jobs[a].p <= start[b]) result.before.push_back({a, b});
      else if (start[b] + inst.jobs[b].p <= start[a]) result.before.push_back({b, a});
      else result.simultaneous.push_back({a, b});
    }
  return result;
}

}  // namespace blocker
