// Runs the ten acceptance checks and prints one PASS/FAIL line per check.
// Exit status 1 when any check fails.
#include <algorithm>
#include <bit>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blocker/clique_interdiction.hpp"
#include "blocker/flow_blocker.hpp"
#include "blocker/forbidden_subgraphs.hpp"
#include "blocker/generators.hpp"
#include "blocker/gosdc.hpp"
#include "blocker/graph_algorithms.hpp"
#include "blocker/graph_io.hpp"
#include "blocker/lp.hpp"
#include "blocker/matching_blocker.hpp"
#include "blocker/oracles.hpp"
#include "blocker/path_blocker.hpp"
#include "blocker/vertex_kcut.hpp"

using namespace blocker;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Failure messages of one check; only the first few are printed.
struct Check {
  std::vector<std::string> failures;
  std::string summary;

  template <class... Args>
  void expect(bool ok, Args&&... what) {
    if (ok) return;
    std::ostringstream os;
    (os << ... << what);
    failures.push_back(os.str());
  }
  bool passed() const { return failures.empty(); }
};

// Every repeated solve must give the same objective bits and node count.
struct Determinism {
  int pairs = 0;
  std::vector<std::string> failures;

  void compare(const std::string& label, const SolveReport& a, const SolveReport& b) {
    ++pairs;
    if (std::bit_cast<std::uint64_t>(a.objective) != std::bit_cast<std::uint64_t>(b.objective) ||
        a.nodes != b.nodes || a.status != b.status)
      failures.push_back(label);
  }
};

Determinism determinism;

bool satisfied(const LpRow& row, double a) {
  if (row.relation == Relation::kLessEqual) return a <= row.rhs + 1e-9;
  if (row.relation == Relation::kGreaterEqual) return a >= row.rhs - 1e-9;
  return std::abs(a - row.rhs) <= 1e-9;
}

double activity(const LpRow& row, std::span<const double> x) {
  double a = 0.0;
  for (const Entry& e : row.entries) a += e.value * x[e.index];
  return a;
}

// 1 and 2 ------------------------------------------------------------------

void bcmbp_suite(Check& equal, Check& integral) {
  SplitMix64 rng(101);
  const int densities[] = {30, 50, 80};
  const auto t0 = Clock::now();
  int lps = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int nu = 2 + trial % 5;
    const int nv = nu + (trial / 5) % (9 - nu);
    const BcmbpInstance inst{gen_bipartite(nu, nv, densities[trial % 3], rng)};
    const KappaResult r = kappa(inst);
    const BcmbpOracle o = oracle_bcmbp(inst);
    equal.expect(r.kappa == o.kappa, "instance ", trial, ": kappa ", r.kappa, " oracle ", o.kappa);
    integral.expect(r.max_fractionality <= 1e-6, "instance ", trial, ": fractionality ",
                    r.max_fractionality);
    lps += r.lp_solves;
    worst = std::max(worst, r.max_fractionality);
  }
  const double secs = since(t0);
  equal.expect(secs < 60.0, "runtime ", secs, " s");
  char buf[120];
  std::snprintf(buf, sizeof buf, "200 instances, %.2f s", secs);
  equal.summary = buf;
  std::snprintf(buf, sizeof buf, "%d per-u LPs, max distance to {0,1} %.1e", lps, worst);
  integral.summary = buf;
}

// 3 ------------------------------------------------------------------------

MbcmbpInstance random_mbcmbp(int nu, int nv, int m, int density, SplitMix64& rng) {
  MbcmbpInstance inst{gen_bipartite(nu, nv, density, rng), {}};
  std::vector<int> order(nu);
  std::iota(order.begin(), order.end(), 0);
  for (int i = nu - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(0, i)]);
  inst.partition_u.assign(m, {});
  for (int j = 0; j < nu; ++j) inst.partition_u[j < m ? j : rng.uniform(0, m - 1)].push_back(order[j]);
  for (auto& part : inst.partition_u) std::sort(part.begin(), part.end());
  return inst;
}

// Integer points (x, z) of the model, every z from 0 up to the largest value
// the partition allows. owner m means unassigned.
std::vector<std::vector<double>> mbcmbp_points(const MbcmbpInstance& inst) {
  const int m = static_cast<int>(inst.partition_u.size());
  const int nv = inst.g.size_v();
  std::vector<std::vector<double>> out;
  std::vector<int> owner(nv, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == nv) {
      int worst = INT_MAX;
      for (int i = 0; i < m; ++i) {
        const VertexSet& part = inst.partition_u[i];
        const int s = static_cast<int>(part.size());
        for (int mask = 1; mask < (1 << s); ++mask) {
          std::vector<char> hit(nv, 0);
          for (int b = 0; b < s; ++b)
            if (mask >> b & 1)
              for (int w : inst.g.neighbors_u(part[b])) hit[w] |= owner[w] == i;
          worst = std::min(worst, static_cast<int>(std::count(hit.begin(), hit.end(), 1)) -
                                      std::popcount(static_cast<unsigned>(mask)));
        }
      }
      if (worst < 0) return;
      std::vector<double> x(1 + m * nv, 0.0);
      for (int w = 0; w < nv; ++w)
        if (owner[w] < m) x[mbcmbp_column(inst, w, owner[w])] = 1.0;
      for (int z = 0; z <= worst; ++z) {
        x[0] = z;
        out.push_back(x);
      }
      return;
    }
    for (int i = 0; i <= m; ++i) {
      owner[v] = i;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

void mbcmbp_suite(Check& c) {
  SplitMix64 rng(2024);
  const int densities[] = {50, 80, 65};
  int cuts = 0, searched = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 2 + trial % 2;
    const int nu = m + 1 + trial % (7 - m);
    const int nv = std::min(8, nu + 1 + trial % 3);
    const MbcmbpInstance inst = random_mbcmbp(nu, nv, m, densities[trial % 3], rng);
    MbcmbpOptions opt;
    opt.log_cuts = true;
    const MbcmbpResult r = solve_mbcmbp(inst, opt);
    const MbcmbpOracle o = oracle_mbcmbp(inst);
    if (trial < 10) determinism.compare("mbcmbp " + std::to_string(trial), r.report,
                                        solve_mbcmbp(inst, opt).report);
    if (o.z < 0) {
      c.expect(r.status == MipStatus::kInfeasible, "instance ", trial, ": oracle z ", o.z,
               " but status ", to_string(r.status));
      continue;
    }
    c.expect(r.status == MipStatus::kOptimal && r.solution.z == o.z, "instance ", trial, ": z ",
             r.solution.z, " oracle ", o.z);
    if (r.report.cut_log.empty()) continue;
    ++searched;
    const auto points = mbcmbp_points(inst);
    for (const CutRecord& cut : r.report.cut_log) {
      ++cuts;
      c.expect(cut.violation >= 1e-6 && !satisfied(cut.row, activity(cut.row, cut.candidate)),
               "instance ", trial, ": ", cut.family, " cut not violated by its candidate");
      for (const auto& x : points)
        if (!satisfied(cut.row, activity(cut.row, x))) {
          c.expect(false, "instance ", trial, ": ", cut.family, " cut removes a feasible point");
          break;
        }
    }
  }
  // two parts of two vertices with the same four neighbours
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) e.emplace_back(u, v);
  const MbcmbpInstance twin{BipartiteGraph(4, 4, e), {{0, 1}, {2, 3}}};
  const MbcmbpResult r = solve_mbcmbp(twin);
  const PairBound b = pair_bound(twin, {0, 1}, {2, 3});
  c.expect(r.status == MipStatus::kOptimal && r.solution.z == 0, "example: z ", r.solution.z);
  c.expect(oracle_mbcmbp(twin).z == 0, "example: oracle disagrees");
  c.expect(b.k_sup == 0.0, "example: pair bound ", b.k_sup);
  c.summary = "60 instances, " + std::to_string(searched) + " with cuts, " + std::to_string(cuts) +
              " cuts checked, z=0 example";
}

// 4 ------------------------------------------------------------------------

double brute_pricing(int n, const std::vector<double>& nu, const std::vector<double>& pi,
                     const std::vector<VertexSet>& cover) {
  double best = -1e18;
  for (int mask = 1; mask < (1 << n); ++mask) {
    double val = 0.0;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) val += nu[v];
    for (std::size_t k = 0; k < cover.size(); ++k) {
      bool hit = false;
      for (int v : cover[k]) hit = hit || (mask >> v & 1);
      if (hit) val -= pi[k];
    }
    best = std::max(best, val);
  }
  return best;
}

void kcut_suite(Check& c, const std::string& karate_path) {
  SplitMix64 rng(42);
  const int densities[] = {25, 40, 60};
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 7 + trial % 6;
    const KCutInstance inst{gen_graph(n, densities[trial % 3], rng), 2 + trial % 3};
    const VkcutOracle o = oracle_vkcut(inst);
    const KCutResult a = solve_compact(inst);
    const KCutResult b = solve_extended(inst);
    if (trial < 5) {
      determinism.compare("compact " + std::to_string(trial), a.report, solve_compact(inst).report);
      determinism.compare("extended " + std::to_string(trial), b.report, solve_extended(inst).report);
    }
    if (!o.feasible) {
      c.expect(a.status == MipStatus::kInfeasible && b.status == MipStatus::kInfeasible,
               "instance ", trial, ": oracle infeasible, solvers not");
      continue;
    }
    ++feasible;
    c.expect(a.status == MipStatus::kOptimal && a.solution.kept() == o.kept &&
                 is_valid_kcut(inst, a.solution),
             "instance ", trial, ": compact ", a.solution.kept(), " oracle ", o.kept);
    c.expect(b.status == MipStatus::kOptimal && b.solution.kept() == o.kept &&
                 is_valid_kcut(inst, b.solution),
             "instance ", trial, ": extended ", b.solution.kept(), " oracle ", o.kept);
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6 + trial % 5;
    const UndirectedGraph g = gen_graph(n, 35, rng);
    const auto cover = build_clique_cover(g, trial % 2 ? CoverMode::kGreedyMaximal : CoverMode::kEdges);
    std::vector<double> nu(n), pi(cover.size());
    for (double& x : nu) x = 1.0 - rng.uniform(0, 1500) / 1000.0;
    for (double& x : pi) x = rng.uniform(0, 600) / 1000.0;
    const auto got = max_weight_subset(n, nu, pi, cover);
    const double expect = brute_pricing(n, nu, pi, cover);
    c.expect(got && std::abs(got->value - expect) <= 1e-6, "pricing ", trial, ": ",
             got ? got->value : -1e18, " vs ", expect);
  }
  const KCutInstance karate{read_dimacs_file(karate_path), 5};
  c.expect(karate.g.num_vertices() == 34 && karate.g.num_edges() == 78, "karate size");
  KCutOptions opt;
  opt.limits.time_limit_seconds = 300.0;
  auto t0 = Clock::now();
  const KCutResult a = solve_compact(karate, opt);
  const double ta = since(t0);
  t0 = Clock::now();
  const KCutResult b = solve_extended(karate, opt);
  const double tb = since(t0);
  c.expect(a.status == MipStatus::kOptimal && b.status == MipStatus::kOptimal &&
               a.solution.kept() == b.solution.kept(),
           "karate: compact ", to_string(a.status), " ", a.solution.kept(), " extended ",
           to_string(b.status), " ", b.solution.kept());
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "60 instances (%d feasible), 100 pricing duals, karate k=5 kept %d (%.1f s / %.1f s)",
                feasible, a.solution.kept(), ta, tb);
  c.summary = buf;
}

// 5 ------------------------------------------------------------------------

bool blocks(const MvvspInstance& inst, const VertexSet& b) {
  const auto left = residual_distance(inst, b);
  return !left || *left > inst.d;
}

void mvvsp_suite(Check& c) {
  SplitMix64 rng(2024);
  const int densities[] = {10, 25, 50};
  int solves = 0;
  for (int trial = 0; trial < 60; ++trial) {
    MvvspInstance inst = gen_mvvsp(6 + trial % 7, densities[trial % 3], rng);
    const auto sweep = mvvsp_sweep(inst);
    if (!sweep) {
      c.expect(false, "instance ", trial, ": t unreachable");
      continue;
    }
    for (inst.d = sweep->sp + 1; inst.d <= sweep->disc; ++inst.d) {
      const MvvspResult r = solve_mvvsp(inst);
      const MvvspOracle o = oracle_mvvsp(inst);
      ++solves;
      if (trial < 5) determinism.compare("mvvsp " + std::to_string(trial), r.report,
                                         solve_mvvsp(inst).report);
      c.expect(r.status == MipStatus::kOptimal && o.feasible && r.blocker.size() == o.blocker.size(),
               "instance ", trial, " d=", inst.d, ": ", r.blocker.size(), " vs oracle ",
               o.blocker.size());
      c.expect(blocks(inst, r.blocker), "instance ", trial, " d=", inst.d, ": path of length <= d left");
      const int k = static_cast<int>(r.blocker.size());
      for (int mask = 0; mask + 1 < (1 << k); ++mask) {
        VertexSet sub;
        for (int i = 0; i < k; ++i)
          if (mask >> i & 1) sub.push_back(r.blocker[i]);
        if (blocks(inst, sub)) {
          c.expect(false, "instance ", trial, " d=", inst.d, ": blocker not minimal");
          break;
        }
      }
    }
  }
  c.summary = "60 instances, " + std::to_string(solves) + " sweep solves";
}

// 6 ------------------------------------------------------------------------

void mfbp_suite(Check& c) {
  SplitMix64 rng(99);
  int nontrivial = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const MfbpInstance inst = gen_mfbp(4 + trial % 5, 6 + trial % 11, rng);
    const MfbpResult a = solve_mfbp_compact(inst);
    const MfbpResult b = solve_mfbp_benders(inst);
    const MfbpOracle o = oracle_mfbp(inst);
    if (trial < 5) {
      determinism.compare("mfbp compact " + std::to_string(trial), a.report,
                          solve_mfbp_compact(inst).report);
      determinism.compare("mfbp benders " + std::to_string(trial), b.report,
                          solve_mfbp_benders(inst).report);
    }
    if (o.cost > 0) ++nontrivial;
    c.expect(a.status == MipStatus::kOptimal && b.status == MipStatus::kOptimal && a.cost == o.cost &&
                 b.cost == o.cost,
             "instance ", trial, ": compact ", a.cost, " benders ", b.cost, " oracle ", o.cost);
    c.expect(residual_max_flow(inst, a.blocked) <= inst.phi && residual_max_flow(inst, b.blocked) <= inst.phi,
             "instance ", trial, ": flow above phi after blocking");
    const MfipOracle mfip = oracle_mfip(swap_to_mfip(inst));
    try {
      const std::vector<int> from = blocker_from_interdiction(mfip, inst);
      c.expect(blocking_cost(inst, from) == o.cost && residual_max_flow(inst, from) <= inst.phi,
               "instance ", trial, ": swapped blocker not optimal");
    } catch (const std::logic_error& e) {
      c.expect(false, "instance ", trial, ": ", e.what());
    }
  }
  c.summary = "120 instances (" + std::to_string(nontrivial) + " with positive cost), swap theorem on all";
}

// 7 ------------------------------------------------------------------------

UndirectedGraph disjoint_cliques(std::vector<int> sizes) {
  std::vector<std::pair<int, int>> e;
  int base = 0;
  for (int s : sizes) {
    for (int u = 0; u < s; ++u)
      for (int v = u + 1; v < s; ++v) e.emplace_back(base + u, base + v);
    base += s;
  }
  return UndirectedGraph(base, e);
}

void cip_suite(Check& c) {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 6 + trial % 9;
    const CipInstance inst{gen_graph(n, 30 + 10 * (trial % 5), rng), trial % 4};
    const CipResult r = solve_cip(inst);
    const CipOracle o = oracle_cip(inst);
    if (trial < 5) determinism.compare("cip " + std::to_string(trial), r.report, solve_cip(inst).report);
    c.expect(r.status == MipStatus::kOptimal && r.policy.theta == o.theta, "instance ", trial, ": ",
             r.policy.theta, " vs oracle ", o.theta);
    c.expect(r.bounds.lmin <= o.theta && o.theta <= r.bounds.lmax, "instance ", trial, ": sandwich ",
             r.bounds.lmin, " <= ", o.theta, " <= ", r.bounds.lmax);
    CipOptions raw;
    raw.preprocess = false;
    raw.lmin_row = false;
    CipOptions pre = raw;
    pre.preprocess = true;
    const CipResult a = solve_cip(inst, raw);
    const CipResult b = solve_cip(inst, pre);
    c.expect(a.policy.theta == std::max(b.reduced_theta, b.bounds.lmin), "instance ", trial,
             ": recombination ", a.policy.theta, " vs max(", b.reduced_theta, ", ", b.bounds.lmin, ")");
  }
  const UndirectedGraph k4 = disjoint_cliques({4});
  const UndirectedGraph k33 = disjoint_cliques({3, 3});
  c.expect(lower_bound_lmin(k4, 2).lmin == 2 && oracle_cip({k4, 2}).theta == 2, "K4, k=2");
  c.expect(lower_bound_lmin(k33, 1).lmin == 3 && oracle_cip({k33, 1}).theta == 3, "K3+K3, k=1");
  c.summary = "80 instances, paired runs, worked cases {K4},k=2 -> 2 and {K3,K3},k=1 -> 3";
}

// 8 ------------------------------------------------------------------------

SmallGraph from_mask(int n, std::uint64_t mask) {
  SmallGraph g(n);
  int e = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++e)
      if (mask >> e & 1u) g.add_edge(u, v);
  return g;
}

int pattern_omega(const Pattern& p) {
  SmallGraph g(p.vertex_count);
  for (auto [u, v] : p.edges) g.add_edge(u, v);
  return clique_number(g);
}

void fsc_suite(Check& c) {
  for (int m = 2; m <= 6; ++m) c.expect(f_km(m + 1, m) == 1, "f(", m + 1, ",", m, ") = ", f_km(m + 1, m));
  for (int n = 1; n <= 7; ++n) {
    const int pairs = n * (n - 1) / 2;
    std::vector<int> best(4, pairs);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      const int omega = clique_number(from_mask(n, mask));
      for (int m = std::max(omega, 1); m <= 3; ++m)
        best[m] = std::min(best[m], pairs - std::popcount(mask));
    }
    for (int m = 1; m <= 3; ++m)
      c.expect(f_km(n, m) == best[m], "f(", n, ",", m, ") = ", f_km(n, m), " exhaustive ", best[m]);
  }

  int rows = 0;
  auto check_row = [&](const CutRow& row, int n, int m, const std::string& what) {
    ++rows;
    c.expect(!find_cut_counterexample(row, n, m).has_value(), what, " m=", m, ": false cut");
  };
  // each family on its own vertex set
  for (int m = 2; m <= 8; ++m) {
    auto own = [&](PatternKind kind, int size) {
      const Pattern p = make_pattern(kind, size);
      if (kind == PatternKind::kUmbrella && m < 3) return;
      if (kind == PatternKind::kTent && pattern_omega(p) > m) return;
      check_row(cut_for(identity_embedding(p), m), p.vertex_count, m, to_string(kind));
    };
    own(PatternKind::kBipartiteClaw, 0);
    own(PatternKind::kUmbrella, 0);
    for (int s = 2; s <= 4; ++s) own(PatternKind::kNet, s);
    for (int s = 3; s <= 5; ++s) own(PatternKind::kTent, s);
    for (int len = 4; len <= 8; ++len) own(PatternKind::kHole, len);
    for (int size = 2; size <= 8; ++size) {
      std::vector<int> k(size);
      std::iota(k.begin(), k.end(), 0);
      check_row(clique_cut(k, m), size, m, "clique");
      check_row(clique_hole_cut(k, m), size, m, "clique-hole");
    }
  }
  // embeddings in random 8-vertex hosts
  std::vector<Pattern> ps = {make_pattern(PatternKind::kBipartiteClaw), make_pattern(PatternKind::kUmbrella),
                             make_pattern(PatternKind::kNet, 2), make_pattern(PatternKind::kNet, 3),
                             make_pattern(PatternKind::kTent, 3), make_pattern(PatternKind::kTent, 4),
                             make_pattern(PatternKind::kTent, 5), make_pattern(PatternKind::kHole, 4),
                             make_pattern(PatternKind::kHole, 6), make_pattern(PatternKind::kHole, 8),
                             make_pattern(PatternKind::kClique, 4), make_pattern(PatternKind::kClique, 5)};
  SplitMix64 rng(5);
  for (int rep = 0; rep < 40; ++rep) {
    const SmallGraph host = from_mask(8, rng.next() & ((std::uint64_t{1} << 28) - 1));
    const int m = 2 + rep % 4;
    for (const Pattern& p : ps) {
      const auto embs = find_embeddings(host, p, false, 20);
      for (std::size_t i = 0; i < embs.size() && i < 10; i += 9) {
        CutRow row;
        try {
          row = cut_for(embs[i], m);
        } catch (const InputError&) {
          continue;  // umbrella at m = 2, tents containing a clique above m
        }
        check_row(row, 8, m, to_string(p.kind));
      }
    }
  }
  c.summary = "f(K,m) exhaustive n<=7, m<=3; " + std::to_string(rows) + " rows checked on <= 8 vertices";
}

// 9 ------------------------------------------------------------------------

void gosdc_suite(Check& c) {
  SplitMix64 rng(2024);
  std::int64_t cut_total = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const GosdcInstance inst = gen_gosdc(2, 2 + trial % 3, 50, rng);
    const GosdcOracle o = oracle_gosdc(inst);
    for (int method = 0; method <= 7; ++method) {
      GosdcOptions opt;
      opt.families = method_families(method);
      opt.limits.time_limit_seconds = 120.0;
      GosdcResult r;
      try {
        r = solve_gosdc(inst, opt);
      } catch (const std::logic_error& e) {
        c.expect(false, "instance ", trial, " method ", method, ": ", e.what());
        continue;
      }
      if (trial < 3 && method % 3 == 0)
        determinism.compare("gosdc " + std::to_string(trial), r.report, solve_gosdc(inst, opt).report);
      cut_total += r.report.total_cuts();
      c.expect(r.status == MipStatus::kOptimal && r.makespan == o.makespan, "instance ", trial,
               " method ", method, ": ", r.makespan, " vs oracle ", o.makespan);
      try {
        c.expect(check_schedule(inst, r.start) == r.makespan, "instance ", trial, " method ", method,
                 ": simulated makespan differs");
      } catch (const std::logic_error& e) {
        c.expect(false, "instance ", trial, " method ", method, ": ", e.what());
      }
    }
  }
  c.summary = "30 instances x methods 0-7, " + std::to_string(cut_total) + " cuts added";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string karate = BLOCKER_DATA_DIR "/karate.dimacs";
  app.add_option("--karate", karate, "karate club graph in DIMACS format");
  CLI11_PARSE(app, argc, argv);

  const auto start = Clock::now();
  reset_lp_stats();
  std::vector<Check> checks(10);
  const char* names[] = {"BCMBP oracle equivalence",
                         "TU integrality of per-u LPs",
                         "MBCMBP branch-and-cut",
                         "vertex k-cut three-way agreement",
                         "MVVSP d-sweep",
                         "MFBP compact / Benders / swap",
                         "CIP exactness, bounds, preprocessing",
                         "f(K,m) and forbidden-subgraph cut validity",
                         "GOSDC methods 0-7",
                         "engine and LP hygiene"};
  std::vector<std::function<void()>> runs = {
      [&] { bcmbp_suite(checks[0], checks[1]); },
      [] {},
      [&] { mbcmbp_suite(checks[2]); },
      [&] { kcut_suite(checks[3], karate); },
      [&] { mvvsp_suite(checks[4]); },
      [&] { mfbp_suite(checks[5]); },
      [&] { cip_suite(checks[6]); },
      [&] { fsc_suite(checks[7]); },
      [&] { gosdc_suite(checks[8]); },
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto t0 = Clock::now();
    try {
      runs[i]();
    } catch (const std::exception& e) {
      checks[i].expect(false, "exception: ", e.what());
    }
    if (i != 1) std::fprintf(stderr, "check %zu done in %.1f s\n", i + 1, since(t0));
  }

  Check& hygiene = checks[9];
  const LpStats& st = lp_stats();
  const double wall = since(start);
  hygiene.expect(st.max_relative_gap <= 1e-6, "max relative duality gap ", st.max_relative_gap);
  for (const std::string& f : determinism.failures) hygiene.expect(false, "not deterministic: ", f);
  hygiene.expect(wall < 900.0, "wall time ", wall, " s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%lld LP solves, max gap %.2e, %d repeated solves identical, %.0f s total",
                static_cast<long long>(st.solves), st.max_relative_gap, determinism.pairs, wall);
  hygiene.summary = buf;

  int failed = 0;
  for (int i = 0; i < 10; ++i) {
    const Check& c = checks[i];
    std::printf("%s %2d %s: %s\n", c.passed() ? "PASS" : "FAIL", i + 1, names[i], c.summary.c_str());
    for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k)
      std::printf("        %s\n", c.failures[k].c_str());
    if (c.failures.size() > 5) std::printf("        ... %zu more\n", c.failures.size() - 5);
    failed += !c.passed();
  }
  return failed ? 1 : 0;
}
