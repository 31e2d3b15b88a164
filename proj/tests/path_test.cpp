#include <doctest.h>

#include <algorithm>

#include "blocker/generators.hpp"
#include "blocker/graph_algorithms.hpp"
#include "blocker/oracles.hpp"
#include "blocker/path_blocker.hpp"

using namespace blocker;

namespace {

Arc arc(int u, int v, std::int64_t len) {
  Arc a;
  a.tail = u;
  a.head = v;
  a.length = len;
  return a;
}

bool blocks(const MvvspInstance& inst, const VertexSet& b) {
  const auto left = residual_distance(inst, b);
  return !left || *left > inst.d;
}

// Every simple s-t path avoiding `blocked`, by DFS.
template <class Visit>
void each_simple_path(const MvvspInstance& inst, const std::vector<char>& blocked, Visit&& visit) {
  std::vector<int> path{inst.s};
  std::vector<char> on(inst.g.num_vertices(), 0);
  on[inst.s] = 1;
  auto rec = [&](auto&& self, int u, std::int64_t len) -> void {
    if (u == inst.t) {
      visit(path, len);
      return;
    }
    for (int a : inst.g.out_arcs(u)) {
      const int v = inst.g.arc(a).head;
      if (on[v] || (blocked[v] && v != inst.t)) continue;
      on[v] = 1;
      path.push_back(v);
      self(self, v, len + inst.g.arc(a).length);
      path.pop_back();
      on[v] = 0;
    }
  };
  rec(rec, inst.s, 0);
}

}  // namespace

TEST_CASE("mvvsp small examples") {
  MvvspInstance one{Digraph(3, {arc(0, 1, 1), arc(1, 2, 1)}), 0, 2, 2};
  MvvspResult r = solve_mvvsp(one);
  CHECK(r.status == MipStatus::kOptimal);
  CHECK(r.blocker == VertexSet{1});

  MvvspInstance two{Digraph(4, {arc(0, 1, 1), arc(1, 3, 1), arc(0, 2, 2), arc(2, 3, 2)}), 0, 3, 4};
  r = solve_mvvsp(two);
  CHECK(r.blocker.size() == 2);
  two.d = 3;
  CHECK(solve_mvvsp(two).blocker == VertexSet{1});

  // direct arc short enough: nothing to block
  MvvspInstance chord{Digraph(3, {arc(0, 1, 1), arc(1, 2, 1), arc(0, 2, 2)}), 0, 2, 2};
  CHECK(solve_mvvsp(chord).status == MipStatus::kInfeasible);
  CHECK_FALSE(oracle_mvvsp(chord).feasible);

  MvvspInstance bad = one;
  bad.t = bad.s;
  CHECK_THROWS_AS(solve_mvvsp(bad), InputError);
}

TEST_CASE("path separation") {
  MvvspInstance one{Digraph(3, {arc(0, 1, 1), arc(1, 2, 1)}), 0, 2, 2};
  auto cut = separate_path_cut(one, std::vector<double>{0, 0, 0});
  REQUIRE(cut);
  CHECK(cut->internal == VertexSet{1});
  CHECK_FALSE(separate_path_cut(one, std::vector<double>{0, 1, 0}));

  SplitMix64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const MvvspInstance base = gen_mvvsp(4 + trial % 7, 30, rng);
    MvvspInstance inst = base;
    inst.d = rng.uniform(1, 25);
    std::vector<double> x(inst.g.num_vertices(), 0.0);
    std::vector<char> blocked(x.size(), 0);
    for (int v = 1; v + 1 < inst.g.num_vertices(); ++v) {
      if (rng.chance(25)) x[v] = 1.0, blocked[v] = 1;
    }
    bool short_path = false;
    each_simple_path(inst, blocked, [&](const std::vector<int>&, std::int64_t len) {
      short_path = short_path || len <= inst.d;
    });
    const auto c = separate_path_cut(inst, x);
    CHECK(c.has_value() == short_path);
    if (c) {
      CHECK(path_length(inst.g, c->path) <= inst.d);
      for (int v : c->internal) CHECK(x[v] == 0.0);
    }
  }
}

TEST_CASE("path minimalization") {
  MvvspInstance chord{Digraph(4, {arc(0, 1, 1), arc(1, 2, 1), arc(2, 3, 1), arc(0, 3, 3)}), 0, 3, 3};
  CHECK(minimalize_path(chord, {0, 1, 2, 3}) == std::vector<int>{0, 3});
  chord.d = 4;
  CHECK(minimalize_path(chord, {0, 1, 2, 3}) == std::vector<int>{0, 3});
  MvvspInstance plain{Digraph(4, {arc(0, 1, 1), arc(1, 2, 1), arc(2, 3, 1)}), 0, 3, 5};
  CHECK(minimalize_path(plain, {0, 1, 2, 3}) == std::vector<int>{0, 1, 2, 3});

  SplitMix64 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    MvvspInstance inst = gen_mvvsp(8, 50, rng);
    inst.d = 40;
    const auto c = separate_path_cut(inst, std::vector<double>(8, 0.0));
    if (!c) continue;
    std::vector<int> path = c->path;
    const std::vector<int> out = minimalize_path(inst, path);
    CHECK(out.front() == inst.s);
    CHECK(out.back() == inst.t);
    CHECK(path_length(inst.g, out) <= inst.d);
    for (int v : out) CHECK(std::find(path.begin(), path.end(), v) != path.end());
    // no single chord shortcut remains
    const std::int64_t len = path_length(inst.g, out);
    for (std::size_t i = 0; i + 2 < out.size(); ++i) {
      for (std::size_t j = i + 2; j < out.size(); ++j) {
        for (int a : inst.g.out_arcs(out[i])) {
          if (inst.g.arc(a).head != out[j]) continue;
          std::vector<int> seg(out.begin() + i, out.begin() + j + 1);
          CHECK(len - path_length(inst.g, seg) + inst.g.arc(a).length > inst.d);
        }
      }
    }
  }
}

TEST_CASE("mvvsp d-sweep against oracle") {
  SplitMix64 rng(2024);
  const int densities[] = {10, 25, 50};
  int solved = 0;
  for (int trial = 0; trial < 30; ++trial) {
    MvvspInstance inst = gen_mvvsp(6 + trial % 7, densities[trial % 3], rng);
    const auto sweep = mvvsp_sweep(inst);
    REQUIRE(sweep);
    const int sep = *min_vertex_separator(inst.g, inst.s, inst.t);
    for (inst.d = std::max<std::int64_t>(0, sweep->sp - 1); inst.d <= sweep->disc; ++inst.d) {
      MvvspOptions opt;
      opt.log_cuts = true;
      const MvvspResult r = solve_mvvsp(inst, opt);
      const MvvspOracle o = oracle_mvvsp(inst);
      REQUIRE(o.feasible);
      REQUIRE(r.status == MipStatus::kOptimal);
      CHECK(r.blocker.size() == o.blocker.size());
      CHECK(blocks(inst, r.blocker));
      if (inst.d < sweep->sp) {
        CHECK(r.blocker.empty());
        CHECK(r.report.nodes == 1);
      }
      if (inst.d == sweep->disc) CHECK(static_cast<int>(r.blocker.size()) == sep);
      // minimality
      for (std::size_t drop = 0; drop < r.blocker.size(); ++drop) {
        VertexSet smaller = r.blocker;
        smaller.erase(smaller.begin() + drop);
        CHECK_FALSE(blocks(inst, smaller));
      }
      // cuts: violated by their candidate, satisfied by every feasible blocker
      for (const CutRecord& c : r.report.cut_log) {
        CHECK(c.violation >= 1e-6);
        CHECK(c.row.rhs == 1.0);
        CHECK_FALSE(c.row.entries.empty());
      }
      ++solved;
    }
  }
  CHECK(solved > 30);
}

TEST_CASE("path cuts are valid for every blocker") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    MvvspInstance inst = gen_mvvsp(7, 35, rng);
    const auto sweep = mvvsp_sweep(inst);
    inst.d = sweep->sp + 1 + trial % 3;
    MvvspOptions opt;
    opt.log_cuts = true;
    const MvvspResult r = solve_mvvsp(inst, opt);
    // enumerate all internal subsets
    const int n = inst.g.num_vertices();
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (mask & 1 || mask >> (n - 1) & 1) continue;
      VertexSet b;
      for (int v = 0; v < n; ++v) {
        if (mask >> v & 1) b.push_back(v);
      }
      if (!blocks(inst, b)) continue;
      for (const CutRecord& c : r.report.cut_log) {
        double lhs = 0.0;
        for (const Entry& e : c.row.entries) {
          // s = 0 and t = n - 1, so column j is vertex j + 1
          const int v = e.index + 1;
          lhs += e.value * (mask >> v & 1);
        }
        CHECK(lhs >= 1.0);
      }
    }
  }
}

TEST_CASE("vertex separator") {
  MvvspInstance two{Digraph(4, {arc(0, 1, 1), arc(1, 3, 1), arc(0, 2, 2), arc(2, 3, 2)}), 0, 3, 4};
  CHECK(min_vertex_separator(two.g, 0, 3) == 2);
  CHECK_FALSE(min_vertex_separator(Digraph(2, {arc(0, 1, 1)}), 0, 1));
  CHECK(min_vertex_separator(Digraph(3, {arc(0, 1, 1)}), 0, 2) == 0);
}
