#include "blocker/oracles.hpp"
#include "blocker/vertex_kcut.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace blocker;

namespace {

UndirectedGraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return UndirectedGraph(n, e);
}

double brute_value(int n, const std::vector<double>& nu, const std::vector<double>& pi,
                   const std::vector<VertexSet>& cover, const PricingRestrictions& r,
                   bool& any) {
  double best = -1e18;
  any = false;
  for (int mask = 1; mask < (1 << n); ++mask) {
    VertexSet s;
    for (int v = 0; v < n; ++v) {
      if (mask >> v & 1) s.push_back(v);
    }
    if (!r.allows(s)) continue;
    any = true;
    double val = 0;
    for (int v : s) val += nu[v];
    for (std::size_t c = 0; c < cover.size(); ++c) {
      bool hit = false;
      for (int v : cover[c]) hit = hit || (mask >> v & 1);
      if (hit) val -= pi[c];
    }
    best = std::max(best, val);
  }
  return best;
}

}  // namespace

TEST_CASE("vertex k-cut examples") {
  std::vector<std::pair<int, int>> star;
  for (int v = 1; v <= 5; ++v) star.emplace_back(0, v);
  const KCutInstance s{UndirectedGraph(6, star), 3};
  for (auto solve : {solve_compact, solve_extended}) {
    const KCutResult r = solve(s, {});
    REQUIRE(r.status == MipStatus::kOptimal);
    CHECK(r.solution.kept() == 5);
    CHECK(r.solution.cut == VertexSet{0});
    CHECK(is_valid_kcut(s, r.solution));
  }
  const KCutInstance c6{cycle(6), 2};
  CHECK(solve_compact(c6).solution.cut.size() == 2);
  CHECK(solve_extended(c6).solution.cut.size() == 2);

  const KCutInstance p5{UndirectedGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}), 2};
  const KCutResult r = solve_extended(p5);
  CHECK(r.solution.kept() == 4);
  REQUIRE(r.solution.cut.size() == 1);
  CHECK(r.solution.cut[0] >= 1);
  CHECK(r.solution.cut[0] <= 3);

  const KCutInstance k4{UndirectedGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), 2};
  CHECK(solve_compact(k4).status == MipStatus::kInfeasible);
  CHECK(solve_extended(k4).status == MipStatus::kInfeasible);
  CHECK(!oracle_vkcut(k4).feasible);
  CHECK_THROWS_AS(solve_compact({cycle(4), 1}), InputError);
}

TEST_CASE("compact, extended and oracle agree") {
  std::mt19937_64 rng(42);
  const double densities[] = {0.25, 0.4, 0.6};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 7 + trial % 4;
    const KCutInstance inst{testutil::random_graph(n, densities[trial % 3], rng), 2 + trial % 3};
    const VkcutOracle o = oracle_vkcut(inst);
    const KCutResult c = solve_compact(inst);
    const KCutResult e = solve_extended(inst);
    if (!o.feasible) {
      CHECK(c.status == MipStatus::kInfeasible);
      CHECK(e.status == MipStatus::kInfeasible);
      continue;
    }
    REQUIRE(c.status == MipStatus::kOptimal);
    REQUIRE(e.status == MipStatus::kOptimal);
    CHECK(c.solution.kept() == o.kept);
    CHECK(e.solution.kept() == o.kept);
    CHECK(is_valid_kcut(inst, c.solution));
    CHECK(is_valid_kcut(inst, e.solution));
    CHECK(e.report.max_duality_gap <= 1e-6);
  }
}

TEST_CASE("compact with symmetry breaking gives the same optimum") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const KCutInstance inst{testutil::random_graph(8, 0.35, rng), 3};
    KCutOptions ordered;
    ordered.symmetry_breaking = true;
    const KCutResult a = solve_compact(inst);
    const KCutResult b = solve_compact(inst, ordered);
    CHECK(a.status == b.status);
    if (a.status == MipStatus::kOptimal) CHECK(a.solution.kept() == b.solution.kept());
  }
}

TEST_CASE("pricing min cut equals subset enumeration") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dual(0.0, 1.5);
  std::uniform_real_distribution<double> clique(0.0, 0.6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 6 + trial % 5;
    const UndirectedGraph g = testutil::random_graph(n, 0.35, rng);
    const auto cover = build_clique_cover(g, trial % 2 ? CoverMode::kGreedyMaximal : CoverMode::kEdges);
    std::vector<double> nu(n), pi(cover.size());
    for (double& x : nu) x = 1.0 - dual(rng);
    for (double& x : pi) x = clique(rng);
    PricingRestrictions r;
    if (trial % 3 == 1) {
      r.excluded.assign(n, 0);
      r.excluded[trial % n] = 1;
      r.same.emplace_back(0, n - 1);
    }
    if (trial % 3 == 2) r.differ = {{0, 1}, {1, 2}, {2, 3}};
    bool any = false;
    const double expect = brute_value(n, nu, pi, cover, r, any);
    const auto got = max_weight_subset(n, nu, pi, cover, r);
    INFO("trial " << trial);
    REQUIRE(got.has_value() == any);
    if (!any) continue;
    CHECK(got->value == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.allows(got->subset));
    CHECK(!got->subset.empty());
  }
}

TEST_CASE("pricing trivial cases") {
  const KCutInstance inst{UndirectedGraph(4, {{0, 1}, {1, 2}}), 2};
  const auto cover = build_clique_cover(inst.g);
  DualPrices d{{0.0, 0.5, 2.0, 0.2}, std::vector<double>(cover.size(), 0.0), 0.0};
  auto got = price_subset(inst, d, cover);
  REQUIRE(got.has_value());
  CHECK(got->subset == VertexSet{0, 1, 3});
  // nu <= 0 everywhere: a single vertex is best.
  DualPrices neg{{1.0, 1.5, 2.0, 1.2}, {0.1, 0.1}, -5.0};
  got = price_subset(inst, neg, cover);
  REQUIRE(got.has_value());
  CHECK(got->subset == VertexSet{0});
  CHECK(got->value == doctest::Approx(0.0 - 0.1 + 5.0));
  neg.gamma = 0.0;
  CHECK(!price_subset(inst, neg, cover).has_value());
}

TEST_CASE("clique cover and two-level branching") {
  const UndirectedGraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(build_clique_cover(tri, CoverMode::kGreedyMaximal) == std::vector<VertexSet>{{0, 1, 2}});
  CHECK(build_clique_cover(tri).size() == 3);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const UndirectedGraph g = testutil::random_graph(10, 0.4, rng);
    const auto cover = build_clique_cover(g, CoverMode::kGreedyMaximal);
    for (const auto& [u, v] : g.edges()) {
      bool hit = false;
      for (const auto& c : cover) {
        hit = hit || (std::count(c.begin(), c.end(), u) && std::count(c.begin(), c.end(), v));
      }
      CHECK(hit);
    }
    for (const auto& c : cover) {
      for (std::size_t a = 0; a < c.size(); ++a) {
        for (std::size_t b = a + 1; b < c.size(); ++b) CHECK(g.adjacent(c[a], c[b]));
      }
    }
  }
  std::vector<VertexSet> cols{{0}, {1}, {0, 1}, {2}};
  std::vector<double> integral{0, 0, 1, 1};
  CHECK(two_level_branch(3, cols, integral).level == 0);
  std::vector<double> half{0, 0, 0.5, 1};
  const BranchDecision d = two_level_branch(3, cols, half);
  CHECK(d.level == 1);
  CHECK(d.u == 0);
  std::vector<double> pairs{0.5, 0.5, 0.5, 1};
  const BranchDecision p = two_level_branch(3, cols, pairs);
  CHECK(p.level == 2);
  CHECK(p.u == 0);
  CHECK(p.v == 1);
}
