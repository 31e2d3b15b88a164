#include <doctest.h>

#include "blocker/flow_blocker.hpp"
#include "blocker/generators.hpp"
#include "blocker/oracles.hpp"

using namespace blocker;

namespace {

Arc arc(int u, int v, std::int64_t cap, std::int64_t cost) {
  Arc a;
  a.tail = u;
  a.head = v;
  a.capacity = cap;
  a.cost = cost;
  return a;
}

double lhs(const LpRow& row, const std::vector<double>& x) {
  double total = 0.0;
  for (const Entry& e : row.entries) total += e.value * x[e.index];
  return total;
}

}  // namespace

TEST_CASE("mfbp small examples") {
  MfbpInstance single{Digraph(2, {arc(0, 1, 5, 3)}), 0, 1, 4};
  for (auto solve : {solve_mfbp_compact, solve_mfbp_benders}) {
    const MfbpResult r = solve(single, {});
    CHECK(r.status == MipStatus::kOptimal);
    CHECK(r.cost == 3);
    CHECK(r.blocked == std::vector<int>{0});
  }
  CHECK(oracle_mfbp(single).cost == 3);
  single.phi = 5;
  CHECK(solve_mfbp_compact(single).cost == 0);
  const MfbpResult free = solve_mfbp_benders(single);
  CHECK(free.cost == 0);
  CHECK(free.report.nodes == 1);

  MfbpInstance parallel{Digraph(2, {arc(0, 1, 2, 1), arc(0, 1, 3, 1)}), 0, 1, 2};
  for (auto solve : {solve_mfbp_compact, solve_mfbp_benders}) {
    const MfbpResult r = solve(parallel, {});
    CHECK(r.cost == 1);
    CHECK(r.blocked == std::vector<int>{1});
  }
  const MfipOracle mfip = oracle_mfip(swap_to_mfip(parallel));
  CHECK(blocking_cost(parallel, blocker_from_interdiction(mfip, parallel)) == 1);

  MfbpInstance bad = single;
  bad.phi = -1;
  CHECK_THROWS_AS(solve_mfbp_compact(bad), InputError);
}

TEST_CASE("benders and target-flow separation") {
  MfbpInstance inst{Digraph(4, {arc(0, 1, 3, 1), arc(1, 3, 3, 1), arc(0, 2, 2, 1), arc(2, 3, 4, 1)}),
                    0, 3, 2};
  const std::vector<double> zero(4, 0.0);
  BendersSeparation sep = separate_benders(inst, zero);
  REQUIRE(sep.status == BendersStatus::kCut);
  CHECK(sep.cut->value == doctest::Approx(5.0));
  CHECK(separate_target_flow(inst, zero, sep.cut->y));
  std::vector<double> one_arc(4, 0.0);
  one_arc[sep.cut->y.support().front()] = 1.0;
  CHECK_FALSE(separate_target_flow(inst, one_arc, sep.cut->y));
  CHECK(separate_benders(inst, std::vector<double>(4, 1.0)).status == BendersStatus::kNoCut);
  inst.phi = 5;
  CHECK(separate_benders(inst, zero).status == BendersStatus::kBlockerFree);

  // a cycle through s must not yield a cut
  MfbpInstance loop{Digraph(3, {arc(0, 1, 9, 1), arc(1, 0, 9, 1), arc(1, 2, 1, 1)}), 0, 2, 0};
  CHECK(separate_benders(loop, std::vector<double>{0, 0, 1}).status == BendersStatus::kNoCut);
}

TEST_CASE("mfbp random suite: compact = benders = oracle, swap theorem") {
  SplitMix64 rng(99);
  int nontrivial = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const MfbpInstance inst = gen_mfbp(4 + trial % 5, 6 + trial % 11, rng);
    MfbpOptions opt;
    opt.log_cuts = true;
    const MfbpResult c = solve_mfbp_compact(inst, opt);
    const MfbpResult b = solve_mfbp_benders(inst, opt);
    const MfbpOracle o = oracle_mfbp(inst);
    REQUIRE(c.status == MipStatus::kOptimal);
    REQUIRE(b.status == MipStatus::kOptimal);
    CHECK(c.cost == o.cost);
    CHECK(b.cost == o.cost);
    CHECK(residual_max_flow(inst, c.blocked) <= inst.phi);
    CHECK(residual_max_flow(inst, b.blocked) <= inst.phi);
    if (o.cost > 0) ++nontrivial;

    const MfipOracle mfip = oracle_mfip(swap_to_mfip(inst));
    const std::vector<int> from = blocker_from_interdiction(mfip, inst);
    CHECK(blocking_cost(inst, from) == o.cost);
    CHECK(residual_max_flow(inst, from) <= inst.phi);

    // every Benders / target-flow cut: violated by its candidate, valid for
    // every feasible blocker
    const int m = inst.g.num_arcs();
    std::vector<std::vector<double>> feasible;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> blocked;
      for (int a = 0; a < m; ++a) {
        if (mask >> a & 1u) blocked.push_back(a);
      }
      if (residual_max_flow(inst, blocked) > inst.phi) continue;
      std::vector<double> x(m, 0.0);
      for (int a : blocked) x[a] = 1.0;
      feasible.push_back(std::move(x));
    }
    for (const CutRecord& cut : b.report.cut_log) {
      CHECK(cut.violation >= 1e-6);
      for (const auto& x : feasible) CHECK(lhs(cut.row, x) >= cut.row.rhs - 1e-9);
    }
  }
  CHECK(nontrivial > 20);
}

TEST_CASE("compact optimum never has omega and x both on") {
  SplitMix64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const MfbpInstance inst = gen_mfbp(6, 12, rng);
    const MfbpResult r = solve_mfbp_compact(inst);
    if (r.preprocessed) continue;
    const int m = inst.g.num_arcs();
    for (int a = 0; a < m; ++a) {
      CHECK_FALSE((r.report.incumbent[a] > 0.5 && r.report.incumbent[m + a] > 0.5));
    }
  }
}
