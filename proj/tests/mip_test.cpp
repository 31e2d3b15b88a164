#include <cmath>
#include <random>

#include "blocker/mip.hpp"
#include "doctest.h"

using namespace blocker;

namespace {

struct Knapsack {
  std::vector<int> w, v;
  int cap = 0;
};

Knapsack random_knapsack(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 20);
  Knapsack k;
  int total = 0;
  for (int i = 0; i < 6; ++i) {
    k.w.push_back(d(rng));
    k.v.push_back(d(rng));
    total += k.w.back();
  }
  k.cap = total / 2;
  return k;
}

MipModel knapsack_model(const Knapsack& k) {
  MipModel m;
  m.lp.set_sense(Sense::kMaximize);
  std::vector<Entry> row;
  for (int i = 0; i < 6; ++i) {
    m.lp.add_column(k.v[i], 0.0, 1.0);
    row.push_back({i, static_cast<double>(k.w[i])});
  }
  m.lp.add_row(row, Relation::kLessEqual, k.cap);
  m.integer.assign(6, 1);
  m.objective_is_integral = true;
  m.log_nodes = true;
  return m;
}

int brute_knapsack(const Knapsack& k) {
  int best = 0;
  for (int mask = 0; mask < 64; ++mask) {
    int w = 0, v = 0;
    for (int i = 0; i < 6; ++i) {
      if (mask >> i & 1) {
        w += k.w[i];
        v += k.v[i];
      }
    }
    if (w <= k.cap) best = std::max(best, v);
  }
  return best;
}

}  // namespace

TEST_CASE("knapsack optimum equals enumeration; bound monotone along paths") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const Knapsack k = random_knapsack(rng);
    const SolveReport r = solve_mip(knapsack_model(k));
    REQUIRE(r.status == MipStatus::kOptimal);
    CHECK(r.objective == doctest::Approx(brute_knapsack(k)));
    CHECK(r.max_duality_gap <= 1e-6);
    std::map<std::int64_t, double> lp_of;
    for (const NodeTrace& t : r.node_log) {
      lp_of[t.id] = t.lp_objective;
      if (t.parent >= 0 && std::isfinite(t.lp_objective) && lp_of.count(t.parent)) {
        CHECK(t.lp_objective <= lp_of[t.parent] + 1e-7);  // max problem
      }
    }
    const SolveReport again = solve_mip(knapsack_model(k));
    CHECK(again.objective == r.objective);
    CHECK(again.nodes == r.nodes);
  }
}

TEST_CASE("integral root needs one node; infeasible model") {
  MipModel m;
  m.lp.add_column(1.0, 0.0, 1.0);
  m.lp.add_row(std::vector<Entry>{{0, 1.0}}, Relation::kGreaterEqual, 1.0);
  m.integer = {1};
  SolveReport r = solve_mip(m);
  CHECK(r.status == MipStatus::kOptimal);
  CHECK(r.nodes == 1);
  CHECK(r.objective == doctest::Approx(1.0));

  MipModel bad;
  bad.lp.add_column(0.0, 0.0, 1.0);
  bad.lp.add_row(std::vector<Entry>{{0, 1.0}}, Relation::kGreaterEqual, 1.0);
  bad.lp.add_row(std::vector<Entry>{{0, 1.0}}, Relation::kLessEqual, 0.0);
  bad.integer = {1};
  CHECK(solve_mip(bad).status == MipStatus::kInfeasible);
}

TEST_CASE("variable dichotomy rule reproduces the default tree") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Knapsack k = random_knapsack(rng);
    const SolveReport base = solve_mip(knapsack_model(k));
    MipModel m = knapsack_model(k);
    BranchRule rule;
    rule.branch = [](const NodeContext& ctx) {
      int best = -1;
      double best_frac = 0;
      for (int j = 0; j < static_cast<int>(ctx.x.size()); ++j) {
        const double f = ctx.x[j] - std::floor(ctx.x[j]);
        const double frac = std::min(f, 1 - f);
        if (frac > 1e-6 && frac > best_frac + 1e-12) {
          best = j;
          best_frac = frac;
        }
      }
      std::vector<Child> out;
      out.push_back({{{best, std::ceil(ctx.x[best]), kInfinity}}, {}, nullptr});
      out.push_back({{{best, -kInfinity, std::floor(ctx.x[best])}}, {}, nullptr});
      return out;
    };
    register_branch_rule(m, rule);
    const SolveReport r = solve_mip(m);
    CHECK(r.objective == base.objective);
    CHECK(r.nodes == base.nodes);
  }
}

TEST_CASE("empty child set from a rule is an engine error") {
  Knapsack k{{3, 3, 3, 3, 3, 3}, {1, 1, 1, 1, 1, 1}, 10};
  MipModel m = knapsack_model(k);
  BranchRule rule;
  rule.branch = [](const NodeContext&) { return std::vector<Child>{}; };
  register_branch_rule(m, rule);
  CHECK_THROWS_AS(solve_mip(m), std::logic_error);
}

TEST_CASE("lazy cuts at integer candidates") {
  // max x0 + x1 + x2 with a hidden constraint x0 + x1 <= 1 supplied lazily.
  MipModel m;
  m.lp.set_sense(Sense::kMaximize);
  for (int j = 0; j < 3; ++j) m.lp.add_column(1.0, 0.0, 1.0);
  m.integer.assign(3, 1);
  m.log_cuts = true;
  CutCallback cb;
  cb.family = "hidden";
  cb.scope = CutScope::kIntegerOnly;
  cb.separate = [](const NodeContext& ctx) {
    std::vector<LpRow> rows;
    if (ctx.x[0] + ctx.x[1] > 1.5) {
      rows.push_back({{{0, 1.0}, {1, 1.0}}, Relation::kLessEqual, 1.0});
    }
    return rows;
  };
  m.cuts.push_back(cb);
  const SolveReport r = solve_mip(m);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK(r.cuts_added.at("hidden") == 1);
  REQUIRE(r.cut_log.size() == 1);
  CHECK(r.cut_log[0].violation >= 1e-6);
  CHECK(r.to_json().find("\"hidden\":1") != std::string::npos);
}

TEST_CASE("node limit returns limit status") {
  std::mt19937_64 rng(4);
  const Knapsack k = random_knapsack(rng);
  MipModel m = knapsack_model(k);
  m.limits.node_limit = 1;
  const SolveReport r = solve_mip(m);
  if (r.nodes > 1) FAIL("node limit ignored");
  CHECK((r.status == MipStatus::kLimit || r.status == MipStatus::kFeasible ||
         r.status == MipStatus::kOptimal));
}
