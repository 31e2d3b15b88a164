#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <random>

#include "blocker/forbidden_subgraphs.hpp"
#include "blocker/generators.hpp"
#include "blocker/gosdc.hpp"
#include "blocker/oracles.hpp"

using namespace blocker;

namespace {

// Interval iff no induced hole, bipartite claw, umbrella, n-net or n-tent.
bool interval_by_patterns(const SmallGraph& g) {
  std::vector<Pattern> ps;
  for (int len = 4; len <= g.n; ++len) ps.push_back(make_pattern(PatternKind::kHole, len));
  ps.push_back(make_pattern(PatternKind::kBipartiteClaw));
  ps.push_back(make_pattern(PatternKind::kUmbrella));
  for (int s = 2; s + 4 <= g.n; ++s) ps.push_back(make_pattern(PatternKind::kNet, s));
  for (int s = 3; s + 3 <= g.n; ++s) ps.push_back(make_pattern(PatternKind::kTent, s));
  for (const Pattern& p : ps)
    if (p.vertex_count <= g.n && !find_embeddings(g, p, true, 1).empty()) return false;
  return true;
}

SmallGraph from_mask(int n, std::uint64_t mask) {
  SmallGraph g(n);
  int e = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v, ++e)
      if (mask >> e & 1u) g.add_edge(u, v);
  return g;
}

SmallGraph pattern_graph(const Pattern& p) {
  SmallGraph g(p.vertex_count);
  for (auto [u, v] : p.edges) g.add_edge(u, v);
  return g;
}

// Clique number of every graph on n labeled vertices, indexed by edge mask.
const std::vector<std::uint8_t>& omega_table(int n) {
  static std::vector<std::vector<std::uint8_t>> cache(9);
  auto& t = cache[n];
  if (t.empty()) {
    int pairs = n * (n - 1) / 2;
    t.resize(std::size_t{1} << pairs);
    for (std::uint64_t mask = 0; mask < t.size(); ++mask)
      t[mask] = static_cast<std::uint8_t>(clique_number(from_mask(n, mask)));
  }
  return t;
}

// Literal check over all 2^21 graphs on 7 vertices: every graph violating
// the row must have a clique above m or an induced forbidden pattern.
int literal_false_cuts(const CutRow& row, int m) {
  const int n = 7;
  const auto& omega = omega_table(n);
  std::vector<std::pair<int, int>> bits;  // (edge index, coef)
  for (const EdgeCoef& t : row.terms) {
    int e = 0;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v, ++e)
        if (u == t.u && v == t.v) bits.push_back({e, t.coef});
  }
  int bad = 0;
  for (std::uint64_t mask = 0; mask < omega.size(); ++mask) {
    int lhs = 0;
    for (auto [e, c] : bits)
      if (mask >> e & 1u) lhs += c;
    if (lhs <= row.rhs || omega[mask] > m) continue;
    if (interval_by_patterns(from_mask(n, mask))) ++bad;
  }
  return bad;
}

double lhs_on(const CutRow& row, const SmallGraph& g) {
  return row.lhs([&](int u, int v) { return g.has(u, v) ? 1.0 : 0.0; });
}

Embedding embed(PatternKind kind, int size = 0) { return identity_embedding(make_pattern(kind, size)); }

// Printed m = 3 umbrella row: around edges without (4,7) plus (2,6),
// (2,5), (3,6), rhs 5 (labels shifted to 0-based).
CutRow printed_umbrella_m3() {
  CutRow r;
  r.rhs = 5;
  for (auto [a, b] : std::vector<std::pair<int, int>>{
           {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {1, 6}, {2, 6}, {2, 5}, {3, 6}})
    r.terms.push_back({a - 1, b - 1, 1});
  return r;
}

}  // namespace

TEST_CASE("interval recognition matches the forbidden pattern list") {
  for (int n = 1; n <= 6; ++n) {
    int pairs = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
      SmallGraph g = from_mask(n, mask);
      REQUIRE(is_interval(g) == interval_by_patterns(g));
    }
  }
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 4000; ++rep) {
    int n = 7 + rep % 2;
    SmallGraph g = from_mask(n, rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1));
    REQUIRE(is_interval(g) == interval_by_patterns(g));
  }
  // every pattern is a minimal non-interval graph
  std::vector<Pattern> ps = {make_pattern(PatternKind::kBipartiteClaw),
                             make_pattern(PatternKind::kUmbrella)};
  for (int s = 2; s <= 4; ++s) ps.push_back(make_pattern(PatternKind::kNet, s));
  for (int s = 3; s <= 5; ++s) ps.push_back(make_pattern(PatternKind::kTent, s));
  for (int s = 4; s <= 8; ++s) ps.push_back(make_pattern(PatternKind::kHole, s));
  for (const Pattern& p : ps) {
    SmallGraph g = pattern_graph(p);
    CHECK_FALSE(is_interval(g));
    for (int drop = 0; drop < p.vertex_count; ++drop) {
      std::vector<int> keep;
      for (int v = 0; v < p.vertex_count; ++v)
        if (v != drop) keep.push_back(v);
      SmallGraph h(p.vertex_count - 1);
      for (int i = 0; i < h.n; ++i)
        for (int j = i + 1; j < h.n; ++j)
          if (g.has(keep[i], keep[j])) h.add_edge(i, j);
      CHECK(is_interval(h));
    }
  }
}

TEST_CASE("f_km") {
  for (int m = 2; m <= 6; ++m) CHECK(f_km(m + 1, m) == 1);
  CHECK(f_km(6, 2) == 6);
  CHECK(f_km(3, 3) == 0);
  CHECK(f_km(1, 1) == 0);
  CHECK_THROWS_AS(f_km(0, 2), InputError);
  // exhaustive: fewest deletions from K_n leaving no clique of m + 1
  for (int n = 1; n <= 7; ++n) {
    const auto& omega = omega_table(n);
    int pairs = n * (n - 1) / 2;
    for (int m = 1; m <= 3; ++m) {
      int best = pairs;
      for (std::uint64_t mask = 0; mask < omega.size(); ++mask)
        if (omega[mask] <= m) best = std::min(best, pairs - std::popcount(mask));
      CHECK_MESSAGE(f_km(n, m) == best, "n=" << n << " m=" << m);
    }
  }
  CHECK(clique_hole_alpha(3, 2) == 0);   // parts 2,1
  CHECK(clique_hole_alpha(6, 2) == 2);   // parts 3,3
  CHECK(clique_hole_alpha(7, 3) == 2);   // parts 3,2,2
  CHECK(clique_hole_alpha(2, 3) == 0);
}

TEST_CASE("cut examples") {
  Embedding claw = embed(PatternKind::kBipartiteClaw);
  SmallGraph bc = pattern_graph(make_pattern(PatternKind::kBipartiteClaw));
  CutRow c2 = bipartite_claw_cut(claw, 2);
  CHECK(c2.rhs == 5);
  CHECK(lhs_on(c2, bc) == 6);
  CutRow c3 = bipartite_claw_cut(claw, 3);
  CHECK(c3.rhs == 10);
  CHECK(c3.terms.size() == 18);  // 6 + 6 + 3 + 3; the three leaf pairs are free
  SmallGraph closed = bc;
  closed.add_edge(0, 4);
  closed.add_edge(0, 5);
  closed.add_edge(0, 6);
  CHECK(lhs_on(c3, closed) == 6);
  CHECK_THROWS_AS(bipartite_claw_cut(embed(PatternKind::kUmbrella), 3), InputError);
  CHECK_THROWS_AS(bipartite_claw_cut(claw, 1), InputError);

  Embedding umb = embed(PatternKind::kUmbrella);
  SmallGraph u = pattern_graph(make_pattern(PatternKind::kUmbrella));
  CutRow u3 = umbrella_cut(umb, 3);
  CHECK(u3.rhs == 9);
  CHECK(lhs_on(u3, u) == 10);
  SmallGraph ut = u;
  ut.add_edge(0, 6);  // (1,7) closes a triangle
  CHECK(lhs_on(u3, ut) == 9);
  CutRow u4 = umbrella_cut(umb, 4);
  CHECK(u4.rhs == 6);
  CHECK(lhs_on(u4, u) == 7);
  CHECK(lhs_on(printed_umbrella_m3(), u) == 6);
  CHECK_THROWS_AS(umbrella_cut(umb, 2), InputError);

  // 2-net: the free additions (a,c), (a,d), (c,d) leave the row violated
  // (each closes a hole); any other addition satisfies it.
  Embedding net = embed(PatternKind::kNet, 2);
  SmallGraph g2 = pattern_graph(make_pattern(PatternKind::kNet, 2));
  CutRow nr = nnet_cut(net);
  CHECK(nr.rhs == 5);
  CHECK(lhs_on(nr, g2) == 6);
  SmallGraph with_ac = g2;
  with_ac.add_edge(0, 4);
  CHECK(lhs_on(nr, with_ac) == 6);
  CHECK_FALSE(is_interval(with_ac));
  SmallGraph with_a1 = g2;
  with_a1.add_edge(0, 2);
  CHECK(lhs_on(nr, with_a1) == 5);
  // 4-net: (b,2), (b,3) are not counted
  CHECK(nnet_cut(embed(PatternKind::kNet, 4)).rhs == 7);

  CHECK_THROWS_AS(ntent_cut(embed(PatternKind::kTent, 3), 2), InputError);
  CHECK_THROWS_AS(ntent_cut(embed(PatternKind::kTent, 4), 3), InputError);
  CHECK(ntent_cut(embed(PatternKind::kTent, 3), 3).rhs == 6);
  CHECK(ntent_cut(embed(PatternKind::kTent, 5), 4).rhs == 11);

  // holes
  SmallGraph c4 = pattern_graph(make_pattern(PatternKind::kHole, 4));
  CutRow h4 = hole_cut(embed(PatternKind::kHole, 4), 3);
  CHECK(lhs_on(h4, c4) == 4);
  CHECK(h4.rhs == 3);
  SmallGraph c5 = pattern_graph(make_pattern(PatternKind::kHole, 5));
  c5.add_edge(0, 2);
  c5.add_edge(0, 3);
  CutRow h5 = hole_cut(embed(PatternKind::kHole, 5), 3);
  CHECK(lhs_on(h5, c5) == 8);
  CHECK(h5.rhs == 8);
  CHECK(hole_cut(embed(PatternKind::kHole, 6), 2).rhs == 5);
  CHECK_THROWS_AS(make_pattern(PatternKind::kHole, 3), InputError);

  // cliques
  std::vector<int> tri = {4, 1, 7};
  CutRow ct = clique_cut(tri, 2);
  CHECK(ct.rhs == 2);
  CHECK(ct.terms.size() == 3);
  for (int m = 2; m <= 5; ++m) {
    std::vector<int> k(m + 1);
    std::iota(k.begin(), k.end(), 0);
    CHECK(clique_cut(k, m).rhs == (m + 1) * m / 2 - 1);
    CHECK(clique_hole_cut(k, m).rhs == (m + 1) * m / 2 - 1);
  }
  std::vector<int> dup = {1, 1};
  CHECK_THROWS_AS(clique_cut(dup, 2), InputError);
}

TEST_CASE("printed m = 3 umbrella row cuts off a fan") {
  // vertex 1 sees the path 2-3-4-5-6: interval, clique number 3
  SmallGraph fan(7);
  for (int v = 1; v <= 5; ++v) fan.add_edge(0, v);
  for (int v = 1; v < 5; ++v) fan.add_edge(v, v + 1);
  CHECK(is_m_clique_free_interval(fan, 3));
  CHECK(lhs_on(printed_umbrella_m3(), fan) == 6);
  CHECK(find_cut_counterexample(printed_umbrella_m3(), 7, 3).has_value());
  CHECK(literal_false_cuts(printed_umbrella_m3(), 3) > 0);
}

TEST_CASE("every family is valid and tight on its own vertices") {
  struct Case {
    CutRow row;
    int n;
    int m;
    bool tight;
  };
  std::vector<Case> cases;
  for (int m = 2; m <= 8; ++m) {
    cases.push_back({bipartite_claw_cut(embed(PatternKind::kBipartiteClaw), m), 7, m, true});
    if (m >= 3) cases.push_back({umbrella_cut(embed(PatternKind::kUmbrella), m), 7, m, true});
    for (int s = 2; s <= 4; ++s) cases.push_back({nnet_cut(embed(PatternKind::kNet, s)), s + 4, m, true});
    for (int s = 3; s <= 5; ++s) {
      if (clique_number(pattern_graph(make_pattern(PatternKind::kTent, s))) > m) continue;
      cases.push_back({ntent_cut(embed(PatternKind::kTent, s), m), s + 3, m, true});
    }
    for (int len = 4; len <= 8; ++len) cases.push_back({hole_cut(embed(PatternKind::kHole, len), m), len, m, true});
    for (int size = 2; size <= 8; ++size) {
      std::vector<int> k(size);
      std::iota(k.begin(), k.end(), 0);
      // the clique rows are valid; only some are tight
      cases.push_back({clique_cut(k, m), size, m, m == 2 || size <= m + 1});
      cases.push_back({clique_hole_cut(k, m), size, m, size <= m + 1 || (m == 2 && size <= 4)});
    }
  }
  for (const Case& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    CAPTURE(c.row.rhs);
    CHECK_FALSE(find_cut_counterexample(c.row, c.n, c.m).has_value());
    if (c.tight) {
      CutRow lower = c.row;
      lower.rhs -= 1;
      CHECK(find_cut_counterexample(lower, c.n, c.m).has_value());
    }
  }
}

TEST_CASE("literal exhaustive validity on 7 vertices") {
  std::vector<std::pair<CutRow, int>> rows = {
      {bipartite_claw_cut(embed(PatternKind::kBipartiteClaw), 2), 2},
      {bipartite_claw_cut(embed(PatternKind::kBipartiteClaw), 3), 7},
      {umbrella_cut(embed(PatternKind::kUmbrella), 3), 3},
      {umbrella_cut(embed(PatternKind::kUmbrella), 4), 7},
      {nnet_cut(embed(PatternKind::kNet, 3)), 7},
      {ntent_cut(embed(PatternKind::kTent, 4), 4), 7},
      {hole_cut(embed(PatternKind::kHole, 7), 2), 2},
      {hole_cut(embed(PatternKind::kHole, 7), 3), 7},
  };
  std::vector<int> k7(7);
  std::iota(k7.begin(), k7.end(), 0);
  for (int m = 2; m <= 6; ++m) {
    rows.push_back({clique_cut(k7, m), m});
    rows.push_back({clique_hole_cut(k7, m), m});
  }
  for (const auto& [row, m] : rows) {
    CAPTURE(m);
    CHECK(literal_false_cuts(row, m) == 0);
  }
}

TEST_CASE("cuts from embeddings in 8-vertex hosts") {
  std::mt19937_64 rng(5);
  int checked = 0;
  std::vector<Pattern> ps = {make_pattern(PatternKind::kBipartiteClaw),
                             make_pattern(PatternKind::kUmbrella),
                             make_pattern(PatternKind::kNet, 2), make_pattern(PatternKind::kNet, 3),
                             make_pattern(PatternKind::kTent, 3), make_pattern(PatternKind::kTent, 4),
                             make_pattern(PatternKind::kHole, 5), make_pattern(PatternKind::kClique, 4)};
  for (int rep = 0; rep < 60; ++rep) {
    SmallGraph host = from_mask(8, rng() & ((std::uint64_t{1} << 28) - 1));
    int m = 2 + rep % 4;
    for (const Pattern& p : ps) {
      auto embs = find_embeddings(host, p, false, 50);
      for (std::size_t i = 0; i < embs.size() && i < 14; i += 7) {
        const Embedding& e = embs[i];
        for (auto [a, b] : p.edges) REQUIRE(host.has(e.vertices[a], e.vertices[b]));
        CutRow row;
        try {
          row = cut_for(e, m);
        } catch (const InputError&) {
          continue;  // umbrella at m = 2, tents dominated by cliques
        }
        for (const EdgeCoef& t : row.terms) {
          REQUIRE(t.u < t.v);
          REQUIRE(std::find(e.vertices.begin(), e.vertices.end(), t.u) != e.vertices.end());
          REQUIRE(std::find(e.vertices.begin(), e.vertices.end(), t.v) != e.vertices.end());
        }
        CHECK_FALSE(find_cut_counterexample(row, 8, m).has_value());
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("embedding search") {
  SmallGraph c5 = pattern_graph(make_pattern(PatternKind::kHole, 5));
  CHECK(find_embeddings(c5, make_pattern(PatternKind::kHole, 5), true).size() == 1);
  SmallGraph k4 = pattern_graph(make_pattern(PatternKind::kClique, 4));
  CHECK(find_embeddings(k4, make_pattern(PatternKind::kHole, 4), true).empty());
  CHECK(find_embeddings(k4, make_pattern(PatternKind::kHole, 4), false).size() == 3);
  CHECK(find_embeddings(k4, make_pattern(PatternKind::kClique, 3), false).size() == 4);
  SmallGraph bc = pattern_graph(make_pattern(PatternKind::kBipartiteClaw));
  // the three branches permute freely
  CHECK(find_embeddings(bc, make_pattern(PatternKind::kBipartiteClaw), true).size() == 6);
  CHECK(find_embeddings(bc, make_pattern(PatternKind::kBipartiteClaw), false, 2).size() == 2);
}

TEST_CASE("gosdc examples") {
  GosdcInstance one;
  one.machines = 1;
  one.jobs = {{0, 1, 5}, {0, 2, 7}};
  GosdcResult r = solve_gosdc(one);
  CHECK(r.status == MipStatus::kOptimal);
  CHECK(r.makespan == 12);

  GosdcInstance two;
  two.machines = 2;
  two.jobs = {{0, 1, 4}, {1, 2, 6}};
  CHECK(solve_gosdc(two).makespan == 6);
  two.incompatible = {{0, 1}};
  r = solve_gosdc(two);
  CHECK(r.makespan == 10);
  CHECK(r.simultaneous.empty());
  CHECK(oracle_gosdc(two).makespan == 10);

  CHECK_THROWS_AS(check_schedule(two, {0, 2}), std::logic_error);
  CHECK(check_schedule(two, {6, 0}) == 10);

  GosdcInstance bad = two;
  bad.jobs[0].p = 0;
  CHECK_THROWS_AS(solve_gosdc(bad), InputError);
  bad = two;
  bad.jobs[1].id = 1;
  CHECK_THROWS_AS(validate(bad), InputError);

  CHECK(parse_families("claw,hole") == (kFamilyClaw | kFamilyHole));
  CHECK(parse_families("all") == kFamilyAll);
  CHECK_THROWS_AS(parse_families("claws"), InputError);
  CHECK(method_families(7) == kFamilyAll);
  CHECK_THROWS_AS(method_families(8), InputError);
}

TEST_CASE("gosdc against the oracle, all methods") {
  SplitMix64 rng(2024);
  int cut_total = 0;
  for (int rep = 0; rep < 12; ++rep) {
    int jobs = 2 + rep % 2;
    GosdcInstance inst = gen_gosdc(2, jobs, 50, rng);
    if (rep % 3 == 0) inst = gen_gosdc(3, 2, 40, rng);
    GosdcOracle o = oracle_gosdc(inst);
    CHECK(check_schedule(inst, o.start) == o.makespan);
    for (int method = 0; method <= 7; ++method) {
      GosdcOptions opt;
      opt.families = method_families(method);
      opt.log_cuts = true;
      GosdcResult r = solve_gosdc(inst, opt);
      CAPTURE(rep);
      CAPTURE(method);
      REQUIRE(r.status == MipStatus::kOptimal);
      CHECK(r.makespan == o.makespan);
      CHECK(check_schedule(inst, r.start) == r.makespan);
      for (const CutRecord& c : r.report.cut_log) CHECK(c.violation >= 1e-6);
      cut_total += static_cast<int>(r.report.total_cuts());
      if (method == 0) CHECK(r.report.total_cuts() == 0);
    }
  }
  MESSAGE("gosdc cuts added: " << cut_total);
}
