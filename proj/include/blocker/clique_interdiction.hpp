#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blocker/graph.hpp"
#include "blocker/lp.hpp"
#include "blocker/mip.hpp"

namespace blocker {

struct CipInstance {
  UndirectedGraph g;
  int k = 0;
};

void validate(const CipInstance& inst);

struct InterdictionPolicy {
  VertexSet interdicted;  // sorted, at most k
  int theta = 0;          // omega of the residual graph
};

// Exact omega of G minus the policy.
int residual_clique_number(const UndirectedGraph& g, const VertexSet& interdicted);

struct LminResult {
  int lmin = 0;
  std::vector<VertexSet> packing;  // disjoint cliques, non-increasing size
  int best_prefix = 0;             // number of cliques giving lmin
};

// Minimum budget bringing every clique of the prefix down to the largest
// size minus 1, for disjoint cliques sorted by size.
int packing_budget(std::span<const int> sizes);

// Lower bound from one packing prefix of length q = p + 1.
int lmin_for_prefix(std::span<const int> sizes, int q, int k);

LminResult lower_bound_lmin(const UndirectedGraph& g, int k);

struct HeuristicPolicy {
  std::string name;  // degree, updated-degree, coreness, color
  InterdictionPolicy policy;
};

struct BoundsReport {
  int lmin = 0;
  int lmax = 0;
  std::vector<VertexSet> packing;
  std::vector<HeuristicPolicy> policies;
};

// `fixed` flags vertices that are never interdicted.
std::vector<HeuristicPolicy> upper_bound_heuristics(const UndirectedGraph& g, int k,
                                                    std::span<const char> fixed = {});

BoundsReport compute_bounds(const CipInstance& inst);

struct Preprocessed {
  UndirectedGraph reduced;  // vertex i is kept[i]
  VertexSet kept;
  VertexSet removed;
  int degree_filtered = 0;  // removed without a clique call
};

// Drops every v with omega_G(v) <= lmin.
Preprocessed preprocess(const UndirectedGraph& g, int lmin);

// theta + sum_{u in K} w_u >= |K| over columns w_0..w_{n-1}, theta = n.
struct CiCut {
  VertexSet clique;
  LpRow row;
};

// Integer candidate w (0/1 per vertex) with value theta; K is extended to a
// maximal clique. nullopt when the residual clique number is <= theta.
std::optional<CiCut> separate_ci_cut(const UndirectedGraph& g, std::span<const double> w,
                                     double theta);

struct CipOptions {
  MipLimits limits;
  bool preprocess = true;
  bool heuristics = true;  // incumbent from the best greedy policy
  bool lmin_row = true;    // theta >= lmin
  bool log_cuts = false;
};

struct CipResult {
  MipStatus status = MipStatus::kInfeasible;
  InterdictionPolicy policy;
  SolveReport report;
  BoundsReport bounds;
  // With preprocessing: the reduced graph's vertices and its own optimum.
  std::optional<VertexSet> kept;
  int reduced_theta = 0;
};

CipResult solve_cip(const CipInstance& inst, const CipOptions& options = {});

}  // namespace blocker
