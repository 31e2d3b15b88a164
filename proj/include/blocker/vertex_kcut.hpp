#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "blocker/graph.hpp"
#include "blocker/mip.hpp"

namespace blocker {

struct KCutInstance {
  UndirectedGraph g;
  int k = 2;
};

struct KCutSolution {
  VertexSet cut;                       // V_0
  std::vector<VertexSet> components;   // k nonempty, pairwise disconnected
  int kept() const;
};

// Checks the KCutSolution invariants against the graph.
bool is_valid_kcut(const KCutInstance& inst, const KCutSolution& sol);

// Stable set of size k by greedy seeding plus backtracking.
std::optional<VertexSet> find_stable_set(const UndirectedGraph& g, int k);

enum class CoverMode { kEdges, kGreedyMaximal };

std::vector<VertexSet> build_clique_cover(const UndirectedGraph& g,
                                          CoverMode mode = CoverMode::kEdges);

struct DualPrices {
  std::vector<double> lambda;  // per vertex
  std::vector<double> pi;      // per clique of the cover
  double gamma = 0.0;
};

// Restrictions the branching imposes on priced subsets.
struct PricingRestrictions {
  std::vector<char> excluded;               // vertices in V_0
  std::vector<std::pair<int, int>> same;    // both or neither
  std::vector<std::pair<int, int>> differ;  // not both
  bool allows(const VertexSet& s) const;
};

struct PricedSubset {
  VertexSet subset;
  double value = 0.0;  // sum nu_v - sum pi_C over cliques hit
};

// Max of sum_{v in S} nu_v - sum_{C hit by S} pi_C over nonempty allowed S,
// with one project-selection min cut per forced vertex. Differ pairs are
// handled by a small enumeration on top of the cuts. Returns nullopt only if
// no allowed nonempty S exists.
std::optional<PricedSubset> max_weight_subset(int n, std::span<const double> nu,
                                              std::span<const double> pi,
                                              const std::vector<VertexSet>& cover,
                                              const PricingRestrictions& restrictions = {});

// The pricing criterion of the extended model: returns S and its reduced
// value (LHS minus gamma) when it is positive.
std::optional<PricedSubset> price_subset(const KCutInstance& inst, const DualPrices& duals,
                                         const std::vector<VertexSet>& cover,
                                         const PricingRestrictions& restrictions = {});

struct BranchDecision {
  int level = 0;  // 0 none, 1 vertex in or out of V_0, 2 same or different part
  int u = -1;
  int v = -1;
};

// `columns` are the subsets of the master columns with values `xi`.
BranchDecision two_level_branch(int n, const std::vector<VertexSet>& columns,
                                std::span<const double> xi);

struct KCutOptions {
  MipLimits limits;
  CoverMode cover = CoverMode::kEdges;
  bool symmetry_breaking = false;  // compact model only; orders parts by smallest vertex
  int max_columns_per_round = 8;
};

struct KCutResult {
  MipStatus status = MipStatus::kInfeasible;
  KCutSolution solution;
  SolveReport report;
};

KCutResult solve_compact(const KCutInstance& inst, const KCutOptions& options = {});
KCutResult solve_extended(const KCutInstance& inst, const KCutOptions& options = {});

}  // namespace blocker
