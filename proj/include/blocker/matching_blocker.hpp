#pragma once

#include <string>
#include <vector>

#include "blocker/graph.hpp"
#include "blocker/lp.hpp"
#include "blocker/mip.hpp"

namespace blocker {

struct BcmbpInstance {
  BipartiteGraph g;
};

struct MbcmbpInstance {
  BipartiteGraph g;
  std::vector<VertexSet> partition_u;  // m disjoint nonempty sets covering U
};

void validate(const MbcmbpInstance& inst);

struct KappaResult {
  int kappa = 0;
  VertexSet witness_u;  // nonempty, |N(witness_u)| - |witness_u| == kappa
  // Collected over the per-u LPs.
  double max_fractionality = 0.0;
  double max_duality_gap = 0.0;
  int lp_solves = 0;
};

// One LP per u in U with x_u fixed to 1; each is integral by total
// unimodularity. Negative kappa means no complete matching on U.
KappaResult kappa(const BcmbpInstance& inst);

bool is_k_cm(const BcmbpInstance& inst, int k);

struct MbcmbpSolution {
  int z = 0;
  std::vector<VertexSet> partition_v;
};

// Variables of the branch-and-cut model: column 0 is z, column
// 1 + i * |V| + v is x_v^i.
inline int mbcmbp_column(const MbcmbpInstance& inst, int v, int part) {
  return 1 + part * inst.g.size_v() + v;
}

struct MbcmbpCut {
  std::string family;  // "hall" or "pair"
  LpRow row;           // over the model columns
  double violation = 0.0;
  int part = -1;       // hall cuts: the part; pair cuts: s
  int other = -1;      // pair cuts: t
  VertexSet subset;    // hall cuts: U'; pair cuts: U'_s followed by U'_t
};

struct FoundSet {
  int part = 0;
  VertexSet subset;
};

// x[i][v] is x_v^i. Emits violated Hall cuts; `found` (optional) receives
// the maximal set U'_i of every part with a violated cut before splitting.
std::vector<MbcmbpCut> separate_hall_cuts(const MbcmbpInstance& inst,
                                          const std::vector<std::vector<double>>& x,
                                          double z, std::vector<FoundSet>* found = nullptr);

std::vector<MbcmbpCut> separate_pair_cuts(const MbcmbpInstance& inst,
                                          const std::vector<std::vector<double>>& x,
                                          double z, const std::vector<FoundSet>& found);

// Bound of the pair inequality for a couple of sets, exposed for tests.
struct PairBound {
  int k_min = 0;
  int k_max = 0;
  int common = 0;
  bool first_case = false;
  double k_sup = 0.0;
  bool ell_is_t = true;
};

PairBound pair_bound(const MbcmbpInstance& inst, const VertexSet& sub_s,
                     const VertexSet& sub_t);

struct MbcmbpOptions {
  MipLimits limits;
  bool pair_cuts = true;
  int max_cuts_per_round = 50;
  bool log_cuts = false;
};

struct MbcmbpResult {
  MipStatus status = MipStatus::kInfeasible;
  MbcmbpSolution solution;
  SolveReport report;
  bool hypothesis_holds = true;
};

// Infeasible status when G has no complete matching on U at all (then no
// partition reaches z = 0).
MbcmbpResult solve_mbcmbp(const MbcmbpInstance& inst, const MbcmbpOptions& options = {});

// kappa of H_i = G[U_i u V_i] for every part of a candidate partition.
std::vector<int> part_kappas(const MbcmbpInstance& inst,
                             const std::vector<VertexSet>& partition_v);

}  // namespace blocker
