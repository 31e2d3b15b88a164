#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "blocker/graph.hpp"
#include "blocker/lp.hpp"
#include "blocker/mip.hpp"

namespace blocker {

// Arc.capacity is c_a, Arc.cost is the blocking cost r_a.
struct MfbpInstance {
  Digraph g;
  int s = 0;
  int t = 1;
  std::int64_t phi = 0;
};

// Arc.capacity is c_a, Arc.cost is the interdiction cost q_a.
struct MfipInstance {
  Digraph g;
  int s = 0;
  int t = 1;
  std::int64_t budget = 0;
};

void validate(const MfbpInstance& inst);
void validate(const MfipInstance& inst);

// Capacities become interdiction costs, blocking costs become capacities,
// the target flow becomes the budget.
MfipInstance swap_to_mfip(const MfbpInstance& inst);

// Max flow after deleting `blocked` (arc ids).
std::int64_t residual_max_flow(const MfbpInstance& inst, const std::vector<int>& blocked);
std::int64_t blocking_cost(const MfbpInstance& inst, const std::vector<int>& blocked);

struct FollowerPoint {
  std::vector<double> y;  // per arc
  // arcs with y_a > 0
  std::vector<int> support() const;
};

struct BendersCut {
  LpRow row;  // sum_a y_a x_a >= sum_{out(s)} y_a - phi
  FollowerPoint y;
  double value = 0.0;  // sum_{out(s)} y - sum x* y at the maximizer
};

enum class BendersStatus { kCut, kNoCut, kBlockerFree };

struct BendersSeparation {
  BendersStatus status = BendersStatus::kNoCut;
  std::optional<BendersCut> cut;
};

// LP over the follower polytope. Arcs into s and out of t carry no flow
// there; otherwise circulations through s would produce invalid cuts.
BendersSeparation separate_benders(const MfbpInstance& inst, std::span<const double> x);

// sum_{a in support(y)} x_a >= 1, when violated by x.
std::optional<LpRow> separate_target_flow(const MfbpInstance& inst, std::span<const double> x,
                                          const FollowerPoint& y);

struct MfbpOptions {
  MipLimits limits;
  bool target_flow_cuts = true;
  bool log_cuts = false;
};

struct MfbpResult {
  MipStatus status = MipStatus::kInfeasible;
  std::vector<int> blocked;  // arc ids, sorted
  std::int64_t cost = 0;
  SolveReport report;
  bool preprocessed = false;  // max flow already <= phi
};

MfbpResult solve_mfbp_compact(const MfbpInstance& inst, const MfbpOptions& options = {});
MfbpResult solve_mfbp_benders(const MfbpInstance& inst, const MfbpOptions& options = {});

struct MfipSolution {
  std::vector<int> interdicted;  // arc ids
  std::int64_t flow = 0;
};

// `sol` solves swap_to_mfip(inst). The blocked arcs are the min cut arcs of
// the interdicted graph that were not interdicted; throws std::logic_error
// when they fail to push the flow down to phi.
std::vector<int> blocker_from_interdiction(const MfipSolution& sol, const MfbpInstance& inst);

}  // namespace blocker
