#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "blocker/clique_interdiction.hpp"
#include "blocker/flow_blocker.hpp"
#include "blocker/gosdc.hpp"
#include "blocker/graph.hpp"
#include "blocker/matching_blocker.hpp"
#include "blocker/path_blocker.hpp"
#include "blocker/vertex_kcut.hpp"

namespace blocker {

// Exhaustive solvers used as ground truth. None of them touches the LP or
// MIP code.

struct OracleBudget {
  std::uint64_t max_subsets = std::uint64_t{1} << 28;
  double max_seconds = 600.0;
};

class OracleRefusal : public std::runtime_error {
 public:
  explicit OracleRefusal(const std::string& what) : std::runtime_error(what) {}
};

enum class Parallelism { kSerial, kOpenMp };

struct BcmbpOracle {
  int kappa = 0;
  // Smallest (then lexicographically first) V-subset whose removal destroys
  // every complete matching; empty when none exists to begin with.
  VertexSet blocker;
};

// Caps: |V| <= 12.
BcmbpOracle oracle_bcmbp(const BcmbpInstance& inst, const OracleBudget& budget = {});

struct MbcmbpOracle {
  int z = 0;  // may be negative when U has no complete matching
  std::vector<VertexSet> partition_v;
};

// Caps: |V| <= 9, m <= 3.
MbcmbpOracle oracle_mbcmbp(const MbcmbpInstance& inst, const OracleBudget& budget = {},
                           Parallelism par = Parallelism::kSerial);

struct VkcutOracle {
  bool feasible = false;
  int kept = 0;
  VertexSet cut;  // first V_0 of minimum size in lexicographic order
};

// Caps: n <= 12.
VkcutOracle oracle_vkcut(const KCutInstance& inst, const OracleBudget& budget = {});

struct MvvspOracle {
  bool feasible = false;  // false iff an arc s->t alone has length <= d
  VertexSet blocker;      // smallest, then lexicographically first
};

// Caps: n <= 12.
MvvspOracle oracle_mvvsp(const MvvspInstance& inst, const OracleBudget& budget = {});

struct MfbpOracle {
  std::int64_t cost = 0;
  std::vector<int> blocked;  // cheapest, then smallest bitmask
};

// Caps: at most 16 arcs.
MfbpOracle oracle_mfbp(const MfbpInstance& inst, const OracleBudget& budget = {});

// Least flow, then cheapest, then smallest bitmask.
using MfipOracle = MfipSolution;

// Caps: at most 16 arcs.
MfipOracle oracle_mfip(const MfipInstance& inst, const OracleBudget& budget = {});

// Plain recursive enumeration of cliques in vertex order; first maximum
// clique found (lexicographically smallest). Caps: n <= 40.
VertexSet oracle_max_clique(const UndirectedGraph& g, std::span<const char> removed = {});

struct CipOracle {
  int theta = 0;
  VertexSet interdicted;  // lexicographically first optimal set of size min(k, n)
};

// Every subset of at most k vertices. Caps: n <= 14, k <= 3.
CipOracle oracle_cip(const CipInstance& inst, const OracleBudget& budget = {});

struct GosdcOracle {
  std::int64_t makespan = 0;
  std::vector<std::int64_t> start;
};

// Every job order; conflicting pairs (same machine or incompatible) run in
// that order at their earliest starts. Any feasible schedule orients the
// conflict pairs acyclically, so some order reproduces it or does better.
// Caps: at most 10 jobs.
GosdcOracle oracle_gosdc(const GosdcInstance& inst, const OracleBudget& budget = {});

}  // namespace blocker
