#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blocker/mip.hpp"

namespace blocker {

struct GosdcJob {
  int machine = 0;
  int id = 0;  // external id, unique
  std::int64_t p = 1;
};

struct GosdcInstance {
  int machines = 1;
  std::vector<GosdcJob> jobs;
  std::vector<std::pair<int, int>> incompatible;  // job indices
};

void validate(const GosdcInstance& inst);

// Pairs that may never overlap: same machine, or incompatible. a < b.
std::vector<std::pair<int, int>> conflict_pairs(const GosdcInstance& inst);

// Makespan of the start times; throws std::logic_error when two
// conflicting jobs overlap or a start is negative.
std::int64_t check_schedule(const GosdcInstance& inst, const std::vector<std::int64_t>& start);

// Earliest starts for the order `sequence` (a permutation of the jobs):
// every conflicting pair runs in sequence order.
std::vector<std::int64_t> sequence_starts(const GosdcInstance& inst,
                                          const std::vector<int>& sequence);

enum GosdcFamily : unsigned {
  kFamilyClaw = 1u << 0,
  kFamilyUmbrella = 1u << 1,
  kFamilyHole = 1u << 2,
  kFamilyClique = 1u << 3,  // clique and clique-hole rows
  kFamilyNet = 1u << 4,
  kFamilyTent = 1u << 5,
  kFamilyAll = (1u << 6) - 1,
};

// 0 none, 1 claw, 2 umbrella, 3 hole, 4 clique-hole, 5 n-net, 6 n-tent, 7 all.
unsigned method_families(int method);
// Comma list of claw, umbrella, hole, clique, net, tent, all, none.
unsigned parse_families(const std::string& list);

struct GosdcOptions {
  MipLimits limits;
  unsigned families = 0;
  bool load_bounds = true;  // C_max >= load of every machine
  int max_cuts_per_round = 20;
  std::size_t max_embeddings = 4000;  // per pattern and round
  bool log_cuts = false;
};

struct GosdcResult {
  MipStatus status = MipStatus::kInfeasible;
  std::int64_t makespan = 0;
  std::vector<std::int64_t> start;
  std::vector<std::pair<int, int>> before;        // (a, b): a ends before b starts
  std::vector<std::pair<int, int>> simultaneous;  // z = 1 pairs
  SolveReport report;
};

GosdcResult solve_gosdc(const GosdcInstance& inst, const GosdcOptions& options = {});

}  // namespace blocker
