#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "blocker/mip.hpp"

namespace blocker {

struct GenSpec {
  std::string problem;  // bcmbp mbcmbp vkcut cip mvvsp mfbp gosdc
  int size_u = 4;
  int size_v = 6;
  int parts = 2;  // mbcmbp
  int n = 10;
  int arcs = 16;  // mfbp
  int density = 50;
  int machines = 2;
  int jobs = 3;  // per machine
  std::uint64_t seed = 1;
};

// Instance file text. MVVSP files carry `c sp <v>` and `c disc <v>`.
std::string generate(const GenSpec& spec);

struct RunParams {
  int k = 2;              // vkcut, cip
  std::int64_t d = -1;    // mvvsp; -1 reads sp + 1 from the instance
  std::string cuts;       // gosdc family list, overrides the method
  bool bounds_only = false;  // cip
  MipLimits limits;
};

struct RunOutcome {
  std::string status;  // optimal, feasible, infeasible, limit, error
  bool optimal = false;
  double objective = 0.0;
  std::int64_t nodes = 0;
  std::int64_t cuts = 0;
  double seconds = 0.0;
  nlohmann::json detail;
};

std::vector<std::string> methods_for(const std::string& problem);

// `method` "oracle" runs the exhaustive reference.
RunOutcome run_solver(const std::string& problem, const std::string& method,
                      const std::string& path, const RunParams& params);

struct BenchRow {
  std::string instance;
  std::string method;
  RunOutcome outcome;
  std::string error;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> consistency_errors;
  std::string csv;
};

// Instances where two optimal rows disagree on the objective.
std::vector<std::string> check_consistency(const std::vector<BenchRow>& rows);
// Header, one line per row, per-method averages with solved ratio o/p,
// and a final consistency line.
std::string bench_csv(const std::vector<BenchRow>& rows, const std::vector<std::string>& methods,
                      const std::vector<std::string>& errors);

// One solve per (instance, method) on an OpenMP worker pool; rows ordered
// by instance then method.
BenchReport bench(const std::string& problem, const std::vector<std::string>& instances,
                  const std::vector<std::string>& methods, const RunParams& params);

}  // namespace blocker
