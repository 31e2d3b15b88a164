#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "blocker/lp.hpp"

namespace blocker {

enum class MipStatus { kOptimal, kFeasible, kInfeasible, kLimit };

const char* to_string(MipStatus status);

struct MipLimits {
  double time_limit_seconds = 3600.0;
  std::int64_t node_limit = std::numeric_limits<std::int64_t>::max();
  double gap_tolerance = 0.0;
};

// Opaque per-column and per-row payloads used by branch-and-price models to
// identify priced columns and branching rows.
using Tag = std::vector<int>;

struct NodeContext {
  std::span<const double> x;    // current LP primal values
  std::span<const double> dual;  // per row of the node LP
  double objective = 0.0;
  int depth = 0;
  bool integral = false;
  const void* node_data = nullptr;
  std::span<const Tag> column_tags;
  std::span<const Tag> local_row_tags;  // rows after the global ones
  int global_rows = 0;
  // Set while the engine restores feasibility of a restricted master: duals
  // then belong to the objective "minimize the artificial columns" and new
  // columns are judged with zero objective.
  bool phase_one = false;
};

enum class CutScope { kIntegerOnly, kFractional };

struct CutCallback {
  std::string family;
  CutScope scope = CutScope::kFractional;
  std::function<std::vector<LpRow>(const NodeContext&)> separate;
};

struct NewColumn {
  double objective = 0.0;
  double lower = 0.0;
  double upper = 1.0;
  bool integer = true;
  std::vector<Entry> entries;  // coefficients in global rows
  Tag tag;
};

struct PricerCallback {
  std::function<std::vector<NewColumn>(const NodeContext&)> price;
};

struct BoundChange {
  int column = 0;
  double lower = 0.0;
  double upper = 0.0;
};

struct LocalRow {
  LpRow row;
  Tag tag;
};

struct Child {
  std::vector<BoundChange> bounds;
  std::vector<LocalRow> rows;
  std::shared_ptr<const void> data;
};

// Overrides the default branching. `branch` returns the children of the
// current fractional node in exploration order (cumulative restrictions are
// kept by the engine). `column_allowed` filters pooled columns at a node.
struct BranchRule {
  std::function<std::vector<Child>(const NodeContext&)> branch;
  std::function<bool(const void* node_data, const Tag& column)> column_allowed;
  // Coefficient of a column in a local row, for columns priced after the
  // row was created.
  std::function<double(const Tag& row, const Tag& column)> local_coefficient;
};

struct MipModel {
  LinearProgram lp;
  std::vector<char> integer;  // per column
  std::vector<Tag> column_tags;
  std::vector<CutCallback> cuts;
  std::optional<PricerCallback> pricer;
  std::optional<BranchRule> branch_rule;
  MipLimits limits;
  bool objective_is_integral = false;
  std::optional<std::vector<double>> initial_solution;
  // Columns that only keep a restricted master feasible. When any is still
  // positive after pricing, the engine runs a pricing phase one; if that
  // cannot drive them to zero the node is infeasible.
  std::vector<char> artificial;
  int max_cut_rounds_per_node = 200;
  bool log_cuts = false;   // keep every accepted cut with its candidate
  bool log_nodes = false;  // keep one NodeTrace per processed node
  std::ostream* trace = nullptr;
};

void register_branch_rule(MipModel& model, BranchRule rule);

struct CutRecord {
  std::string family;
  LpRow row;
  double violation = 0.0;
  std::vector<double> candidate;
};

struct NodeTrace {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  double lp_objective = 0.0;
  std::string action;
};

struct SolveReport {
  MipStatus status = MipStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> incumbent;
  double bound = 0.0;
  std::int64_t nodes = 0;
  std::map<std::string, std::int64_t> cuts_added;
  std::int64_t columns_added = 0;
  double wall_seconds = 0.0;
  std::int64_t lp_solves = 0;
  double max_duality_gap = 0.0;  // relative: gap / (1 + |z|)
  std::vector<CutRecord> cut_log;
  std::vector<NodeTrace> node_log;
  std::vector<Tag> column_tags;  // tags of every column of the final LP
  LinearProgram final_lp;        // model LP plus cuts and priced columns

  std::int64_t total_cuts() const;
  std::string to_json() const;
};

SolveReport solve_mip(MipModel model);

// Integrality tolerance used by the engine.
inline constexpr double kIntegralityTolerance = 1e-6;

}  // namespace blocker
