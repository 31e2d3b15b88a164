#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace blocker {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMinimize, kMaximize };
enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Entry {
  int index = 0;
  double value = 0.0;
};

struct LpRow {
  std::vector<Entry> entries;  // (column, coefficient)
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

struct LpColumn {
  double objective = 0.0;
  double lower = 0.0;
  double upper = kInfinity;
};

class LinearProgram {
 public:
  explicit LinearProgram(Sense sense = Sense::kMinimize) : sense_(sense) {}

  Sense sense() const { return sense_; }
  void set_sense(Sense sense) { sense_ = sense; }
  int num_columns() const { return static_cast<int>(columns_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const LpColumn& column(int j) const { return columns_[j]; }
  const LpRow& row(int i) const { return rows_[i]; }

  // `entries` are (row, coefficient) pairs for existing rows.
  int add_column(double objective, double lower, double upper,
                 std::span<const Entry> entries = {});
  // `entries` are (column, coefficient) pairs; duplicates are summed.
  int add_row(std::span<const Entry> entries, Relation relation, double rhs);
  int add_row(const LpRow& row) {
    return add_row(row.entries, row.relation, row.rhs);
  }
  void set_bounds(int j, double lower, double upper);
  void set_objective(int j, double objective);
  // Drops rows with index >= count.
  void truncate_rows(int count);

  double row_activity(int i, std::span<const double> x) const;
  std::string to_text() const;

 private:
  Sense sense_;
  std::vector<LpColumn> columns_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kError };

enum class VarStatus : std::uint8_t { kBasic, kAtLower, kAtUpper, kAtZero };

// Basis status per column and per row (the row's slack). Shorter vectors are
// extended: new columns start nonbasic, new rows start with a basic slack.
struct Basis {
  std::vector<VarStatus> columns;
  std::vector<VarStatus> rows;
};

struct LpOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 64;
  std::int64_t max_iterations = 0;  // 0 selects a size-based default
};

struct LpSolution {
  LpStatus status = LpStatus::kError;
  double objective = 0.0;
  std::vector<double> primal;
  // d objective / d rhs, in the model's own sense.
  std::vector<double> dual;
  std::vector<double> reduced_cost;
  Basis basis;
  std::int64_t iterations = 0;
  // |primal objective - dual objective| recomputed from the returned duals.
  double duality_gap = 0.0;
  std::string diagnostics;
};

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm = nullptr,
                    const LpOptions& options = {});

const char* to_string(LpStatus status);

// Per-thread counters over every optimal solve_lp call.
struct LpStats {
  std::int64_t solves = 0;
  double max_relative_gap = 0.0;  // duality_gap / (1 + |objective|)
};

LpStats& lp_stats();
void reset_lp_stats();

}  // namespace blocker
