#include "blocker/mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "json.hpp"

#include "blocker/graph.hpp"

namespace blocker {

const char* to_string(MipStatus status) {
  switch (status) {
    case MipStatus::kOptimal:
      return "optimal";
    case MipStatus::kFeasible:
      return "feasible";
    case MipStatus::kInfeasible:
      return "infeasible";
    case MipStatus::kLimit:
      return "limit";
  }
  return "?";
}

void register_branch_rule(MipModel& model, BranchRule rule) {
  model.branch_rule = std::move(rule);
}

std::int64_t SolveReport::total_cuts() const {
  std::int64_t total = 0;
  for (const auto& [family, count] : cuts_added) total += count;
  return total;
}

std::string SolveReport::to_json() const {
  nlohmann::json j;
  j["status"] = to_string(status);
  j["objective"] = objective;
  j["bound"] = bound;
  j["nodes"] = nodes;
  j["cutsAdded"] = cuts_added;
  j["columnsAdded"] = columns_added;
  j["wallSeconds"] = wall_seconds;
  j["lpSolves"] = lp_solves;
  j["maxDualityGap"] = max_duality_gap;
  j["incumbent"] = incumbent;
  return j.dump();
}

namespace {

double violation_of(const LpRow& row, std::span<const double> x) {
  double lhs = 0.0;
  for (const Entry& e : row.entries) lhs += e.value * x[e.index];
  switch (row.relation) {
    case Relation::kLessEqual:
      return lhs - row.rhs;
    case Relation::kGreaterEqual:
      return row.rhs - lhs;
    case Relation::kEqual:
      return std::abs(lhs - row.rhs);
  }
  return 0.0;
}

std::string canonical_key(const LpRow& row) {
  std::vector<Entry> e = row.entries;
  std::sort(e.begin(), e.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  std::ostringstream key;
  key << static_cast<int>(row.relation) << '|' << std::llround(row.rhs * 1e9);
  for (const Entry& x : e) key << '|' << x.index << ':' << std::llround(x.value * 1e9);
  return key.str();
}

struct Node {
  std::int64_t id = 0;
  std::int64_t parent = -1;
  int depth = 0;
  double bound = -kInfinity;  // internal (minimization) sense
  std::vector<BoundChange> bounds;
  std::vector<LocalRow> rows;
  std::shared_ptr<const void> data;
  std::vector<VarStatus> basis_columns;
  std::vector<VarStatus> basis_global_rows;
  std::vector<VarStatus> basis_local_rows;
};

class Engine {
 public:
  explicit Engine(MipModel model) : model_(std::move(model)) {
    sign_ = model_.lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
    model_.integer.resize(model_.lp.num_columns(), 0);
    model_.column_tags.resize(model_.lp.num_columns());
    for (int j = 0; j < model_.lp.num_columns(); ++j) {
      const LpColumn& c = model_.lp.column(j);
      if (model_.integer[j] && (!std::isfinite(c.lower) || !std::isfinite(c.upper))) {
        throw InputError("integer column " + std::to_string(j) + " must be bounded");
      }
    }
    if (model_.limits.gap_tolerance < 0) throw InputError("negative gap tolerance");
    model_rows_ = model_.lp.num_rows();
    model_.artificial.resize(model_.artificial.empty() ? 0 : model_.lp.num_columns(), 0);
  }

  SolveReport run() {
    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&]() {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    if (model_.initial_solution) {
      const auto& x = *model_.initial_solution;
      if (static_cast<int>(x.size()) != model_.lp.num_columns()) {
        throw InputError("initial solution size mismatch");
      }
      incumbent_ = x;
      incumbent_value_ = internal_objective(x);
    }
    std::vector<Node> stack;
    Node root;
    stack.push_back(std::move(root));
    bool limit_hit = false;
    double open_bound = kInfinity;
    while (!stack.empty()) {
      if (elapsed() > model_.limits.time_limit_seconds ||
          report_.nodes >= model_.limits.node_limit) {
        limit_hit = true;
        break;
      }
      Node node = std::move(stack.back());
      stack.pop_back();
      if (can_prune(node.bound)) continue;
      process(node, stack, elapsed);
      if (timed_out_) {
        limit_hit = true;
        open_bound = std::min(open_bound, node.bound);
        break;
      }
    }
    report_.wall_seconds = elapsed();
    for (const Node& n : stack) open_bound = std::min(open_bound, n.bound);
    const bool have = std::isfinite(incumbent_value_);
    if (limit_hit) {
      report_.status = have ? MipStatus::kFeasible : MipStatus::kLimit;
      const double b = std::min(open_bound, incumbent_value_);
      report_.bound = sign_ * b;
    } else {
      report_.status = have ? MipStatus::kOptimal : MipStatus::kInfeasible;
      report_.bound = have ? sign_ * incumbent_value_ : 0.0;
    }
    if (have) {
      report_.objective = sign_ * incumbent_value_;
      report_.incumbent = incumbent_;
      report_.incumbent.resize(model_.lp.num_columns(), 0.0);
    }
    report_.column_tags = model_.column_tags;
    report_.final_lp = std::move(model_.lp);
    return std::move(report_);
  }

 private:
  double internal_objective(std::span<const double> x) const {
    double v = 0.0;
    for (int j = 0; j < model_.lp.num_columns() && j < static_cast<int>(x.size()); ++j) {
      v += model_.lp.column(j).objective * x[j];
    }
    return sign_ * v;
  }

  bool can_prune(double value) const {
    if (!std::isfinite(incumbent_value_)) return false;
    const double slack =
        std::max(1e-9, model_.limits.gap_tolerance * (1.0 + std::abs(incumbent_value_)));
    if (model_.objective_is_integral) {
      return value > incumbent_value_ - 1.0 + 1e-6 ||
             value >= incumbent_value_ - slack;
    }
    return value >= incumbent_value_ - slack;
  }

  bool column_allowed(const Node& node, int j) const {
    if (!model_.branch_rule || !model_.branch_rule->column_allowed) return true;
    return model_.branch_rule->column_allowed(node.data.get(), model_.column_tags[j]);
  }

  // Returns false when the accumulated bound changes are contradictory.
  bool build_node_lp(const Node& node, LinearProgram& lp) const {
    lp = model_.lp;
    for (int j = 0; j < lp.num_columns(); ++j) {
      if (!column_allowed(node, j)) lp.set_bounds(j, 0.0, 0.0);
    }
    for (const BoundChange& b : node.bounds) {
      const LpColumn& c = lp.column(b.column);
      const double lo = std::max(c.lower, b.lower);
      const double up = std::min(c.upper, b.upper);
      if (lo > up) return false;
      lp.set_bounds(b.column, lo, up);
    }
    return true;
  }

  void append_local_rows(LinearProgram& lp, const Node& node) const {
    for (const LocalRow& r : node.rows) {
      LpRow row = r.row;
      // Extend to columns priced after the row was created.
      if (model_.branch_rule && model_.branch_rule->local_coefficient && !r.tag.empty()) {
        std::vector<char> present(lp.num_columns(), 0);
        for (const Entry& e : row.entries) present[e.index] = 1;
        for (int j = 0; j < lp.num_columns(); ++j) {
          if (present[j]) continue;
          const double c = model_.branch_rule->local_coefficient(r.tag, model_.column_tags[j]);
          if (c != 0.0) row.entries.push_back({j, c});
        }
      }
      lp.add_row(row);
    }
  }

  bool is_integral(std::span<const double> x) const {
    for (int j = 0; j < static_cast<int>(x.size()); ++j) {
      if (model_.integer[j] && std::abs(x[j] - std::round(x[j])) > kIntegralityTolerance) {
        return false;
      }
    }
    return true;
  }

  void trace(const Node& node, double value, const char* action) {
    if (model_.log_nodes) {
      report_.node_log.push_back({node.id, node.parent, node.depth, sign_ * value, action});
    }
    if (model_.trace != nullptr) {
      *model_.trace << "node=" << node.id << " depth=" << node.depth
                    << " lp=" << sign_ * value << " action=" << action << '\n';
    }
  }

  template <typename Clock>
  void process(Node& node, std::vector<Node>& stack, Clock& elapsed) {
    node.id = next_id_++;
    ++report_.nodes;
    const int global_at_start = model_.lp.num_rows();
    LinearProgram lp;
    if (!build_node_lp(node, lp)) {
      trace(node, kInfinity, "infeasible");
      return;
    }
    append_local_rows(lp, node);
    const int local_count = static_cast<int>(node.rows.size());

    Basis warm;
    warm.columns = node.basis_columns;
    warm.rows = node.basis_global_rows;
    warm.rows.resize(global_at_start, VarStatus::kBasic);
    for (VarStatus s : node.basis_local_rows) warm.rows.push_back(s);
    warm.rows.resize(global_at_start + local_count, VarStatus::kBasic);

    std::vector<Tag> local_tags;
    for (const LocalRow& r : node.rows) local_tags.push_back(r.tag);

    int cut_rounds = 0;
    LpSolution sol;
    while (true) {
      if (elapsed() > model_.limits.time_limit_seconds) {
        timed_out_ = true;
        return;
      }
      sol = solve_lp(lp, &warm);
      ++report_.lp_solves;
      if (sol.status == LpStatus::kError) {
        throw std::runtime_error("LP failure at node " + std::to_string(node.id) + ": " +
                                 sol.diagnostics);
      }
      if (sol.status == LpStatus::kUnbounded) {
        throw std::runtime_error("unbounded LP relaxation");
      }
      warm = sol.basis;
      if (sol.status == LpStatus::kInfeasible) {
        trace(node, kInfinity, "infeasible");
        return;
      }
      report_.max_duality_gap = std::max(
          report_.max_duality_gap, sol.duality_gap / (1.0 + std::abs(sol.objective)));
      const double value = sign_ * sol.objective;
      if (!model_.pricer && can_prune(value)) {
        trace(node, value, "prune");
        return;
      }
      NodeContext ctx;
      ctx.x = sol.primal;
      ctx.dual = sol.dual;
      ctx.objective = sol.objective;
      ctx.depth = node.depth;
      ctx.integral = is_integral(sol.primal);
      ctx.node_data = node.data.get();
      ctx.column_tags = model_.column_tags;
      ctx.local_row_tags = local_tags;
      ctx.global_rows = global_at_start;

      if (cut_rounds < model_.max_cut_rounds_per_node &&
          add_cuts(ctx, lp, sol.primal, CutScope::kFractional)) {
        ++cut_rounds;
        continue;
      }
      if (model_.pricer && add_columns(ctx, lp, node, warm)) continue;
      if (can_prune(value)) {
        trace(node, value, "prune");
        return;
      }
      if (model_.pricer && uses_artificial(sol.primal)) {
        if (!phase_one(ctx, lp, node, warm)) {
          trace(node, value, "infeasible");
          return;
        }
        continue;
      }
      if (ctx.integral) {
        if (add_cuts(ctx, lp, sol.primal, CutScope::kIntegerOnly)) continue;
        std::vector<double> x = sol.primal;
        for (int j = 0; j < static_cast<int>(x.size()); ++j) {
          if (model_.integer[j]) x[j] = std::round(x[j]);
        }
        const double v = internal_objective(x);
        if (v < incumbent_value_) {
          incumbent_value_ = v;
          incumbent_ = std::move(x);
        }
        trace(node, value, "integer");
        return;
      }
      node.bound = std::max(node.bound, value);
      trace(node, value, "branch");
      branch(node, ctx, stack, sol, global_at_start, lp.num_rows());
      return;
    }
  }

  bool add_cuts(const NodeContext& ctx, LinearProgram& lp, std::span<const double> x,
                CutScope scope) {
    bool added = false;
    for (const CutCallback& cb : model_.cuts) {
      if (cb.scope != scope || !cb.separate) continue;
      for (LpRow& row : cb.separate(ctx)) {
        const double viol = violation_of(row, x);
        if (viol < 1e-6) continue;
        if (!cut_keys_.insert(canonical_key(row)).second) continue;
        model_.lp.add_row(row);
        lp.add_row(row);
        ++report_.cuts_added[cb.family];
        if (model_.log_cuts) {
          report_.cut_log.push_back({cb.family, row, viol, std::vector<double>(x.begin(), x.end())});
        }
        added = true;
      }
    }
    return added;
  }

  bool uses_artificial(std::span<const double> x) const {
    for (int j = 0; j < static_cast<int>(model_.artificial.size()); ++j) {
      if (model_.artificial[j] && x[j] > 1e-9) return true;
    }
    return false;
  }

  // Prices against "minimize the artificial columns". On success the
  // artificials are fixed to zero in the node LP.
  bool phase_one(const NodeContext& base, LinearProgram& lp, const Node& node, Basis& warm) {
    LinearProgram p1 = lp;
    for (int j = 0; j < p1.num_columns(); ++j) {
      const bool art = j < static_cast<int>(model_.artificial.size()) && model_.artificial[j];
      p1.set_objective(j, art ? sign_ : 0.0);
    }
    Basis b = warm;
    while (true) {
      LpSolution s = solve_lp(p1, &b);
      ++report_.lp_solves;
      if (s.status != LpStatus::kOptimal) {
        throw std::runtime_error("phase one LP failure: " + s.diagnostics);
      }
      report_.max_duality_gap =
          std::max(report_.max_duality_gap, s.duality_gap / (1.0 + std::abs(s.objective)));
      b = s.basis;
      NodeContext ctx = base;
      ctx.x = s.primal;
      ctx.dual = s.dual;
      ctx.objective = s.objective;
      ctx.integral = false;
      ctx.column_tags = model_.column_tags;
      ctx.phase_one = true;
      if (add_columns(ctx, lp, node, b, &p1)) continue;
      if (std::abs(s.objective) > 1e-7) return false;
      for (int j = 0; j < static_cast<int>(model_.artificial.size()); ++j) {
        if (model_.artificial[j]) lp.set_bounds(j, 0.0, 0.0);
      }
      warm = b;
      return true;
    }
  }

  bool add_columns(const NodeContext& ctx, LinearProgram& lp, const Node& node, Basis& warm,
                   LinearProgram* zero_cost_copy = nullptr) {
    const int global_rows = ctx.global_rows;
    std::vector<NewColumn> cols = model_.pricer->price(ctx);
    bool added = false;
    for (NewColumn& c : cols) {
      for (const Entry& e : c.entries) {
        if (e.index < 0 || e.index >= model_rows_) {
          throw InputError("priced column references a non-model row");
        }
      }
      if (model_.branch_rule && model_.branch_rule->column_allowed &&
          !model_.branch_rule->column_allowed(node.data.get(), c.tag)) {
        throw std::logic_error("pricer returned a column forbidden at this node");
      }
      model_.lp.add_column(c.objective, c.lower, c.upper, c.entries);
      model_.integer.push_back(c.integer ? 1 : 0);
      model_.column_tags.push_back(c.tag);
      std::vector<Entry> entries = c.entries;
      // Local rows sit right after the globals present when the node started.
      for (int t = 0; t < static_cast<int>(node.rows.size()); ++t) {
        if (model_.branch_rule && model_.branch_rule->local_coefficient) {
          const double v = model_.branch_rule->local_coefficient(node.rows[t].tag, c.tag);
          if (v != 0.0) entries.push_back({global_rows + t, v});
        }
      }
      lp.add_column(c.objective, c.lower, c.upper, entries);
      if (zero_cost_copy) zero_cost_copy->add_column(0.0, c.lower, c.upper, entries);
      warm.columns.push_back(VarStatus::kAtLower);
      ++report_.columns_added;
      added = true;
    }
    return added;
  }

  void branch(const Node& node, const NodeContext& ctx, std::vector<Node>& stack,
              const LpSolution& sol, int global_at_start, int node_rows) {
    std::vector<Child> children;
    if (model_.branch_rule && model_.branch_rule->branch) {
      children = model_.branch_rule->branch(ctx);
      if (children.empty()) {
        throw std::logic_error("branch rule returned no children at a fractional node");
      }
    } else {
      int best = -1;
      double best_frac = 0.0;
      for (int j = 0; j < static_cast<int>(sol.primal.size()); ++j) {
        if (!model_.integer[j]) continue;
        const double f = sol.primal[j] - std::floor(sol.primal[j]);
        const double frac = std::min(f, 1.0 - f);
        if (frac > kIntegralityTolerance && frac > best_frac + 1e-12) {
          best_frac = frac;
          best = j;
        }
      }
      if (best == -1) throw std::logic_error("no fractional column to branch on");
      const double v = sol.primal[best];
      children.push_back({{{best, std::ceil(v), kInfinity}}, {}, nullptr});
      children.push_back({{{best, -kInfinity, std::floor(v)}}, {}, nullptr});
    }
    // Row statuses of global rows: rows of this node LP are laid out as
    // [globals at start][locals][cuts added here], and the cuts are globals now.
    const int local_count = node_rows - global_at_start -
                            (model_.lp.num_rows() - global_at_start);
    std::vector<VarStatus> global_rows(sol.basis.rows.begin(),
                                       sol.basis.rows.begin() + global_at_start);
    for (int i = global_at_start + local_count; i < node_rows; ++i) {
      global_rows.push_back(sol.basis.rows[i]);
    }
    std::vector<VarStatus> local_rows(sol.basis.rows.begin() + global_at_start,
                                      sol.basis.rows.begin() + global_at_start + local_count);
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      Node child;
      child.parent = node.id;
      child.depth = node.depth + 1;
      child.bound = node.bound;
      child.bounds = node.bounds;
      child.bounds.insert(child.bounds.end(), it->bounds.begin(), it->bounds.end());
      child.rows = node.rows;
      child.rows.insert(child.rows.end(), it->rows.begin(), it->rows.end());
      child.data = it->data ? it->data : node.data;
      child.basis_columns = sol.basis.columns;
      child.basis_global_rows = global_rows;
      child.basis_local_rows = local_rows;
      stack.push_back(std::move(child));
    }
  }

  MipModel model_;
  SolveReport report_;
  double sign_ = 1.0;
  int model_rows_ = 0;
  std::int64_t next_id_ = 0;
  double incumbent_value_ = kInfinity;
  std::vector<double> incumbent_;
  std::unordered_set<std::string> cut_keys_;
  bool timed_out_ = false;
};

}  // namespace

SolveReport solve_mip(MipModel model) {
  Engine engine(std::move(model));
  return engine.run();
}

}  // namespace blocker
