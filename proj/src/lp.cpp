#include "blocker/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "blocker/graph.hpp"

namespace blocker {

int LinearProgram::add_column(double objective, double lower, double upper,
                              std::span<const Entry> entries) {
  if (lower > upper || std::isnan(lower) || std::isnan(upper)) {
    throw InputError("column bounds inverted");
  }
  const int j = num_columns();
  for (const Entry& e : entries) {
    if (e.index < 0 || e.index >= num_rows()) {
      throw InputError("column entry references missing row");
    }
  }
  columns_.push_back({objective, lower, upper});
  for (const Entry& e : entries) {
    if (e.value != 0.0) rows_[e.index].entries.push_back({j, e.value});
  }
  return j;
}

int LinearProgram::add_row(std::span<const Entry> entries, Relation relation,
                           double rhs) {
  if (!std::isfinite(rhs)) throw InputError("row rhs must be finite");
  std::map<int, double> merged;
  for (const Entry& e : entries) {
    if (e.index < 0 || e.index >= num_columns() || !std::isfinite(e.value)) {
      throw InputError("malformed row entry");
    }
    merged[e.index] += e.value;
  }
  LpRow row;
  row.relation = relation;
  row.rhs = rhs;
  for (const auto& [j, v] : merged) {
    if (v != 0.0) row.entries.push_back({j, v});
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LinearProgram::set_bounds(int j, double lower, double upper) {
  if (j < 0 || j >= num_columns()) throw InputError("column out of range");
  if (lower > upper) throw InputError("column bounds inverted");
  columns_[j].lower = lower;
  columns_[j].upper = upper;
}

void LinearProgram::set_objective(int j, double objective) {
  if (j < 0 || j >= num_columns()) throw InputError("column out of range");
  columns_[j].objective = objective;
}

void LinearProgram::truncate_rows(int count) {
  if (count < 0 || count > num_rows()) throw InputError("bad row count");
  rows_.resize(count);
}

double LinearProgram::row_activity(int i, std::span<const double> x) const {
  double sum = 0.0;
  for (const Entry& e : rows_[i].entries) sum += e.value * x[e.index];
  return sum;
}

std::string LinearProgram::to_text() const {
  std::ostringstream out;
  out.precision(12);
  out << (sense_ == Sense::kMinimize ? "min" : "max") << ':';
  for (int j = 0; j < num_columns(); ++j) {
    if (columns_[j].objective != 0.0) {
      out << ' ' << columns_[j].objective << " x" << j;
    }
  }
  out << '\n';
  for (int i = 0; i < num_rows(); ++i) {
    out << 'r' << i << ':';
    for (const Entry& e : rows_[i].entries) out << ' ' << e.value << " x" << e.index;
    const Relation rel = rows_[i].relation;
    out << (rel == Relation::kLessEqual       ? " <= "
            : rel == Relation::kGreaterEqual ? " >= "
                                             : " = ")
        << rows_[i].rhs << '\n';
  }
  for (int j = 0; j < num_columns(); ++j) {
    out << "x" << j << " in [" << columns_[j].lower << ", "
        << columns_[j].upper << "]\n";
  }
  return out.str();
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kError:
      return "error";
  }
  return "?";
}

namespace {

// Revised simplex over A x - s = 0 with bounds on x and on the row slacks s.
// Variables 0..n-1 are structural, n..n+m-1 are slacks. The basis is factored
// as a dense LU of its kernel: basic structural columns restricted to rows
// whose slack is nonbasic. Pivots are applied as product-form etas.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const LpOptions& options)
      : options_(options), n_(lp.num_columns()), m_(lp.num_rows()) {
    const int total = n_ + m_;
    lower_.resize(total);
    upper_.resize(total);
    cost_.assign(total, 0.0);
    const double sign = lp.sense() == Sense::kMaximize ? -1.0 : 1.0;
    std::vector<int> counts(n_ + 1, 0);
    for (int i = 0; i < m_; ++i) {
      for (const Entry& e : lp.row(i).entries) ++counts[e.index + 1];
    }
    for (int j = 0; j < n_; ++j) counts[j + 1] += counts[j];
    col_start_ = counts;
    col_row_.resize(counts[n_]);
    col_val_.resize(counts[n_]);
    std::vector<int> fill(counts.begin(), counts.end() - 1);
    for (int i = 0; i < m_; ++i) {
      for (const Entry& e : lp.row(i).entries) {
        col_row_[fill[e.index]] = i;
        col_val_[fill[e.index]++] = e.value;
      }
    }
    for (int j = 0; j < n_; ++j) {
      lower_[j] = lp.column(j).lower;
      upper_[j] = lp.column(j).upper;
      cost_[j] = sign * lp.column(j).objective;
    }
    for (int i = 0; i < m_; ++i) {
      const LpRow& row = lp.row(i);
      double lo = -kInfinity, up = kInfinity;
      if (row.relation != Relation::kGreaterEqual) up = row.rhs;
      if (row.relation != Relation::kLessEqual) lo = row.rhs;
      lower_[n_ + i] = lo;
      upper_[n_ + i] = up;
    }
    max_iterations_ = options_.max_iterations > 0
                          ? options_.max_iterations
                          : 200LL * (total + 1) + 20000;
  }

  LpSolution run(const Basis* warm, Sense sense) {
    LpSolution sol;
    initialize_basis(warm);
    if (!refactor()) return fail("basis repair failed");
    compute_primal();
    LpStatus status;
    if (primal_infeasibility() <= options_.feasibility_tolerance) {
      status = primal(false);
    } else if (dual_feasible()) {
      status = dual();
      if (status == LpStatus::kOptimal) {
        status = primal(false);  // mops up any residual dual infeasibility
      } else if (status == LpStatus::kInfeasible) {
        status = two_phase();  // confirm with the primal method
      }
    } else {
      status = two_phase();
    }
    if (status == LpStatus::kError) return fail(diagnostics_);
    sol.status = status;
    sol.iterations = iterations_;
    sol.basis.columns.resize(n_);
    sol.basis.rows.resize(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      (j < n_ ? sol.basis.columns[j] : sol.basis.rows[j - n_]) = status_[j];
    }
    if (status != LpStatus::kOptimal) return sol;
    const double sign = sense == Sense::kMaximize ? -1.0 : 1.0;
    std::vector<double> y = duals();
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    sol.dual.resize(m_);
    sol.reduced_cost.resize(n_);
    double primal_obj = 0.0;
    for (int j = 0; j < n_; ++j) primal_obj += cost_[j] * x_[j];
    // Dual objective from the box-constrained dual: sum of d_j times the
    // bound it prices. Nonzero gap flags basis drift or dual infeasibility.
    double dual_obj = 0.0;
    bool dual_ok = true;
    for (int j = 0; j < n_ + m_; ++j) {
      const double d = reduced_cost(j, y);
      if (j < n_) sol.reduced_cost[j] = sign * d;
      if (std::abs(d) <= 1e-12) continue;
      const double bound = d > 0 ? lower_[j] : upper_[j];
      if (!std::isfinite(bound)) {
        if (std::abs(d) > options_.optimality_tolerance) dual_ok = false;
        continue;
      }
      dual_obj += d * bound;
    }
    for (int i = 0; i < m_; ++i) sol.dual[i] = sign * y[i];
    sol.objective = sign * primal_obj;
    sol.duality_gap = dual_ok ? std::abs(primal_obj - dual_obj) : kInfinity;
    return sol;
  }

 private:
  // ---- basis bookkeeping -------------------------------------------------

  void place_nonbasic(int j, VarStatus hint) {
    const bool lo_fin = std::isfinite(lower_[j]);
    const bool up_fin = std::isfinite(upper_[j]);
    VarStatus s = hint;
    if (s == VarStatus::kBasic) s = VarStatus::kAtLower;
    if (s == VarStatus::kAtLower && !lo_fin) s = VarStatus::kAtUpper;
    if (s == VarStatus::kAtUpper && !up_fin) s = lo_fin ? VarStatus::kAtLower : VarStatus::kAtZero;
    if (s == VarStatus::kAtZero && (lo_fin || up_fin)) {
      s = lo_fin ? VarStatus::kAtLower : VarStatus::kAtUpper;
    }
    status_[j] = s;
    x_[j] = s == VarStatus::kAtLower ? lower_[j]
            : s == VarStatus::kAtUpper ? upper_[j]
                                       : 0.0;
  }

  void initialize_basis(const Basis* warm) {
    const int total = n_ + m_;
    status_.assign(total, VarStatus::kAtLower);
    x_.assign(total, 0.0);
    std::vector<VarStatus> want(total, VarStatus::kAtLower);
    for (int i = 0; i < m_; ++i) want[n_ + i] = VarStatus::kBasic;
    if (warm != nullptr) {
      for (int j = 0; j < n_ && j < static_cast<int>(warm->columns.size()); ++j) {
        want[j] = warm->columns[j];
      }
      for (int i = 0; i < m_ && i < static_cast<int>(warm->rows.size()); ++i) {
        want[n_ + i] = warm->rows[i];
      }
    }
    head_.clear();
    for (int j = 0; j < total; ++j) {
      if (want[j] == VarStatus::kBasic) {
        head_.push_back(j);
        status_[j] = VarStatus::kBasic;
      } else {
        place_nonbasic(j, want[j]);
      }
    }
    // Too many basics: demote structurals from the back. Too few: promote
    // slacks of rows not yet covered. Singular leftovers are fixed in refactor.
    while (static_cast<int>(head_.size()) > m_) {
      auto it = std::find_if(head_.rbegin(), head_.rend(),
                             [&](int j) { return j < n_; });
      if (it == head_.rend()) it = head_.rbegin();
      const int j = *it;
      head_.erase(std::next(it).base());
      place_nonbasic(j, VarStatus::kAtLower);
    }
    for (int i = 0; i < m_ && static_cast<int>(head_.size()) < m_; ++i) {
      if (status_[n_ + i] != VarStatus::kBasic) {
        status_[n_ + i] = VarStatus::kBasic;
        head_.push_back(n_ + i);
      }
    }
  }

  // ---- factorization -----------------------------------------------------

  bool refactor() {
    for (int attempt = 0; attempt < 4; ++attempt) {
      if (factor_kernel()) return true;
    }
    return false;
  }

  // Returns false after repairing a singular kernel (caller refactors).
  bool factor_kernel() {
    etas_.clear();
    pos_of_.assign(n_ + m_, -1);
    for (int p = 0; p < m_; ++p) pos_of_[head_[p]] = p;
    kernel_cols_.clear();
    kernel_rows_.clear();
    row_in_kernel_.assign(m_, -1);
    for (int p = 0; p < m_; ++p) {
      if (head_[p] < n_) kernel_cols_.push_back(p);
    }
    for (int i = 0; i < m_; ++i) {
      if (status_[n_ + i] != VarStatus::kBasic) {
        row_in_kernel_[i] = static_cast<int>(kernel_rows_.size());
        kernel_rows_.push_back(i);
      }
    }
    const int r = static_cast<int>(kernel_cols_.size());
    lu_.assign(static_cast<std::size_t>(r) * r, 0.0);
    for (int b = 0; b < r; ++b) {
      const int j = head_[kernel_cols_[b]];
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        const int a = row_in_kernel_[col_row_[k]];
        if (a >= 0) lu_[static_cast<std::size_t>(a) * r + b] = col_val_[k];
      }
    }
    perm_.resize(r);
    for (int a = 0; a < r; ++a) perm_[a] = a;
    // Gaussian elimination with partial pivoting; a column without an
    // acceptable pivot is dependent and gets swapped for a slack.
    std::vector<int> dependent;
    int rank = 0;
    col_of_step_.clear();
    for (int b = 0; b < r; ++b) {
      int best = -1;
      double best_abs = 1e-9;
      for (int a = rank; a < r; ++a) {
        const double v = std::abs(lu_[static_cast<std::size_t>(a) * r + b]);
        if (v > best_abs) {
          best_abs = v;
          best = a;
        }
      }
      if (best == -1) {
        dependent.push_back(b);
        continue;
      }
      if (best != rank) {
        for (int c = 0; c < r; ++c) {
          std::swap(lu_[static_cast<std::size_t>(best) * r + c],
                    lu_[static_cast<std::size_t>(rank) * r + c]);
        }
        std::swap(perm_[best], perm_[rank]);
      }
      const double piv = lu_[static_cast<std::size_t>(rank) * r + b];
      for (int a = rank + 1; a < r; ++a) {
        double& f = lu_[static_cast<std::size_t>(a) * r + b];
        if (f == 0.0) continue;
        f /= piv;
        const double mult = f;
        for (int c = b + 1; c < r; ++c) {
          lu_[static_cast<std::size_t>(a) * r + c] -=
              mult * lu_[static_cast<std::size_t>(rank) * r + c];
        }
      }
      col_of_step_.push_back(b);
      ++rank;
    }
    if (dependent.empty()) {
      kernel_size_ = r;
      snapshot_base();
      return true;
    }
    // Rows perm_[rank..r) have no pivot; give each a basic slack in place of
    // one dependent column.
    for (std::size_t t = 0; t < dependent.size(); ++t) {
      const int p = kernel_cols_[dependent[t]];
      const int j = head_[p];
      const int row = kernel_rows_[perm_[rank + static_cast<int>(t)]];
      place_nonbasic(j, VarStatus::kAtLower);
      head_[p] = n_ + row;
      status_[n_ + row] = VarStatus::kBasic;
    }
    return false;
  }

  // Solves K w = rhs for the kernel (both indexed by kernel order).
  void kernel_solve(std::vector<double>& v) const {
    const int r = kernel_size_;
    std::vector<double> t(r);
    for (int a = 0; a < r; ++a) t[a] = v[perm_[a]];
    for (int a = 0; a < r; ++a) {
      double s = t[a];
      for (int c = 0; c < a; ++c) {
        // L entries live below the pivot of step c, in column col_of_step_[c].
        s -= lu_[static_cast<std::size_t>(a) * r + col_of_step_[c]] * t[c];
      }
      t[a] = s;
    }
    std::vector<double> w(r);
    for (int a = r - 1; a >= 0; --a) {
      double s = t[a];
      for (int c = a + 1; c < r; ++c) {
        s -= lu_[static_cast<std::size_t>(a) * r + col_of_step_[c]] * w[c];
      }
      w[a] = s / lu_[static_cast<std::size_t>(a) * r + col_of_step_[a]];
    }
    // w[a] is the value of kernel column col_of_step_[a].
    for (int a = 0; a < r; ++a) v[col_of_step_[a]] = w[a];
  }

  // Solves K^T y = rhs; input indexed by kernel column, output by kernel row.
  void kernel_solve_transpose(std::vector<double>& v) const {
    const int r = kernel_size_;
    std::vector<double> z(r);
    for (int a = 0; a < r; ++a) {
      double s = v[col_of_step_[a]];
      for (int c = 0; c < a; ++c) {
        s -= lu_[static_cast<std::size_t>(c) * r + col_of_step_[a]] * z[c];
      }
      z[a] = s / lu_[static_cast<std::size_t>(a) * r + col_of_step_[a]];
    }
    for (int a = r - 1; a >= 0; --a) {
      double s = z[a];
      for (int c = a + 1; c < r; ++c) {
        s -= lu_[static_cast<std::size_t>(c) * r + col_of_step_[a]] * z[c];
      }
      z[a] = s;
    }
    for (int a = 0; a < r; ++a) v[perm_[a]] = z[a];
  }

  // rhs in row space; returns B^-1 rhs in position space.
  std::vector<double> ftran(const std::vector<double>& rhs) const {
    const int r = kernel_size_;
    std::vector<double> k(r);
    for (int a = 0; a < r; ++a) k[a] = rhs[kernel_rows_[a]];
    kernel_solve(k);
    std::vector<double> w(m_, 0.0), acc(m_, 0.0);
    for (int b = 0; b < r; ++b) {
      const int p = kernel_cols_[b];
      w[p] = k[b];
      const int j = base_head(p);
      for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
        acc[col_row_[e]] += col_val_[e] * k[b];
      }
    }
    for (int i = 0; i < m_; ++i) {
      if (row_in_kernel_[i] < 0) w[base_slack_pos_[i]] = acc[i] - rhs[i];
    }
    for (const Eta& eta : etas_) {
      const double wp = w[eta.pos] / eta.pivot;
      w[eta.pos] = wp;
      if (wp != 0.0) {
        for (const Entry& e : eta.col) w[e.index] -= e.value * wp;
      }
    }
    return w;
  }

  // c in position space; returns y with B^T y = c in row space.
  std::vector<double> btran(std::vector<double> c) const {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = c[it->pos];
      for (const Entry& e : it->col) s -= e.value * c[e.index];
      c[it->pos] = s / it->pivot;
    }
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (row_in_kernel_[i] < 0) y[i] = -c[base_slack_pos_[i]];
    }
    const int r = kernel_size_;
    std::vector<double> k(r);
    for (int b = 0; b < r; ++b) {
      const int j = base_head(kernel_cols_[b]);
      double s = c[kernel_cols_[b]];
      for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
        if (row_in_kernel_[col_row_[e]] < 0) s -= col_val_[e] * y[col_row_[e]];
      }
      k[b] = s;
    }
    kernel_solve_transpose(k);
    for (int a = 0; a < r; ++a) y[kernel_rows_[a]] = k[a];
    return y;
  }

  int base_head(int p) const { return base_head_[p]; }

  void snapshot_base() {
    base_head_ = head_;
    base_slack_pos_.assign(m_, -1);
    for (int p = 0; p < m_; ++p) {
      if (head_[p] >= n_) base_slack_pos_[head_[p] - n_] = p;
    }
  }

  bool full_refactor() {
    if (!refactor()) return false;
    compute_primal();
    return true;
  }

  // ---- primal values -----------------------------------------------------

  void column_into(int j, std::vector<double>& out) const {
    if (j < n_) {
      for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) out[col_row_[e]] += col_val_[e];
    } else {
      out[j - n_] -= 1.0;
    }
  }

  double column_dot(int j, const std::vector<double>& y) const {
    if (j >= n_) return -y[j - n_];
    double s = 0.0;
    for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) s += col_val_[e] * y[col_row_[e]];
    return s;
  }

  void compute_primal() {
    std::vector<double> rhs(m_, 0.0);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == VarStatus::kBasic || x_[j] == 0.0) continue;
      if (j < n_) {
        for (int e = col_start_[j]; e < col_start_[j + 1]; ++e) {
          rhs[col_row_[e]] -= col_val_[e] * x_[j];
        }
      } else {
        rhs[j - n_] += x_[j];
      }
    }
    const std::vector<double> xb = ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = xb[p];
  }

  double infeasibility(int j) const {
    const double tol = options_.feasibility_tolerance;
    if (x_[j] < lower_[j] - tol) return lower_[j] - x_[j];
    if (x_[j] > upper_[j] + tol) return x_[j] - upper_[j];
    return 0.0;
  }

  double primal_infeasibility() const {
    double worst = 0.0;
    for (int p = 0; p < m_; ++p) worst = std::max(worst, infeasibility(head_[p]));
    return worst;
  }

  std::vector<double> duals() const {
    std::vector<double> cb(m_);
    for (int p = 0; p < m_; ++p) cb[p] = cost_[head_[p]];
    return btran(std::move(cb));
  }

  double reduced_cost(int j, const std::vector<double>& y) const {
    return cost_[j] - column_dot(j, y);
  }

  bool fixed(int j) const { return lower_[j] == upper_[j]; }

  // Sign-correct reduced cost for a nonbasic variable.
  bool dual_ok(int j, double d) const {
    const double tol = options_.optimality_tolerance;
    switch (status_[j]) {
      case VarStatus::kBasic:
        return true;
      case VarStatus::kAtLower:
        return fixed(j) || d >= -tol;
      case VarStatus::kAtUpper:
        return fixed(j) || d <= tol;
      case VarStatus::kAtZero:
        return std::abs(d) <= tol;
    }
    return true;
  }

  bool dual_feasible() const {
    const std::vector<double> y = duals();
    for (int j = 0; j < n_ + m_; ++j) {
      if (!dual_ok(j, reduced_cost(j, y))) return false;
    }
    return true;
  }

  // ---- pivoting ------------------------------------------------------------

  struct Eta {
    int pos;
    double pivot;
    std::vector<Entry> col;  // off-pivot entries of B^-1 a_q
  };

  bool pivot(int pos, int entering, const std::vector<double>& alpha) {
    Eta eta{pos, alpha[pos], {}};
    for (int p = 0; p < m_; ++p) {
      if (p != pos && std::abs(alpha[p]) > 1e-13) eta.col.push_back({p, alpha[p]});
    }
    etas_.push_back(std::move(eta));
    head_[pos] = entering;
    status_[entering] = VarStatus::kBasic;
    pos_of_[entering] = pos;
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      if (!full_refactor()) {
        diagnostics_ = "refactorization failed";
        return false;
      }
    }
    return true;
  }

  void leave(int j, bool to_upper) {
    pos_of_[j] = -1;
    if (to_upper && std::isfinite(upper_[j])) {
      status_[j] = VarStatus::kAtUpper;
      x_[j] = upper_[j];
    } else if (std::isfinite(lower_[j])) {
      status_[j] = VarStatus::kAtLower;
      x_[j] = lower_[j];
    } else if (std::isfinite(upper_[j])) {
      status_[j] = VarStatus::kAtUpper;
      x_[j] = upper_[j];
    } else {
      status_[j] = VarStatus::kAtZero;
      x_[j] = 0.0;
    }
  }

  LpStatus two_phase() {
    const LpStatus s = primal(true);
    if (s != LpStatus::kOptimal) return s;
    return primal(false);
  }

  // Primal simplex. Phase 1 minimizes the sum of infeasibilities with the
  // cost vector rebuilt every iteration.
  LpStatus primal(bool phase_one) {
    const double ftol = options_.feasibility_tolerance;
    const double otol = options_.optimality_tolerance;
    const double ptol = options_.pivot_tolerance;
    std::int64_t degenerate = 0;
    bool bland = false;
    const std::int64_t bland_after = 5LL * (n_ + m_);
    std::vector<double> cb(m_);
    while (true) {
      if (++iterations_ > max_iterations_) {
        diagnostics_ = "iteration limit in primal simplex";
        return LpStatus::kError;
      }
      bool infeasible = false;
      for (int p = 0; p < m_; ++p) {
        const int j = head_[p];
        if (phase_one) {
          cb[p] = x_[j] < lower_[j] - ftol ? -1.0 : x_[j] > upper_[j] + ftol ? 1.0 : 0.0;
          infeasible |= cb[p] != 0.0;
        } else {
          cb[p] = cost_[j];
        }
      }
      if (phase_one && !infeasible) return LpStatus::kOptimal;
      const std::vector<double> y = btran(cb);
      int q = -1;
      double best = 0.0;
      double dq = 0.0;
      for (int j = 0; j < n_ + m_; ++j) {
        if (status_[j] == VarStatus::kBasic || fixed(j)) continue;
        const double d = (phase_one ? 0.0 : cost_[j]) - column_dot(j, y);
        bool eligible = false;
        if (status_[j] == VarStatus::kAtLower) eligible = d < -otol;
        else if (status_[j] == VarStatus::kAtUpper) eligible = d > otol;
        else eligible = std::abs(d) > otol;
        if (!eligible) continue;
        if (bland) {
          q = j;
          dq = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
          dq = d;
        }
      }
      if (q == -1) {
        if (phase_one) return LpStatus::kInfeasible;
        return LpStatus::kOptimal;
      }
      const double dir = dq < 0 ? 1.0 : -1.0;
      std::vector<double> aq(m_, 0.0);
      column_into(q, aq);
      const std::vector<double> alpha = ftran(aq);

      // Two-pass ratio test. rate[p] is d x_B[p] / d theta.
      auto limit = [&](int p, double slack_tol) -> double {
        const double rate = -dir * alpha[p];
        if (std::abs(alpha[p]) <= ptol) return kInfinity;
        const int j = head_[p];
        const bool below = x_[j] < lower_[j] - ftol;
        const bool above = x_[j] > upper_[j] + ftol;
        if (rate < 0) {
          if (above) return (x_[j] - upper_[j] + slack_tol) / -rate;
          if (below) return kInfinity;
          if (!std::isfinite(lower_[j])) return kInfinity;
          return std::max(0.0, x_[j] - lower_[j] + slack_tol) / -rate;
        }
        if (below) return (lower_[j] - x_[j] + slack_tol) / rate;
        if (above) return kInfinity;
        if (!std::isfinite(upper_[j])) return kInfinity;
        return std::max(0.0, upper_[j] - x_[j] + slack_tol) / rate;
      };
      const double range = upper_[q] - lower_[q];
      int leave_pos = -1;
      double theta = kInfinity;
      if (bland) {
        int leave_var = -1;
        for (int p = 0; p < m_; ++p) {
          const double t = limit(p, 0.0);
          if (t == kInfinity) continue;
          if (t < theta - 1e-12 || (t <= theta + 1e-12 && head_[p] < leave_var)) {
            theta = std::min(theta, t);
            leave_pos = p;
            leave_var = head_[p];
          }
        }
      } else {
        double relaxed = kInfinity;
        for (int p = 0; p < m_; ++p) relaxed = std::min(relaxed, limit(p, ftol));
        double best_alpha = 0.0;
        for (int p = 0; p < m_; ++p) {
          const double t = limit(p, 0.0);
          if (t < kInfinity && t <= relaxed && std::abs(alpha[p]) > best_alpha) {
            best_alpha = std::abs(alpha[p]);
            leave_pos = p;
            theta = t;
          }
        }
      }
      const bool flip = std::isfinite(range) && (leave_pos == -1 || range <= theta);
      if (!flip && leave_pos == -1) {
        if (phase_one) {
          diagnostics_ = "unbounded phase-1 direction";
          return LpStatus::kError;
        }
        return LpStatus::kUnbounded;
      }
      if (flip) theta = range;
      if (theta <= 1e-12) {
        if (++degenerate > bland_after) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      const double step = dir * theta;
      x_[q] += step;
      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) x_[head_[p]] -= step * alpha[p];
      }
      if (flip) {
        status_[q] = status_[q] == VarStatus::kAtLower ? VarStatus::kAtUpper : VarStatus::kAtLower;
        x_[q] = status_[q] == VarStatus::kAtLower ? lower_[q] : upper_[q];
        continue;
      }
      const int out = head_[leave_pos];
      const double rate = -dir * alpha[leave_pos];
      // Leaving at the bound it was moving toward; an infeasible basic stops
      // at the bound it violated.
      const double before = x_[out] + step * alpha[leave_pos];
      bool to_upper = rate > 0;
      if (before < lower_[out] - ftol) to_upper = false;
      if (before > upper_[out] + ftol) to_upper = true;
      leave(out, to_upper);
      if (!pivot(leave_pos, q, alpha)) return LpStatus::kError;
    }
  }

  // Dual simplex from a dual-feasible basis.
  LpStatus dual() {
    const double otol = options_.optimality_tolerance;
    const double ptol = options_.pivot_tolerance;
    std::int64_t degenerate = 0;
    bool bland = false;
    const std::int64_t bland_after = 5LL * (n_ + m_);
    while (true) {
      if (++iterations_ > max_iterations_) {
        diagnostics_ = "iteration limit in dual simplex";
        return LpStatus::kError;
      }
      int r = -1;
      double worst = 0.0;
      for (int p = 0; p < m_; ++p) {
        const double inf = infeasibility(head_[p]);
        if (inf <= 0.0) continue;
        if (bland) {
          if (r == -1 || head_[p] < head_[r]) r = p;
        } else if (inf > worst) {
          worst = inf;
          r = p;
        }
      }
      if (r == -1) return LpStatus::kOptimal;
      const int out = head_[r];
      const bool to_lower = x_[out] < lower_[out];
      const double target = to_lower ? lower_[out] : upper_[out];
      const double sigma = to_lower ? 1.0 : -1.0;
      std::vector<double> er(m_, 0.0);
      er[r] = 1.0;
      const std::vector<double> rho = btran(er);
      const std::vector<double> y = duals();
      int q = -1;
      double theta = kInfinity;
      std::vector<std::pair<int, double>> cand;  // (var, alpha_r)
      double relaxed = kInfinity;
      for (int j = 0; j < n_ + m_; ++j) {
        if (status_[j] == VarStatus::kBasic || fixed(j)) continue;
        const double a = column_dot(j, rho);
        if (std::abs(a) <= ptol) continue;
        const bool ok = status_[j] == VarStatus::kAtZero ||
                        (status_[j] == VarStatus::kAtLower && sigma * a < 0) ||
                        (status_[j] == VarStatus::kAtUpper && sigma * a > 0);
        if (!ok) continue;
        cand.emplace_back(j, a);
        const double d = reduced_cost(j, y);
        relaxed = std::min(relaxed, (std::abs(d) + otol) / std::abs(a));
      }
      if (cand.empty()) return LpStatus::kInfeasible;
      double best_alpha = 0.0;
      for (const auto& [j, a] : cand) {
        const double ratio = std::abs(reduced_cost(j, y)) / std::abs(a);
        if (bland) {
          if (ratio < theta - 1e-12 || (ratio <= theta + 1e-12 && (q == -1 || j < q))) {
            theta = std::min(theta, ratio);
            q = j;
          }
        } else if (ratio <= relaxed && std::abs(a) > best_alpha) {
          best_alpha = std::abs(a);
          q = j;
          theta = ratio;
        }
      }
      if (theta <= 1e-12) {
        if (++degenerate > bland_after) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      std::vector<double> aq(m_, 0.0);
      column_into(q, aq);
      const std::vector<double> alpha = ftran(aq);
      if (std::abs(alpha[r]) <= ptol) {
        // Row and column computations disagree; rebuild and retry.
        if (!full_refactor()) {
          diagnostics_ = "refactorization failed";
          return LpStatus::kError;
        }
        continue;
      }
      const double delta = (x_[out] - target) / alpha[r];
      x_[q] += delta;
      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) x_[head_[p]] -= delta * alpha[p];
      }
      leave(out, !to_lower);
      if (!pivot(r, q, alpha)) return LpStatus::kError;
    }
  }

  LpSolution fail(const std::string& why) {
    LpSolution sol;
    sol.status = LpStatus::kError;
    sol.iterations = iterations_;
    sol.diagnostics = why + " (rows=" + std::to_string(m_) +
                      ", cols=" + std::to_string(n_) +
                      ", iterations=" + std::to_string(iterations_) + ")";
    return sol;
  }

  LpOptions options_;
  int n_;
  int m_;
  std::int64_t max_iterations_;
  std::int64_t iterations_ = 0;
  std::string diagnostics_;

  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<double> lower_, upper_, cost_, x_;
  std::vector<VarStatus> status_;
  std::vector<int> head_, pos_of_;

  std::vector<int> base_head_, base_slack_pos_;
  std::vector<int> kernel_cols_, kernel_rows_, row_in_kernel_;
  std::vector<double> lu_;
  std::vector<int> perm_, col_of_step_;
  int kernel_size_ = 0;
  std::vector<Eta> etas_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm,
                    const LpOptions& options) {
  Simplex simplex(lp, options);
  LpSolution sol = simplex.run(warm, lp.sense());
  if (sol.status == LpStatus::kOptimal) {
    LpStats& st = lp_stats();
    ++st.solves;
    st.max_relative_gap =
        std::max(st.max_relative_gap, sol.duality_gap / (1.0 + std::abs(sol.objective)));
  }
  return sol;
}

LpStats& lp_stats() {
  thread_local LpStats stats;
  return stats;
}

void reset_lp_stats() { lp_stats() = LpStats{}; }

}  // namespace blocker
