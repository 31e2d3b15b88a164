#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

namespace blocker {

// Highest-label push-relabel with the gap heuristic. Cap is an integer type
// or double; for double, residuals below kEps are treated as zero.
template <typename Cap>
class PushRelabel {
 public:
  explicit PushRelabel(int n) : n_(n), head_(n, -1) {}

  int num_vertices() const { return n_; }

  // Returns the id of the forward arc; its residual twin is id ^ 1.
  int add_arc(int u, int v, Cap cap) {
    const int id = static_cast<int>(to_.size());
    push_edge(u, v, cap);
    push_edge(v, u, Cap(0));
    return id;
  }

  Cap solve(int s, int t) {
    s_ = s;
    t_ = t;
    height_.assign(n_, 0);
    excess_.assign(n_, Cap(0));
    current_.assign(n_, -1);
    buckets_.assign(2 * n_ + 1, {});
    level_count_.assign(2 * n_ + 1, 0);
    for (int v = 0; v < n_; ++v) {
      current_[v] = head_[v];
      ++level_count_[0];
    }
    --level_count_[0];
    height_[s] = n_;
    ++level_count_[n_];
    highest_ = 0;
    for (int e = head_[s]; e != -1; e = next_[e]) {
      const Cap c = residual_[e];
      if (positive(c)) {
        residual_[e] -= c;
        residual_[e ^ 1] += c;
        const int w = to_[e];
        if (w != s && w != t && !positive(excess_[w])) activate(w);
        excess_[w] += c;
      }
    }
    while (highest_ >= 0) {
      if (buckets_[highest_].empty()) {
        --highest_;
        continue;
      }
      const int v = buckets_[highest_].back();
      buckets_[highest_].pop_back();
      discharge(v);
    }
    return excess_[t];
  }

  Cap flow(int arc) const { return residual_[arc ^ 1]; }

  // Vertices reachable from s in the residual network of the final flow.
  std::vector<char> source_side() const {
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{s_};
    seen[s_] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int e = head_[v]; e != -1; e = next_[e]) {
        if (positive(residual_[e]) && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr double kEps = 1e-11;

  static bool positive(Cap c) {
    if constexpr (std::is_floating_point_v<Cap>) {
      return c > kEps;
    } else {
      return c > 0;
    }
  }

  void push_edge(int u, int v, Cap cap) {
    to_.push_back(v);
    residual_.push_back(cap);
    next_.push_back(head_[u]);
    head_[u] = static_cast<int>(to_.size()) - 1;
  }

  void activate(int v) {
    buckets_[height_[v]].push_back(v);
    highest_ = std::max(highest_, height_[v]);
  }

  void set_height(int v, int h) {
    --level_count_[height_[v]];
    height_[v] = h;
    ++level_count_[h];
  }

  void discharge(int v) {
    while (positive(excess_[v])) {
      if (current_[v] == -1) {
        const int old = height_[v];
        relabel(v);
        if (old < n_ && level_count_[old] == 0) gap(old);
        if (height_[v] >= 2 * n_) return;
        current_[v] = head_[v];
        continue;
      }
      const int e = current_[v];
      const int w = to_[e];
      if (positive(residual_[e]) && height_[v] == height_[w] + 1) {
        const Cap delta = std::min(excess_[v], residual_[e]);
        residual_[e] -= delta;
        residual_[e ^ 1] += delta;
        excess_[v] -= delta;
        if (w != s_ && w != t_ && !positive(excess_[w])) activate(w);
        excess_[w] += delta;
      } else {
        current_[v] = next_[e];
      }
    }
  }

  void relabel(int v) {
    int best = 2 * n_;
    for (int e = head_[v]; e != -1; e = next_[e]) {
      if (positive(residual_[e])) best = std::min(best, height_[to_[e]] + 1);
    }
    set_height(v, best);
  }

  // Level h emptied: everything strictly between h and n is cut off from t.
  void gap(int h) {
    for (int v = 0; v < n_; ++v) {
      if (v != s_ && height_[v] > h && height_[v] < n_) {
        set_height(v, n_ + 1);
        current_[v] = head_[v];
        if (positive(excess_[v])) activate(v);
      }
    }
  }

  int n_;
  int s_ = 0;
  int t_ = 0;
  int highest_ = 0;
  std::vector<int> head_, next_, to_;
  std::vector<Cap> residual_;
  std::vector<int> height_, current_, level_count_;
  std::vector<Cap> excess_;
  std::vector<std::vector<int>> buckets_;
};

}  // namespace blocker
