#include "blocker/clique.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace blocker {

namespace {

class Bits {
 public:
  explicit Bits(int n = 0) : words_((n + 63) / 64, 0) {}
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return words_[i >> 6] >> (i & 63) & 1u; }
  bool none() const {
    for (std::uint64_t w : words_) {
      if (w) return false;
    }
    return true;
  }
  void and_with(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  }
  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  }
  int first() const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    }
    return -1;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<int>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class Search {
 public:
  Search(const UndirectedGraph& g, std::span<const double> w) : g_(g), w_(w), adj_(g.num_vertices()) {
    const int n = g.num_vertices();
    for (int v = 0; v < n; ++v) {
      adj_[v] = Bits(n);
      for (int u : g.neighbors(v)) adj_[v].set(u);
    }
  }

  WeightedClique run() {
    const int n = g_.num_vertices();
    Bits p(n);
    for (int v = 0; v < n; ++v) {
      if (w_[v] > 0.0) p.set(v);
    }
    std::vector<int> current;
    expand(current, 0.0, p);
    std::sort(best_.begin(), best_.end());
    return WeightedClique{best_, best_weight_};
  }

 private:
  void expand(std::vector<int>& current, double weight, Bits p) {
    // greedy coloring of p into independent classes, vertices in id order
    std::vector<int> order;
    std::vector<double> bound;
    Bits left = p;
    double total = 0.0;
    while (!left.none()) {
      Bits avail = left;
      double heaviest = 0.0;
      std::vector<int> cls;
      while (!avail.none()) {
        const int v = avail.first();
        cls.push_back(v);
        heaviest = std::max(heaviest, w_[v]);
        avail.reset(v);
        avail.and_not(adj_[v]);
        left.reset(v);
      }
      total += heaviest;
      for (int v : cls) {
        order.push_back(v);
        bound.push_back(total);
      }
    }
    for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
      if (weight + bound[i] <= best_weight_ + 1e-12) return;
      const int v = order[i];
      current.push_back(v);
      Bits next = p;
      next.and_with(adj_[v]);
      const double now = weight + w_[v];
      if (next.none()) {
        if (now > best_weight_ + 1e-12) {
          best_weight_ = now;
          best_ = current;
        }
      } else {
        expand(current, now, next);
      }
      current.pop_back();
      p.reset(v);
    }
  }

  const UndirectedGraph& g_;
  std::span<const double> w_;
  std::vector<Bits> adj_;
  std::vector<int> best_;
  double best_weight_ = 0.0;
};

}  // namespace

WeightedClique max_weight_clique(const UndirectedGraph& g, std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != g.num_vertices()) throw InputError("weight size mismatch");
  for (double w : weights) {
    if (w < 0.0) throw InputError("negative clique weight");
  }
  return Search(g, weights).run();
}

VertexSet maximum_clique(const UndirectedGraph& g, std::span<const char> removed) {
  std::vector<double> w(g.num_vertices(), 1.0);
  for (int v = 0; v < static_cast<int>(removed.size()); ++v) {
    if (removed[v]) w[v] = 0.0;
  }
  return max_weight_clique(g, w).clique;
}

int clique_number(const UndirectedGraph& g, std::span<const char> removed) {
  return static_cast<int>(maximum_clique(g, removed).size());
}

int clique_number_through(const UndirectedGraph& g, int v) {
  std::vector<double> w(g.num_vertices(), 0.0);
  for (int u : g.neighbors(v)) w[u] = 1.0;
  return 1 + static_cast<int>(max_weight_clique(g, w).weight + 0.5);
}

VertexSet extend_to_maximal(const UndirectedGraph& g, VertexSet clique) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (std::find(clique.begin(), clique.end(), v) != clique.end()) continue;
    bool all = true;
    for (int u : clique) {
      if (!g.adjacent(u, v)) {
        all = false;
        break;
      }
    }
    if (all) clique.push_back(v);
  }
  std::sort(clique.begin(), clique.end());
  return clique;
}

bool is_clique(const UndirectedGraph& g, std::span<const int> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (vertices[i] == vertices[j] || !g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace blocker
