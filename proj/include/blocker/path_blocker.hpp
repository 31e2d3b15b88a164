#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blocker/graph.hpp"
#include "blocker/graph_algorithms.hpp"
#include "blocker/mip.hpp"

namespace blocker {

struct MvvspInstance {
  Digraph g;  // arc lengths in Arc::length
  int s = 0;
  int t = 1;
  std::int64_t d = 0;
};

void validate(const MvvspInstance& inst);

struct PathCut {
  std::vector<int> path;      // s ... t
  VertexSet internal;         // sorted internal vertices
};

// Shortest s-t path avoiding the vertices with x > 0.5; a cut when its
// length is at most d. `extra` vertices are treated as blocked as well.
std::optional<PathCut> separate_path_cut(const MvvspInstance& inst, std::span<const double> x,
                                         std::span<const char> extra = {});

// Greedy compression by shortcut arcs while the length stays <= d.
std::vector<int> minimalize_path(const MvvspInstance& inst, std::vector<int> path);

std::int64_t path_length(const Digraph& g, const std::vector<int>& path);

struct MvvspOptions {
  MipLimits limits;
  int cuts_per_candidate = 10;
  bool minimalize = true;
  bool log_cuts = false;
};

struct MvvspResult {
  MipStatus status = MipStatus::kInfeasible;  // infeasible: an arc s->t of length <= d
  VertexSet blocker;
  SolveReport report;
};

MvvspResult solve_mvvsp(const MvvspInstance& inst, const MvvspOptions& options = {});

// Shortest s-t length avoiding `blocked`, or nullopt when disconnected.
std::optional<std::int64_t> residual_distance(const MvvspInstance& inst, const VertexSet& blocked);

// Minimum number of internal vertices separating s from t, or nullopt when
// an arc s->t exists.
std::optional<int> min_vertex_separator(const Digraph& g, int s, int t);

}  // namespace blocker
