#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "blocker/flow_blocker.hpp"
#include "blocker/gosdc.hpp"
#include "blocker/graph.hpp"
#include "blocker/path_blocker.hpp"

namespace blocker {

// splitmix64; fixed so generated suites match across platforms and libstdc++
// versions (std distributions are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  // True with probability percent / 100.
  bool chance(int percent) { return static_cast<int>(next() % 100) < percent; }

 private:
  std::uint64_t state_;
};

UndirectedGraph gen_graph(int n, int density_percent, SplitMix64& rng);
BipartiteGraph gen_bipartite(int size_u, int size_v, int density_percent, SplitMix64& rng);

// Random digraph on n vertices, s = 0, t = n - 1, lengths uniform in
// [1, max_length]. No arc s->t; s reaches t. Retries up to 100 times.
MvvspInstance gen_mvvsp(int n, int density_percent, SplitMix64& rng, int max_length = 10);

struct MvvspSweep {
  std::int64_t sp = 0;
  std::int64_t disc = 0;  // least d > sp whose optimum is the minimum s-t separator
};

// nullopt when t is unreachable from s.
std::optional<MvvspSweep> mvvsp_sweep(const MvvspInstance& inst);

// m arcs with random distinct endpoints (parallel arcs allowed), s = 0,
// t = n - 1, capacities uniform in [1, 20], blocking costs in [1, 10], and
// phi uniform in [0, max flow].
MfbpInstance gen_mfbp(int n, int m, SplitMix64& rng);

// jobs_per_machine jobs on each machine, ids 1.., processing times uniform
// in [p_lo, p_hi]; each cross-machine pair is incompatible with probability
// density_percent / 100.
GosdcInstance gen_gosdc(int machines, int jobs_per_machine, int density_percent, SplitMix64& rng,
                        std::int64_t p_lo = 50, std::int64_t p_hi = 150);

}  // namespace blocker
