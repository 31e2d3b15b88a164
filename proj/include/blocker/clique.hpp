#pragma once

#include <span>
#include <vector>

#include "blocker/graph.hpp"

namespace blocker {

struct WeightedClique {
  VertexSet clique;  // sorted
  double weight = 0.0;
};

// Exact branch-and-bound; bound from a greedy coloring where each color
// class counts its heaviest vertex. Zero-weight vertices never enter the
// search. Ties go to the clique found first in the fixed vertex order.
WeightedClique max_weight_clique(const UndirectedGraph& g, std::span<const double> weights);

// Unit weights; `removed` flags vertices to ignore.
VertexSet maximum_clique(const UndirectedGraph& g, std::span<const char> removed = {});
int clique_number(const UndirectedGraph& g, std::span<const char> removed = {});

// omega_G(v): size of a largest clique containing v.
int clique_number_through(const UndirectedGraph& g, int v);

// Adds vertices (ascending id) adjacent to every member until maximal.
VertexSet extend_to_maximal(const UndirectedGraph& g, VertexSet clique);

bool is_clique(const UndirectedGraph& g, std::span<const int> vertices);

}  // namespace blocker
