#pragma once

#include <iosfwd>
#include <string>

#include "blocker/graph.hpp"

namespace blocker {

// DIMACS undirected edge format; vertices 1-indexed in the file.
UndirectedGraph read_dimacs(std::istream& in);
UndirectedGraph read_dimacs_file(const std::string& path);
void write_dimacs(std::ostream& out, const UndirectedGraph& g);

}  // namespace blocker
