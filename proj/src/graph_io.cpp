#include "blocker/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace blocker {

UndirectedGraph read_dimacs(std::istream& in) {
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      if (n != -1) throw InputError("duplicate p line at " + std::to_string(line_no));
      std::string kind;
      long long m = 0;
      if (!(ls >> kind >> n >> m) || n < 0) {
        throw InputError("malformed p line at " + std::to_string(line_no));
      }
    } else if (tag == "e") {
      if (n == -1) throw InputError("edge before p line");
      int u = 0, v = 0;
      if (!(ls >> u >> v)) {
        throw InputError("malformed edge at line " + std::to_string(line_no));
      }
      if (u < 1 || v < 1 || u > n || v > n) {
        throw InputError("edge endpoint out of range at line " +
                         std::to_string(line_no));
      }
      if (u == v) throw InputError("self-loop at line " + std::to_string(line_no));
      edges.emplace_back(std::min(u, v) - 1, std::max(u, v) - 1);
    } else {
      throw InputError("unknown line tag '" + tag + "'");
    }
  }
  if (n == -1) throw InputError("missing p line");
  // Both orientations of an edge are common in published files.
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return UndirectedGraph(n, std::move(edges));
}

UndirectedGraph read_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_dimacs(in);
}

void write_dimacs(std::ostream& out, const UndirectedGraph& g) {
  out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace blocker
