#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "blocker/flow_blocker.hpp"
#include "blocker/gosdc.hpp"
#include "blocker/graph.hpp"

namespace blocker {

// Line formats; `c ...` lines are comments, vertices 1-indexed in files.
//   bipartite: b <|U|> <|V|> <m>, e <u> <v>, part <i> <u1> <u2> ...
//   digraph:   d <n> <m> <s> <t>, a <u> <v> <length>
//   flow:      f <n> <m> <s> <t> <phi>, a <u> <v> <cap> <rcost>
//   gosdc:     g <machines>, j <machine> <id> <p>, i <id1> <id2>

struct BipartiteFile {
  BipartiteGraph g;
  std::vector<VertexSet> parts;  // empty when the file has no part lines
};

struct DigraphFile {
  Digraph g;  // lengths set, capacities and costs 0
  int s = 0;
  int t = 0;
};

BipartiteFile read_bipartite(std::istream& in);
void write_bipartite(std::ostream& out, const BipartiteFile& f);
DigraphFile read_digraph(std::istream& in);
void write_digraph(std::ostream& out, const DigraphFile& f);
MfbpInstance read_flow(std::istream& in);
void write_flow(std::ostream& out, const MfbpInstance& inst);
GosdcInstance read_gosdc(std::istream& in);
void write_gosdc(std::ostream& out, const GosdcInstance& inst);

// Dispatch on the first non-comment tag of a file.
enum class FileKind { kDimacs, kBipartite, kDigraph, kFlow, kGosdc };
FileKind detect_kind(const std::string& path);
std::string read_text(const std::string& path);

}  // namespace blocker
