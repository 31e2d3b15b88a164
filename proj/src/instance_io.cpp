#include "blocker/instance_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace blocker {

namespace {

// Non-comment lines split into tokens, with their line numbers.
struct Line {
  int number = 0;
  std::string tag;
  std::istringstream rest;
};

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}
  bool next(Line& line) {
    std::string text;
    while (std::getline(in_, text)) {
      ++number_;
      std::istringstream ls(text);
      std::string tag;
      if (!(ls >> tag) || tag == "c") continue;
      line.number = number_;
      line.tag = tag;
      std::string rest;
      std::getline(ls, rest);
      line.rest = std::istringstream(rest);
      return true;
    }
    return false;
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw InputError(what + " at line " + std::to_string(line.number));
}

template <class... T>
void take(Line& line, T&... values) {
  if (!((line.rest >> values) && ...)) fail(line, "malformed '" + line.tag + "' line");
  std::string extra;
  if (line.tag != "part" && (line.rest >> extra)) fail(line, "trailing token");
}

int vertex(const Line& line, long long v, int n) {
  if (v < 1 || v > n) fail(line, "vertex out of range");
  return static_cast<int>(v - 1);
}

void expect_count(long long declared, std::size_t seen, const char* what) {
  if (declared != static_cast<long long>(seen))
    throw InputError(std::string(what) + ": header count " + std::to_string(declared) +
                     " but " + std::to_string(seen) + " read");
}

}  // namespace

BipartiteFile read_bipartite(std::istream& in) {
  LineReader reader(in);
  Line line;
  long long nu = -1, nv = -1, m = 0;
  std::vector<std::pair<int, int>> edges;
  std::map<long long, VertexSet> parts;
  while (reader.next(line)) {
    if (line.tag == "b") {
      if (nu >= 0) fail(line, "duplicate b line");
      take(line, nu, nv, m);
      if (nu < 0 || nv < 0 || m < 0) fail(line, "negative size");
    } else if (nu < 0) {
      fail(line, "data before the b line");
    } else if (line.tag == "e") {
      long long u = 0, v = 0;
      take(line, u, v);
      edges.push_back({vertex(line, u, static_cast<int>(nu)), vertex(line, v, static_cast<int>(nv))});
    } else if (line.tag == "part") {
      long long i = 0, u = 0;
      if (!(line.rest >> i) || i < 1) fail(line, "malformed part line");
      if (parts.count(i)) fail(line, "duplicate part");
      VertexSet& p = parts[i];
      while (line.rest >> u) p.push_back(vertex(line, u, static_cast<int>(nu)));
      if (!line.rest.eof()) fail(line, "malformed part line");
    } else {
      fail(line, "unknown tag '" + line.tag + "'");
    }
  }
  if (nu < 0) throw InputError("missing b line");
  expect_count(m, edges.size(), "bipartite");
  BipartiteFile f{BipartiteGraph(static_cast<int>(nu), static_cast<int>(nv), std::move(edges)), {}};
  long long expect = 1;
  for (auto& [i, p] : parts) {
    if (i != expect++) throw InputError("part numbers must be 1..m");
    f.parts.push_back(std::move(p));
  }
  return f;
}

void write_bipartite(std::ostream& out, const BipartiteFile& f) {
  out << "b " << f.g.size_u() << ' ' << f.g.size_v() << ' ' << f.g.num_edges() << '\n';
  for (auto [u, v] : f.g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    out << "part " << i + 1;
    for (int u : f.parts[i]) out << ' ' << u + 1;
    out << '\n';
  }
}

DigraphFile read_digraph(std::istream& in) {
  LineReader reader(in);
  Line line;
  long long n = -1, m = 0, s = 0, t = 0;
  std::vector<Arc> arcs;
  while (reader.next(line)) {
    if (line.tag == "d") {
      if (n >= 0) fail(line, "duplicate d line");
      take(line, n, m, s, t);
      if (n < 1 || m < 0) fail(line, "bad sizes");
    } else if (n < 0) {
      fail(line, "data before the d line");
    } else if (line.tag == "a") {
      long long u = 0, v = 0, len = 0;
      take(line, u, v, len);
      Arc a;
      a.tail = vertex(line, u, static_cast<int>(n));
      a.head = vertex(line, v, static_cast<int>(n));
      a.length = len;
      arcs.push_back(a);
    } else {
      fail(line, "unknown tag '" + line.tag + "'");
    }
  }
  if (n < 0) throw InputError("missing d line");
  expect_count(m, arcs.size(), "digraph");
  if (s < 1 || s > n || t < 1 || t > n) throw InputError("digraph: s or t out of range");
  return {Digraph(static_cast<int>(n), std::move(arcs)), static_cast<int>(s - 1),
          static_cast<int>(t - 1)};
}

void write_digraph(std::ostream& out, const DigraphFile& f) {
  out << "d " << f.g.num_vertices() << ' ' << f.g.num_arcs() << ' ' << f.s + 1 << ' ' << f.t + 1
      << '\n';
  for (const Arc& a : f.g.arcs()) out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.length << '\n';
}

MfbpInstance read_flow(std::istream& in) {
  LineReader reader(in);
  Line line;
  long long n = -1, m = 0, s = 0, t = 0, phi = 0;
  std::vector<Arc> arcs;
  while (reader.next(line)) {
    if (line.tag == "f") {
      if (n >= 0) fail(line, "duplicate f line");
      take(line, n, m, s, t, phi);
      if (n < 1 || m < 0) fail(line, "bad sizes");
    } else if (n < 0) {
      fail(line, "data before the f line");
    } else if (line.tag == "a") {
      long long u = 0, v = 0, cap = 0, cost = 0;
      take(line, u, v, cap, cost);
      Arc a;
      a.tail = vertex(line, u, static_cast<int>(n));
      a.head = vertex(line, v, static_cast<int>(n));
      a.capacity = cap;
      a.cost = cost;
      arcs.push_back(a);
    } else {
      fail(line, "unknown tag '" + line.tag + "'");
    }
  }
  if (n < 0) throw InputError("missing f line");
  expect_count(m, arcs.size(), "flow");
  if (s < 1 || s > n || t < 1 || t > n) throw InputError("flow: s or t out of range");
  MfbpInstance inst{Digraph(static_cast<int>(n), std::move(arcs)), static_cast<int>(s - 1),
                    static_cast<int>(t - 1), phi};
  validate(inst);
  return inst;
}

void write_flow(std::ostream& out, const MfbpInstance& inst) {
  out << "f " << inst.g.num_vertices() << ' ' << inst.g.num_arcs() << ' ' << inst.s + 1 << ' '
      << inst.t + 1 << ' ' << inst.phi << '\n';
  for (const Arc& a : inst.g.arcs())
    out << "a " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.capacity << ' ' << a.cost << '\n';
}

GosdcInstance read_gosdc(std::istream& in) {
  LineReader reader(in);
  Line line;
  GosdcInstance inst;
  inst.machines = -1;
  std::map<long long, int> index;
  std::vector<std::pair<long long, long long>> pairs;
  std::vector<int> pair_lines;
  while (reader.next(line)) {
    if (line.tag == "g") {
      if (inst.machines >= 0) fail(line, "duplicate g line");
      long long mm = 0;
      take(line, mm);
      if (mm < 1) fail(line, "need at least one machine");
      inst.machines = static_cast<int>(mm);
    } else if (inst.machines < 0) {
      fail(line, "data before the g line");
    } else if (line.tag == "j") {
      long long machine = 0, id = 0, p = 0;
      take(line, machine, id, p);
      if (machine < 1 || machine > inst.machines) fail(line, "machine out of range");
      if (index.count(id)) fail(line, "duplicate job id");
      index[id] = static_cast<int>(inst.jobs.size());
      inst.jobs.push_back({static_cast<int>(machine - 1), static_cast<int>(id), p});
    } else if (line.tag == "i") {
      long long a = 0, b = 0;
      take(line, a, b);
      pairs.push_back({a, b});
      pair_lines.push_back(line.number);
    } else {
      fail(line, "unknown tag '" + line.tag + "'");
    }
  }
  if (inst.machines < 0) throw InputError("missing g line");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto a = index.find(pairs[i].first), b = index.find(pairs[i].second);
    if (a == index.end() || b == index.end())
      throw InputError("unknown job id at line " + std::to_string(pair_lines[i]));
    inst.incompatible.push_back({a->second, b->second});
  }
  validate(inst);
  return inst;
}

void write_gosdc(std::ostream& out, const GosdcInstance& inst) {
  out << "g " << inst.machines << '\n';
  for (const GosdcJob& j : inst.jobs) out << "j " << j.machine + 1 << ' ' << j.id << ' ' << j.p << '\n';
  for (auto [a, b] : inst.incompatible) out << "i " << inst.jobs[a].id << ' ' << inst.jobs[b].id << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FileKind detect_kind(const std::string& path) {
  std::istringstream in(read_text(path));
  std::string text;
  while (std::getline(in, text)) {
    std::istringstream ls(text);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") return FileKind::kDimacs;
    if (tag == "b") return FileKind::kBipartite;
    if (tag == "d") return FileKind::kDigraph;
    if (tag == "f") return FileKind::kFlow;
    if (tag == "g") return FileKind::kGosdc;
    break;
  }
  throw InputError("cannot tell the format of " + path);
}

}  // namespace blocker
