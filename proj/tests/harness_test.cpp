#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "blocker/generators.hpp"
#include "blocker/graph_io.hpp"
#include "blocker/harness.hpp"
#include "blocker/instance_io.hpp"

using namespace blocker;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("harness_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

template <class Read, class Write>
std::string reemit(const std::string& text, Read read, Write write) {
  std::istringstream in(text);
  auto x = read(in);
  std::ostringstream out;
  write(out, x);
  return out.str();
}

// Generated text minus comment lines.
std::string body(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("c ", 0) != 0) out += line + "\n";
  return out;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("round trip of every format") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.size_u = 2 + static_cast<int>(seed % 4);
    spec.parts = 2;
    spec.n = 6 + static_cast<int>(seed % 5);
    spec.density = 20 + static_cast<int>(seed * 7 % 80);
    for (std::string p : {"bcmbp", "mbcmbp", "vkcut", "mvvsp", "mfbp", "gosdc"}) {
      spec.problem = p;
      std::string text = body(generate(spec));
      std::string again;
      if (p == "bcmbp" || p == "mbcmbp") again = reemit(text, read_bipartite, write_bipartite);
      else if (p == "vkcut") again = reemit(text, [](std::istream& in) { return read_dimacs(in); }, write_dimacs);
      else if (p == "mvvsp") again = reemit(text, read_digraph, write_digraph);
      else if (p == "mfbp") again = reemit(text, read_flow, write_flow);
      else again = reemit(text, read_gosdc, write_gosdc);
      CAPTURE(p);
      CHECK(again == text);
    }
  }
  // parsed structure, not just text
  std::istringstream in("c x\ng 2\nj 1 10 5\nj 2 20 7\ni 20 10\n");
  GosdcInstance g = read_gosdc(in);
  CHECK(g.machines == 2);
  REQUIRE(g.jobs.size() == 2);
  CHECK(g.jobs[1].machine == 1);
  CHECK(g.jobs[1].id == 20);
  CHECK(g.incompatible == std::vector<std::pair<int, int>>{{1, 0}});
}

TEST_CASE("parsers reject bad input") {
  auto bip = [](const std::string& s) { std::istringstream in(s); return read_bipartite(in); };
  auto dig = [](const std::string& s) { std::istringstream in(s); return read_digraph(in); };
  auto flo = [](const std::string& s) { std::istringstream in(s); return read_flow(in); };
  auto gos = [](const std::string& s) { std::istringstream in(s); return read_gosdc(in); };
  CHECK_THROWS_AS(bip("b 2 2 1\nb 2 2 1\n"), InputError);
  CHECK_THROWS_AS(bip("b 2 2 1\ne 3 1\n"), InputError);
  CHECK_THROWS_AS(bip("b 2 2 2\ne 1 1\n"), InputError);
  CHECK_THROWS_AS(bip("e 1 1\n"), InputError);
  CHECK_THROWS_AS(bip("b 2 2 0\npart 2 1\n"), InputError);
  CHECK(bip("b 2 2 1\ne 1 2\npart 1 1\npart 2 2\n").parts.size() == 2);
  CHECK_THROWS_AS(dig("d 3 1 1 3\na 1 1 2\n"), InputError);  // self-loop
  CHECK_THROWS_AS(dig("d 3 1 1 4\na 1 2 2\n"), InputError);
  CHECK_THROWS_AS(dig("d 3 1 1 3\na 1 2\n"), InputError);
  CHECK_THROWS_AS(dig("d 3 1 1 3\na 1 2 -1\n"), InputError);
  CHECK_THROWS_AS(flo("f 3 1 1 3 0\na 1 2 3 4 5\n"), InputError);
  CHECK_THROWS_AS(flo("f 3 1 1 3 -1\na 1 2 3 4\n"), InputError);
  CHECK_THROWS_AS(gos("g 1\nj 2 1 5\n"), InputError);
  CHECK_THROWS_AS(gos("g 1\nj 1 1 5\nj 1 1 6\n"), InputError);
  CHECK_THROWS_AS(gos("g 1\nj 1 1 5\ni 1 2\n"), InputError);
  CHECK_THROWS_AS(gos("g 1\nj 1 1 0\n"), InputError);
  CHECK_THROWS_AS(gos("g 1\nx\n"), InputError);
}

TEST_CASE("generator determinism and shape") {
  GenSpec spec;
  spec.problem = "bcmbp";
  spec.size_u = 4;
  spec.size_v = 6;
  spec.density = 50;
  spec.seed = 7;
  CHECK(generate(spec) == generate(spec));
  spec.seed = 8;
  std::string other = generate(spec);
  spec.seed = 7;
  CHECK(other != generate(spec));

  spec.density = 100;
  std::istringstream in(generate(spec));
  BipartiteFile f = read_bipartite(in);
  CHECK(f.g.num_edges() == 24);

  spec.density = 0;
  CHECK_THROWS_AS(generate(spec), InputError);
  spec.density = 50;
  spec.problem = "nope";
  CHECK_THROWS_AS(generate(spec), InputError);

  spec.problem = "mvvsp";
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    spec.seed = seed;
    spec.n = 8;
    spec.density = 25;
    std::string text = generate(spec);
    long long sp = -1, disc = -1;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      std::istringstream ls(line);
      std::string c, k;
      long long v;
      if (ls >> c >> k >> v && c == "c") {
        if (k == "sp") sp = v;
        if (k == "disc") disc = v;
      }
    }
    REQUIRE(sp >= 1);
    CHECK(sp + 1 <= disc);
  }
}

TEST_CASE("solvers agree with oracles through the harness") {
  RunParams params;
  params.k = 2;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.n = 8;
    spec.arcs = 12;
    spec.size_u = 4;
    spec.size_v = 6;
    spec.jobs = 2;
    for (std::string p : {"bcmbp", "mbcmbp", "vkcut", "mvvsp", "mfbp", "cip", "gosdc"}) {
      spec.problem = p;
      std::string path = write_file(p + std::to_string(seed) + ".txt", generate(spec));
      BenchReport rep = bench(p, {path}, methods_for(p), params);
      CAPTURE(p);
      CHECK(rep.consistency_errors.empty());
      for (const BenchRow& r : rep.rows) {
        CAPTURE(r.method);
        CHECK(r.error.empty());
      }
    }
  }
  CHECK_THROWS_AS(run_solver("cip", "bogus", write_file("k.dimacs", "p edge 2 1\ne 1 2\n"), params),
                  InputError);
  CHECK_THROWS_AS(methods_for("bogus"), InputError);
  params.bounds_only = true;
  RunOutcome b = run_solver("cip", "bc", write_file("k3.dimacs", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n"), params);
  CHECK(b.status == "bounds");
  CHECK(b.detail["lmin"].get<int>() <= b.detail["lmax"].get<int>());
}

TEST_CASE("bench table shape, limits and consistency flag") {
  std::vector<std::string> files;
  for (int i = 0; i < 3; ++i) {
    GenSpec spec;
    spec.problem = "mfbp";
    spec.n = 6;
    spec.arcs = 10;
    spec.seed = 100 + i;
    files.push_back(write_file("flow" + std::to_string(i) + ".txt", generate(spec)));
  }
  RunParams params;
  BenchReport rep = bench("mfbp", files, {"compact", "benders"}, params);
  CHECK(rep.rows.size() == 6);
  CHECK(rep.consistency_errors.empty());
  // header + 6 rows + 2 averages + consistency
  CHECK(count_lines(rep.csv) == 10);
  CHECK(rep.csv.find("average,compact,") != std::string::npos);
  CHECK(rep.csv.find(",3/3,") != std::string::npos);
  CHECK(rep.csv.find("consistency,,,,,,ok") != std::string::npos);

  // a run stopped by the limit is not optimal and reports the limit
  GenSpec g;
  g.problem = "gosdc";
  g.machines = 3;
  g.jobs = 3;
  g.seed = 5;
  std::string gpath = write_file("g.txt", generate(g));
  RunParams tight;
  tight.limits.time_limit_seconds = 1e-9;
  BenchReport lim = bench("gosdc", {gpath}, {"0"}, tight);
  REQUIRE(lim.rows.size() == 1);
  CHECK_FALSE(lim.rows[0].outcome.optimal);
  CHECK(lim.rows[0].outcome.seconds == 1e-9);
  CHECK(lim.csv.find(",0.00,") != std::string::npos);

  // two optimal rows that disagree
  std::vector<BenchRow> rows(2);
  rows[0].instance = rows[1].instance = "x";
  rows[0].method = "a";
  rows[1].method = "b";
  rows[0].outcome.optimal = rows[1].outcome.optimal = true;
  rows[0].outcome.objective = 3;
  rows[1].outcome.objective = 4;
  auto errors = check_consistency(rows);
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == "x: a=3 vs b=4");
  CHECK(bench_csv(rows, {"a", "b"}, errors).find("ERROR") != std::string::npos);
  rows[1].outcome.optimal = false;
  CHECK(check_consistency(rows).empty());

  // unreadable instance: row records the error, the run goes on
  BenchReport bad = bench("mfbp", {files[0], (scratch() / "missing.txt").string()}, {"compact"}, params);
  REQUIRE(bad.rows.size() == 2);
  CHECK(bad.rows[1].outcome.status == "error");
  CHECK_FALSE(bad.rows[1].error.empty());
  CHECK(bad.rows[0].outcome.optimal);
}
