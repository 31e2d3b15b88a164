// Command line front end: instance generation, single solves, oracles and
// the benchmark table runner.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "blocker/graph.hpp"
#include "blocker/harness.hpp"
#include "blocker/oracles.hpp"

using namespace blocker;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write " + out);
  f << text;
}

std::string outcome_json(const std::string& problem, const std::string& method,
                         const RunOutcome& r) {
  nlohmann::json j = {{"problem", problem},   {"method", method},
                      {"status", r.status},     {"nodes", r.nodes},
                      {"cuts", r.cuts},         {"seconds", r.seconds},
                      {"solution", r.detail}};
  if (r.objective == r.objective) j["objective"] = r.objective;
  else j["objective"] = nullptr;
  return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blocker and interdiction solvers"};
  app.require_subcommand(1);

  GenSpec spec;
  std::string out;
  auto* gen = app.add_subcommand("gen", "write a random instance");
  gen->add_option("--problem", spec.problem, "bcmbp mbcmbp vkcut cip mvvsp mfbp gosdc")->required();
  gen->add_option("--nu", spec.size_u, "|U| (bipartite)");
  gen->add_option("--nv", spec.size_v, "|V| (bipartite)");
  gen->add_option("--parts", spec.parts, "U-partition size (mbcmbp)");
  gen->add_option("--n", spec.n, "vertices (graphs, digraphs, flows)");
  gen->add_option("--arcs", spec.arcs,
                  "arcs (mfbp; capacities uniform in [1,20], costs in [1,10])");
  gen->add_option("--density", spec.density, "edge/arc percentage in (0,100]");
  gen->add_option("--machines", spec.machines, "machines (gosdc)");
  gen->add_option("--jobs", spec.jobs, "jobs per machine (gosdc, p uniform in [50,150])");
  gen->add_option("--seed", spec.seed, "splitmix64 seed");
  gen->add_option("--out", out, "output file (default stdout)");

  RunParams params;
  std::string instance, method, problem;
  std::map<std::string, std::string> defaults;
  double time_limit = 3600.0;
  auto add_common = [&](CLI::App* sub, const std::string& default_method) {
    sub->add_option("--instance", instance, "instance file")->required();
    sub->add_option("--method", method, "solver variant (default " + default_method + ")");
    defaults[sub->get_name()] = default_method;
    sub->add_option("--time-limit", time_limit, "seconds");
    sub->add_option("--out", out, "write the JSON report here");
  };
  auto* bc = app.add_subcommand("bcmbp", "kappa of a bipartite graph (method lp|oracle)");
  add_common(bc, "lp");
  auto* mb = app.add_subcommand("mbcmbp", "multi-part blocker (method bc|hall|oracle)");
  add_common(mb, "bc");
  auto* vk = app.add_subcommand("vkcut", "vertex k-cut (method compact|extended|oracle)");
  add_common(vk, "extended");
  vk->add_option("--k", params.k, "number of components")->required();
  auto* mv = app.add_subcommand("mvvsp", "shortest path blocker (method bc|plain|oracle)");
  add_common(mv, "bc");
  mv->add_option("--d", params.d, "length bound (default sp + 1)");
  auto* mf = app.add_subcommand("mfbp", "max flow blocker (method compact|benders|benders-notf|oracle)");
  add_common(mf, "benders");
  auto* ci = app.add_subcommand("cip", "clique interdiction (method bc|nopre|oracle)");
  add_common(ci, "bc");
  ci->add_option("--k", params.k, "interdiction budget")->required();
  ci->add_flag("--bounds-only", params.bounds_only, "only the lower and upper bounds");
  auto* gs = app.add_subcommand("gosdc", "open shop with disjunctive constraints (method 0..7|oracle)");
  add_common(gs, "0");
  gs->add_option("--cuts", params.cuts, "claw,umbrella,hole,clique,net,tent,all");

  auto* orc = app.add_subcommand("oracle", "exhaustive reference solver");
  orc->add_option("problem", problem, "bcmbp mbcmbp vkcut mvvsp mfbp cip gosdc")->required();
  orc->add_option("--instance", instance, "instance file")->required();
  orc->add_option("--k", params.k, "k (vkcut, cip)");
  orc->add_option("--d", params.d, "d (mvvsp)");
  orc->add_option("--out", out, "write the JSON report here");

  std::vector<std::string> files;
  std::string methods;
  auto* be = app.add_subcommand("bench", "CSV table over instances and methods");
  be->add_option("--problem", problem, "problem")->required();
  be->add_option("--methods", methods, "comma list (default: all)");
  be->add_option("--time-limit", time_limit, "seconds per solve");
  be->add_option("--k", params.k, "k (vkcut, cip)");
  be->add_option("--d", params.d, "d (mvvsp)");
  be->add_option("--out", out, "CSV file (default stdout)");
  be->add_option("instances", files, "instance files")->required();

  CLI11_PARSE(app, argc, argv);
  params.limits.time_limit_seconds = time_limit;

  try {
    if (*gen) {
      emit(out, generate(spec));
      return 0;
    }
    if (*orc) {
      emit(out, outcome_json(problem, "oracle", run_solver(problem, "oracle", instance, params)));
      return 0;
    }
    if (*be) {
      std::vector<std::string> list;
      if (methods.empty()) {
        list = methods_for(problem);
      } else {
        std::stringstream ss(methods);
        std::string m;
        while (std::getline(ss, m, ','))
          if (!m.empty()) list.push_back(m);
      }
      BenchReport rep = bench(problem, files, list, params);
      emit(out, rep.csv);
      for (const std::string& e : rep.consistency_errors) std::cerr << "consistency error: " << e << '\n';
      return rep.consistency_errors.empty() ? 0 : 2;
    }
    for (CLI::App* sub : app.get_subcommands()) {
      std::string name = sub->get_name();
      if (method.empty()) method = defaults[name];
      emit(out, outcome_json(name, method, run_solver(name, method, instance, params)));
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 1;
  } catch (const OracleRefusal& e) {
    std::cerr << "oracle refused: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
