#include "blocker/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "blocker/clique_interdiction.hpp"
#include "blocker/flow_blocker.hpp"
#include "blocker/generators.hpp"
#include "blocker/gosdc.hpp"
#include "blocker/graph_io.hpp"
#include "blocker/instance_io.hpp"
#include "blocker/matching_blocker.hpp"
#include "blocker/oracles.hpp"
#include "blocker/path_blocker.hpp"
#include "blocker/vertex_kcut.hpp"

namespace blocker {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string number(double v) {
  if (std::isnan(v)) return "";
  if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void fill(RunOutcome& out, MipStatus status, const SolveReport& report) {
  out.status = to_string(status);
  out.optimal = status == MipStatus::kOptimal;
  out.nodes = report.nodes;
  out.cuts = report.total_cuts();
}

std::int64_t comment_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string c, k;
    long long v = 0;
    if (ls >> c >> k >> v && c == "c" && k == key) return v;
  }
  return -1;
}

MbcmbpInstance mbcmbp_from(const BipartiteFile& f) {
  if (f.parts.empty()) throw InputError("mbcmbp: instance has no part lines");
  MbcmbpInstance inst{f.g, f.parts};
  validate(inst);
  return inst;
}

MvvspInstance mvvsp_from(const std::string& path, std::int64_t d) {
  std::string text = read_text(path);
  std::istringstream in(text);
  DigraphFile f = read_digraph(in);
  if (d < 0) {
    std::int64_t sp = comment_value(text, "sp");
    if (sp < 0) {
      MvvspInstance probe{f.g, f.s, f.t, 0};
      auto dist = residual_distance(probe, {});
      if (!dist) throw InputError("mvvsp: t unreachable and no --d given");
      sp = *dist;
    }
    d = sp + 1;
  }
  MvvspInstance inst{f.g, f.s, f.t, d};
  validate(inst);
  return inst;
}

MfbpInstance flow_from(const std::string& path) {
  std::istringstream in(read_text(path));
  return read_flow(in);
}

GosdcInstance gosdc_from(const std::string& path) {
  std::istringstream in(read_text(path));
  return read_gosdc(in);
}

BipartiteFile bipartite_from(const std::string& path) {
  std::istringstream in(read_text(path));
  return read_bipartite(in);
}

nlohmann::json one_based(const VertexSet& s) {
  nlohmann::json a = nlohmann::json::array();
  for (int v : s) a.push_back(v + 1);
  return a;
}

RunOutcome run_bcmbp(const std::string& method, const std::string& path) {
  BcmbpInstance inst{bipartite_from(path).g};
  RunOutcome out;
  if (method == "oracle") {
    BcmbpOracle o = oracle_bcmbp(inst);
    out.status = "optimal";
    out.optimal = true;
    out.objective = o.kappa;
    out.detail["blocker"] = one_based(o.blocker);
    return out;
  }
  if (method != "lp") throw InputError("bcmbp: method is lp or oracle");
  KappaResult r = kappa(inst);
  out.status = "optimal";
  out.optimal = true;
  out.objective = r.kappa;
  out.detail["witness_u"] = one_based(r.witness_u);
  out.detail["lp_solves"] = r.lp_solves;
  out.detail["max_fractionality"] = r.max_fractionality;
  return out;
}

RunOutcome run_mbcmbp(const std::string& method, const std::string& path, const RunParams& p) {
  MbcmbpInstance inst = mbcmbp_from(bipartite_from(path));
  RunOutcome out;
  if (method == "oracle") {
    MbcmbpOracle o = oracle_mbcmbp(inst);
    out.status = "optimal";
    out.optimal = true;
    out.objective = o.z;
    for (const VertexSet& s : o.partition_v) out.detail["partition_v"].push_back(one_based(s));
    return out;
  }
  MbcmbpOptions opt;
  opt.limits = p.limits;
  if (method == "hall") opt.pair_cuts = false;
  else if (method != "bc") throw InputError("mbcmbp: method is bc, hall or oracle");
  MbcmbpResult r = solve_mbcmbp(inst, opt);
  fill(out, r.status, r.report);
  out.objective = r.status == MipStatus::kInfeasible ? NAN : r.solution.z;
  for (const VertexSet& s : r.solution.partition_v) out.detail["partition_v"].push_back(one_based(s));
  out.detail["cuts"] = r.report.cuts_added;
  return out;
}

RunOutcome run_vkcut(const std::string& method, const std::string& path, const RunParams& p) {
  KCutInstance inst{read_dimacs_file(path), p.k};
  RunOutcome out;
  if (method == "oracle") {
    VkcutOracle o = oracle_vkcut(inst);
    out.status = o.feasible ? "optimal" : "infeasible";
    out.optimal = o.feasible;
    out.objective = o.feasible ? o.kept : NAN;
    out.detail["cut"] = one_based(o.cut);
    return out;
  }
  KCutOptions opt;
  opt.limits = p.limits;
  KCutResult r;
  if (method == "compact") r = solve_compact(inst, opt);
  else if (method == "extended") r = solve_extended(inst, opt);
  else throw InputError("vkcut: method is compact, extended or oracle");
  fill(out, r.status, r.report);
  bool has = r.status == MipStatus::kOptimal || r.status == MipStatus::kFeasible ||
             (r.status == MipStatus::kLimit && !r.solution.components.empty());
  out.objective = has ? r.solution.kept() : NAN;
  out.detail["cut"] = one_based(r.solution.cut);
  for (const VertexSet& c : r.solution.components) out.detail["components"].push_back(one_based(c));
  out.detail["columns_added"] = r.report.columns_added;
  return out;
}

RunOutcome run_mvvsp(const std::string& method, const std::string& path, const RunParams& p) {
  MvvspInstance inst = mvvsp_from(path, p.d);
  RunOutcome out;
  out.detail["d"] = inst.d;
  if (method == "oracle") {
    MvvspOracle o = oracle_mvvsp(inst);
    out.status = o.feasible ? "optimal" : "infeasible";
    out.optimal = o.feasible;
    out.objective = o.feasible ? static_cast<double>(o.blocker.size()) : NAN;
    out.detail["blocker"] = one_based(o.blocker);
    return out;
  }
  MvvspOptions opt;
  opt.limits = p.limits;
  if (method == "plain") opt.minimalize = false;
  else if (method != "bc") throw InputError("mvvsp: method is bc, plain or oracle");
  MvvspResult r = solve_mvvsp(inst, opt);
  fill(out, r.status, r.report);
  out.objective = r.status == MipStatus::kInfeasible ? NAN : static_cast<double>(r.blocker.size());
  out.detail["blocker"] = one_based(r.blocker);
  return out;
}

RunOutcome run_mfbp(const std::string& method, const std::string& path, const RunParams& p) {
  MfbpInstance inst = flow_from(path);
  RunOutcome out;
  if (method == "oracle") {
    MfbpOracle o = oracle_mfbp(inst);
    out.status = "optimal";
    out.optimal = true;
    out.objective = static_cast<double>(o.cost);
    out.detail["blocked"] = one_based(o.blocked);
    return out;
  }
  MfbpOptions opt;
  opt.limits = p.limits;
  MfbpResult r;
  if (method == "compact") r = solve_mfbp_compact(inst, opt);
  else if (method == "benders") r = solve_mfbp_benders(inst, opt);
  else if (method == "benders-notf") {
    opt.target_flow_cuts = false;
    r = solve_mfbp_benders(inst, opt);
  } else {
    throw InputError("mfbp: method is compact, benders, benders-notf or oracle");
  }
  fill(out, r.status, r.report);
  out.objective = static_cast<double>(r.cost);
  out.detail["blocked"] = one_based(r.blocked);  // arc numbers, 1-based
  out.detail["preprocessed"] = r.preprocessed;
  return out;
}

RunOutcome run_cip(const std::string& method, const std::string& path, const RunParams& p) {
  CipInstance inst{read_dimacs_file(path), p.k};
  RunOutcome out;
  if (p.bounds_only) {
    BoundsReport b = compute_bounds(inst);
    out.status = "bounds";
    out.objective = b.lmax;
    out.detail["lmin"] = b.lmin;
    out.detail["lmax"] = b.lmax;
    for (const HeuristicPolicy& h : b.policies)
      out.detail["heuristics"][h.name] = {{"theta", h.policy.theta},
                                          {"interdicted", one_based(h.policy.interdicted)}};
    return out;
  }
  if (method == "oracle") {
    CipOracle o = oracle_cip(inst);
    out.status = "optimal";
    out.optimal = true;
    out.objective = o.theta;
    out.detail["interdicted"] = one_based(o.interdicted);
    return out;
  }
  CipOptions opt;
  opt.limits = p.limits;
  if (method == "nopre") opt.preprocess = false;
  else if (method != "bc") throw InputError("cip: method is bc, nopre or oracle");
  CipResult r = solve_cip(inst, opt);
  fill(out, r.status, r.report);
  out.objective = r.policy.theta;
  out.detail["interdicted"] = one_based(r.policy.interdicted);
  out.detail["lmin"] = r.bounds.lmin;
  out.detail["lmax"] = r.bounds.lmax;
  return out;
}

RunOutcome run_gosdc(const std::string& method, const std::string& path, const RunParams& p) {
  GosdcInstance inst = gosdc_from(path);
  RunOutcome out;
  auto starts = [&](const std::vector<std::int64_t>& s) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < s.size(); ++i) j[std::to_string(inst.jobs[i].id)] = s[i];
    return j;
  };
  if (method == "oracle") {
    GosdcOracle o = oracle_gosdc(inst);
    out.status = "optimal";
    out.optimal = true;
    out.objective = static_cast<double>(o.makespan);
    out.detail["start"] = starts(o.start);
    return out;
  }
  GosdcOptions opt;
  opt.limits = p.limits;
  if (!p.cuts.empty()) {
    opt.families = parse_families(p.cuts);
  } else {
    int m = 0;
    try {
      std::size_t used = 0;
      m = std::stoi(method, &used);
      if (used != method.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("gosdc: method is 0..7 or oracle");
    }
    opt.families = method_families(m);
  }
  GosdcResult r = solve_gosdc(inst, opt);
  fill(out, r.status, r.report);
  out.objective = r.start.empty() ? NAN : static_cast<double>(r.makespan);
  out.detail["start"] = starts(r.start);
  out.detail["cuts"] = r.report.cuts_added;
  return out;
}

}  // namespace

std::string generate(const GenSpec& spec) {
  if (spec.density <= 0 || spec.density > 100) throw InputError("gen: density must be in (0,100]");
  SplitMix64 rng(spec.seed);
  std::ostringstream out;
  const std::string& p = spec.problem;
  out << "c " << p << " seed " << spec.seed << '\n';
  if (p == "bcmbp" || p == "mbcmbp") {
    BipartiteFile f{gen_bipartite(spec.size_u, spec.size_v, spec.density, rng), {}};
    if (p == "mbcmbp") {
      if (spec.parts < 1 || spec.parts > spec.size_u) throw InputError("gen: need 1 <= parts <= |U|");
      std::vector<int> order(spec.size_u);
      for (int u = 0; u < spec.size_u; ++u) order[u] = u;
      for (int i = spec.size_u - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<std::size_t>(rng.uniform(0, i))]);
      f.parts.resize(spec.parts);
      for (int i = 0; i < spec.size_u; ++i) f.parts[i % spec.parts].push_back(order[i]);
      for (VertexSet& s : f.parts) std::sort(s.begin(), s.end());
    }
    write_bipartite(out, f);
  } else if (p == "vkcut" || p == "cip") {
    write_dimacs(out, gen_graph(spec.n, spec.density, rng));
  } else if (p == "mvvsp") {
    MvvspInstance inst = gen_mvvsp(spec.n, spec.density, rng);
    auto sweep = mvvsp_sweep(inst);
    if (sweep) out << "c sp " << sweep->sp << "\nc disc " << sweep->disc << '\n';
    write_digraph(out, {inst.g, inst.s, inst.t});
  } else if (p == "mfbp") {
    write_flow(out, gen_mfbp(spec.n, spec.arcs, rng));
  } else if (p == "gosdc") {
    write_gosdc(out, gen_gosdc(spec.machines, spec.jobs, spec.density, rng));
  } else {
    throw InputError("gen: unknown problem '" + p + "'");
  }
  return out.str();
}

std::vector<std::string> methods_for(const std::string& problem) {
  if (problem == "bcmbp") return {"lp", "oracle"};
  if (problem == "mbcmbp") return {"bc", "hall", "oracle"};
  if (problem == "vkcut") return {"compact", "extended", "oracle"};
  if (problem == "mvvsp") return {"bc", "plain", "oracle"};
  if (problem == "mfbp") return {"compact", "benders", "benders-notf", "oracle"};
  if (problem == "cip") return {"bc", "nopre", "oracle"};
  if (problem == "gosdc") return {"0", "1", "2", "3", "4", "5", "6", "7", "oracle"};
  throw InputError("unknown problem '" + problem + "'");
}

RunOutcome run_solver(const std::string& problem, const std::string& method,
                      const std::string& path, const RunParams& params) {
  auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  if (problem == "bcmbp") out = run_bcmbp(method, path);
  else if (problem == "mbcmbp") out = run_mbcmbp(method, path, params);
  else if (problem == "vkcut") out = run_vkcut(method, path, params);
  else if (problem == "mvvsp") out = run_mvvsp(method, path, params);
  else if (problem == "mfbp") out = run_mfbp(method, path, params);
  else if (problem == "cip") out = run_cip(method, path, params);
  else if (problem == "gosdc") out = run_gosdc(method, path, params);
  else throw InputError("unknown problem '" + problem + "'");
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<std::string> check_consistency(const std::vector<BenchRow>& rows) {
  std::vector<std::string> errors;
  std::vector<std::string> files;
  for (const BenchRow& r : rows)
    if (std::find(files.begin(), files.end(), r.instance) == files.end()) files.push_back(r.instance);
  for (const std::string& f : files) {
    const BenchRow* first = nullptr;
    for (const BenchRow& r : rows) {
      if (r.instance != f || !r.outcome.optimal) continue;
      if (!first) {
        first = &r;
      } else if (std::fabs(first->outcome.objective - r.outcome.objective) > 1e-6) {
        errors.push_back(f + ": " + first->method + "=" + number(first->outcome.objective) +
                         " vs " + r.method + "=" + number(r.outcome.objective));
      }
    }
  }
  return errors;
}

std::string bench_csv(const std::vector<BenchRow>& rows, const std::vector<std::string>& methods,
                      const std::vector<std::string>& errors) {
  std::ostringstream csv;
  csv << "instance,method,cpu_seconds,nodes,cuts,objective,opt,status,error\n";
  for (const BenchRow& r : rows) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    csv << r.instance << ',' << r.method << ',' << fixed2(r.outcome.seconds) << ','
        << r.outcome.nodes << ',' << r.outcome.cuts << ',' << number(r.outcome.objective) << ','
        << (r.outcome.optimal ? 1 : 0) << ',' << r.outcome.status << ',' << err << '\n';
  }
  // aggregates per method
  for (const std::string& m : methods) {
    double secs = 0.0, nodes = 0.0, cuts = 0.0;
    int count = 0, solved = 0;
    for (const BenchRow& r : rows) {
      if (r.method != m) continue;
      ++count;
      secs += r.outcome.seconds;
      nodes += static_cast<double>(r.outcome.nodes);
      cuts += static_cast<double>(r.outcome.cuts);
      solved += r.outcome.optimal ? 1 : 0;
    }
    if (count == 0) continue;
    csv << "average," << m << ',' << fixed2(secs / count) << ',' << fixed2(nodes / count) << ','
        << fixed2(cuts / count) << ",," << solved << '/' << count << ",,\n";
  }
  csv << "consistency,," << ",,,," << (errors.empty() ? "ok" : "ERROR") << ",,";
  for (const std::string& e : errors) csv << e << ';';
  csv << '\n';
  return csv.str();
}

BenchReport bench(const std::string& problem, const std::vector<std::string>& instances,
                  const std::vector<std::string>& methods, const RunParams& params) {
  BenchReport rep;
  std::vector<std::string> files = instances;
  std::sort(files.begin(), files.end());
  for (const std::string& f : files)
    for (const std::string& m : methods) rep.rows.push_back({f, m, {}, {}});
  const int total = static_cast<int>(rep.rows.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < total; ++i) {
    BenchRow& row = rep.rows[i];
    try {
      row.outcome = run_solver(problem, row.method, row.instance, params);
    } catch (const std::exception& e) {
      row.outcome.status = "error";
      row.error = e.what();
    }
    if (row.outcome.status == "limit" || row.outcome.status == "feasible")
      row.outcome.seconds = params.limits.time_limit_seconds;
  }

  rep.consistency_errors = check_consistency(rep.rows);
  rep.csv = bench_csv(rep.rows, methods, rep.consistency_errors);
  return rep;
}

}  // namespace blocker
