#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crossmin/errors.hpp"
#include "crossmin/evaluate.hpp"
#include "crossmin/format.hpp"
#include "crossmin/normalize.hpp"
#include "crossmin/oracle.hpp"
#include "crossmin/reduce.hpp"
#include "crossmin/render.hpp"
#include "crossmin/solve.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 2;
constexpr int kExitInternal = 70;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw crossmin::DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw crossmin::DataError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace crossmin;

  CLI::App app{"crossing minimization for perturbed piecewise-linear drawings"};
  app.set_version_flag("--version", "crossmin 0.1.0");
  app.require_subcommand(1);

  // normalize
  std::string nrm_in, nrm_out;
  auto* nrm = app.add_subcommand("normalize", "raw drawing -> instance");
  nrm->add_option("drawing", nrm_in)->required();
  nrm->add_option("-o,--output", nrm_out)->required();

  // solve
  std::string slv_in;
  bool slv_trace = false;
  auto* slv = app.add_subcommand("solve", "minimum crossing count of a spur-free cycle instance");
  slv->add_option("instance", slv_in)->required();
  slv->add_flag("--trace", slv_trace);

  // eval
  std::string evl_in, evl_orders;
  bool evl_per_cluster = false;
  auto* evl = app.add_subcommand("eval", "crossing count of the given pipe orders");
  evl->add_option("instance", evl_in)->required();
  evl->add_option("--orders", evl_orders)->required();
  evl->add_flag("--per-cluster", evl_per_cluster);

  // oracle
  std::string orc_in, orc_out;
  long long orc_budget = 1000000;
  auto* orc = app.add_subcommand("oracle", "exact minimum over all pipe orders");
  orc->add_option("instance", orc_in)->required();
  orc->add_option("--budget", orc_budget);
  orc->add_option("-o,--output", orc_out, "argmin orders file (default: <instance>.orders)");

  // reduce
  std::string red_in, red_out;
  bool red_cycle = false;
  auto* red = app.add_subcommand("reduce", "3CNF -> hardness instance with threshold K");
  red->add_option("cnf", red_in)->required();
  red->add_flag("--cycle", red_cycle);
  red->add_option("-o,--output", red_out)->required();

  // witness
  std::string wit_in, wit_assign, wit_out;
  bool wit_cycle = false;
  auto* wit = app.add_subcommand("witness", "orders achieving K for a satisfying assignment");
  wit->add_option("cnf", wit_in)->required();
  wit->add_option("--assignment", wit_assign)->required();
  wit->add_flag("--cycle", wit_cycle);
  wit->add_option("-o,--output", wit_out)->required();

  // render
  std::string ren_in, ren_orders, ren_out;
  auto* ren = app.add_subcommand("render", "static SVG of the host drawing");
  ren->add_option("instance", ren_in)->required();
  ren->add_option("--orders", ren_orders);
  ren->add_option("-o,--output", ren_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*nrm) {
      RawDrawing raw = parse_raw_drawing(slurp(nrm_in));
      Instance inst = normalize(raw);
      spit(nrm_out, serialize_instance(inst));
      auto spurs = detect_spurs(inst);
      auto forks = detect_forks(raw);
      std::cout << "clusters = " << inst.host.clusters.size()
                << ", pipes = " << inst.host.pipes.size() << "\n";
      std::cout << "spurs = " << spurs.size();
      for (const auto& s : spurs) std::cout << " " << s;
      std::cout << "\n";
      std::cout << "forks = " << forks.size();
      for (const auto& f : forks) std::cout << " " << f.vertex << "(in " << f.inside << ")";
      std::cout << "\n";
    } else if (*slv) {
      Instance inst = parse_instance(slurp(slv_in));
      SolveResult r = solve(inst);
      if (slv_trace) std::cout << format_trace(r.trace);
      std::cout << "cr = " << r.cr << "\n";
    } else if (*evl) {
      Instance inst = parse_instance(slurp(evl_in));
      require_valid(inst);
      CombInstance m = attach(inst);
      EvalResult r = evaluate(m, import_orders(m, parse_orders(slurp(evl_orders))));
      std::cout << "total = " << r.total << "\n";
      if (evl_per_cluster)
        for (const auto& [c, k] : r.per_cluster)
          std::cout << "cluster " << m.clusters[c].name << " : " << k << "\n";
    } else if (*orc) {
      Instance inst = parse_instance(slurp(orc_in));
      require_valid(inst);
      OracleOptions opt;
      opt.budget = orc_budget;
      GeomOracleResult r = oracle(inst, opt);
      std::string out_path = orc_out.empty() ? orc_in + ".orders" : orc_out;
      spit(out_path, serialize_orders(r.argmin));
      std::cout << "min = " << r.min << "\n";
      std::cout << "orders written to " << out_path << "\n";
    } else if (*red) {
      Cnf cnf = parse_dimacs(slurp(red_in));
      ReductionOutput out = red_cycle ? build_cycle_instance(cnf) : build_paths_instance(cnf);
      spit(red_out, serialize_instance(out.instance));
      spit(red_out + ".provenance.json", provenance_json(out));
      std::cout << "K = " << out.K << ", cr2 = " << out.cr2 << "\n";
    } else if (*wit) {
      Cnf cnf = parse_dimacs(slurp(wit_in));
      ReductionOutput out = wit_cycle ? build_cycle_instance(cnf) : build_paths_instance(cnf);
      Assignment tau = parse_assignment(slurp(wit_assign), cnf.num_vars);
      if (!satisfies(cnf, tau)) throw DataError("assignment does not satisfy the formula");
      PipeOrderSet orders = build_witness(out, tau);
      spit(wit_out, serialize_orders(orders));
      EvalResult r = evaluate(out.instance, orders);
      std::cout << "total = " << r.total << ", K = " << out.K << "\n";
    } else if (*ren) {
      Instance inst = parse_instance(slurp(ren_in));
      std::optional<PipeOrderSet> orders;
      if (!ren_orders.empty()) orders = parse_orders(slurp(ren_orders));
      spit(ren_out, render_svg(inst, orders));
    }
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
