// Command line for the floor layout toolkit: instance generation, model
// building/export, solving, benchmarking, layout checking and brute-force
// oracle runs.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flp/bb.hpp"
#include "flp/bench.hpp"
#include "flp/cuts.hpp"
#include "flp/formulations.hpp"
#include "flp/instance.hpp"
#include "flp/lp_format.hpp"
#include "flp/oracle.hpp"
#include "flp/simplex.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLimit = 2;
constexpr int kExitInfeasible = 3;

struct BuildFlags {
  std::string instance_path;
  std::string formulation = "ru";
  std::string cuts = "none";
  bool symmetry = false;
  int area_k = 8;
};

void add_build_flags(CLI::App* cmd, BuildFlags& f) {
  cmd->add_option("--instance", f.instance_path, "instance file")->required();
  cmd->add_option("--formulation", f.formulation,
                  "u|u-bigm|gray|bldp1|sp|ru|ext");
  cmd->add_option("--cuts", f.cuts, "none|plus|vi|vi3");
  cmd->add_flag("--symmetry", f.symmetry, "add symmetry breaking rows");
  cmd->add_option("--area-k", f.area_k, "area outer-approximation tangents");
}

flp::NboxModel build_from_flags(const BuildFlags& f,
                                flp::FlpInstance* inst_out = nullptr) {
  flp::FlpInstance inst = flp::load_instance(f.instance_path);
  if (inst_out) *inst_out = inst;
  flp::AssemblyOptions opt;
  opt.kind = flp::parse_formulation(f.formulation);
  opt.cuts = flp::parse_cut_level(f.cuts);
  opt.symmetry = f.symmetry;
  opt.area_tangents = f.area_k;
  if (opt.symmetry) {
    bool any_cost = false;
    for (auto [key, p] : inst.costs)
      if (p > 0) any_cost = true;
    if (!any_cost)
      std::cerr << "warning: symmetry breaking skipped, all costs are zero\n";
  }
  return flp::assemble_nbox(inst, opt);
}

int exit_code_for(flp::MilpStatus s) {
  switch (s) {
    case flp::MilpStatus::Optimal: return kExitOk;
    case flp::MilpStatus::Infeasible: return kExitInfeasible;
    default: return kExitLimit;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"floor layout MIP toolkit"};
  app.require_subcommand(1);
  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "global random seed");

  // gen
  auto* gen = app.add_subcommand("gen", "perturb a base instance");
  std::string gen_base, gen_out;
  double gen_gamma = 0.0, gen_alpha = 5.0;
  gen->add_option("--base", gen_base, "base instance file")->required();
  gen->add_option("--gamma", gen_gamma, "perturbation factor");
  gen->add_option("--alpha", gen_alpha, "aspect ratio to assign");
  gen->add_option("-o,--out", gen_out, "output path")->required();

  // build
  auto* build = app.add_subcommand("build", "build a model and export LP text");
  BuildFlags build_flags;
  add_build_flags(build, build_flags);
  std::string build_out;
  build->add_option("-o,--out", build_out, "output LP path")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "build and solve one instance");
  BuildFlags solve_flags;
  add_build_flags(solve, solve_flags);
  double time_limit = 1e30;
  long node_limit = 0;
  std::string solve_csv, node_log_path;
  solve->add_option("--time-limit", time_limit, "seconds");
  solve->add_option("--node-limit", node_limit, "max nodes (0 = none)");
  solve->add_option("--csv", solve_csv, "append a result row here");
  solve->add_option("--node-log", node_log_path, "write node log CSV here");

  // bench
  auto* bench = app.add_subcommand("bench", "solve a directory of instances");
  std::string bench_dir, bench_csv;
  std::vector<std::string> bench_forms = {"u", "u-bigm", "gray", "bldp1",
                                          "sp", "ru", "ext"};
  std::vector<std::string> bench_cuts = {"none", "plus", "vi", "vi3"};
  bool bench_symmetry = false;
  double bench_time_limit = 60.0;
  int bench_area_k = 8;
  bench->add_option("--dir", bench_dir, "directory of instance files")
      ->required();
  bench->add_option("--csv", bench_csv, "output CSV")->required();
  bench->add_option("--formulations", bench_forms, "formulations to run");
  bench->add_option("--cuts", bench_cuts, "cut levels to run");
  bench->add_flag("--symmetry", bench_symmetry, "add symmetry breaking");
  bench->add_option("--time-limit", bench_time_limit, "seconds per cell");
  bench->add_option("--area-k", bench_area_k, "area tangents");

  // check
  auto* check = app.add_subcommand("check", "verify a layout file");
  std::string check_instance, check_layout_path, check_csv;
  check->add_option("--instance", check_instance)->required();
  check->add_option("--layout", check_layout_path)->required();
  check->add_option("--csv", check_csv, "append a report row here");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force optimum");
  std::string oracle_instance, oracle_layout_out;
  int oracle_area_k = 8;
  bool oracle_refined = false;
  oracle->add_option("--instance", oracle_instance)->required();
  oracle->add_option("--area-k", oracle_area_k, "area tangents");
  oracle->add_flag("--refined", oracle_refined,
                   "enumerate the eight-branch refinement");
  oracle->add_option("-o,--layout-out", oracle_layout_out,
                     "write the optimal layout here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*gen) {
      flp::FlpInstance base = flp::load_instance(gen_base);
      flp::FlpInstance out =
          flp::perturb_instance(base, gen_gamma, gen_alpha, seed);
      flp::save_instance(out, gen_out);
      std::cout << out.name << "\n";
      return kExitOk;
    }

    if (*build) {
      flp::NboxModel nbox = build_from_flags(build_flags);
      flp::save_lp(nbox.model, build_out);
      std::cout << "vars " << nbox.model.num_vars() << " rows "
                << nbox.model.num_rows() << "\n";
      return kExitOk;
    }

    if (*solve) {
      flp::FlpInstance inst;
      flp::NboxModel nbox = build_from_flags(solve_flags, &inst);
      flp::MilpLimits limits;
      limits.time_limit_s = time_limit;
      if (node_limit > 0) limits.node_limit = node_limit;
      std::vector<flp::NodeLogEntry> log;
      flp::SolveResult res = flp::solve_milp(
          nbox.model, limits, node_log_path.empty() ? nullptr : &log);
      if (!node_log_path.empty()) flp::write_node_log_csv(log, node_log_path);

      flp::BenchRow row;
      row.instance = inst.name;
      row.formulation = solve_flags.formulation;
      row.cuts = solve_flags.cuts;
      row.symmetry = solve_flags.symmetry;
      row.status = flp::milp_status_name(res.status);
      row.incumbent = res.incumbent ? res.incumbent_value : 0.0;
      row.bound = res.dual_bound;
      row.gap_pct = res.gap_pct();
      row.nodes = res.nodes;
      row.time_ms = res.wall_ms;
      if (!solve_csv.empty()) flp::append_bench_row(row, solve_csv);
      std::cout << flp::BenchRow::csv_header() << "\n" << row.csv() << "\n";
      return exit_code_for(res.status);
    }

    if (*bench) {
      std::vector<std::string> files;
      for (const auto& e : std::filesystem::directory_iterator(bench_dir))
        if (e.is_regular_file()) files.push_back(e.path().string());
      std::sort(files.begin(), files.end());
      int failures = 0;
      for (const std::string& path : files)
        for (const std::string& form : bench_forms)
          for (const std::string& cut : bench_cuts) {
            flp::BenchRow row;
            row.formulation = form;
            row.cuts = cut;
            row.symmetry = bench_symmetry;
            try {
              flp::FlpInstance inst = flp::load_instance(path);
              row.instance = inst.name;
              flp::AssemblyOptions opt;
              opt.kind = flp::parse_formulation(form);
              opt.cuts = flp::parse_cut_level(cut);
              opt.symmetry = bench_symmetry;
              opt.area_tangents = bench_area_k;
              flp::NboxModel nbox = flp::assemble_nbox(inst, opt);
              flp::MilpLimits limits;
              limits.time_limit_s = bench_time_limit;
              flp::SolveResult res = flp::solve_milp(nbox.model, limits);
              row.status = flp::milp_status_name(res.status);
              row.incumbent = res.incumbent ? res.incumbent_value : 0.0;
              row.bound = res.dual_bound;
              row.gap_pct = res.gap_pct();
              row.nodes = res.nodes;
              row.time_ms = res.wall_ms;
            } catch (const std::exception& ex) {
              if (row.instance.empty()) row.instance = path;
              row.status = "error";
              ++failures;
              std::cerr << "error: " << path << " " << form << " " << cut
                        << ": " << ex.what() << "\n";
            }
            flp::append_bench_row(row, bench_csv);
          }
      return failures == 0 ? kExitOk : kExitError;
    }

    if (*check) {
      flp::FlpInstance inst = flp::load_instance(check_instance);
      std::ifstream in(check_layout_path);
      if (!in) throw flp::InstanceError("cannot open layout file");
      std::ostringstream ss;
      ss << in.rdbuf();
      flp::Layout layout = flp::parse_layout(ss.str(), inst.num_boxes());
      flp::FeasibilityReport rep = flp::check_layout(inst, layout);
      std::cout << rep.text();
      if (!check_csv.empty()) {
        bool header = !std::filesystem::exists(check_csv) ||
                      std::filesystem::file_size(check_csv) == 0;
        std::ofstream csv(check_csv, std::ios::app);
        if (header) csv << flp::FeasibilityReport::csv_header() << "\n";
        csv << rep.csv_row(inst.name) << "\n";
      }
      return rep.feasible ? kExitOk : kExitInfeasible;
    }

    if (*oracle) {
      flp::FlpInstance inst = flp::load_instance(oracle_instance);
      flp::BruteForceResult res =
          flp::brute_force_optimum(inst, oracle_area_k, oracle_refined);
      if (!res.feasible) {
        std::cout << "infeasible\n";
        return kExitInfeasible;
      }
      std::cout << "optimal " << flp::format_number(res.value) << " ("
                << res.lp_count << " branch LPs)\n";
      std::cout << flp::write_layout(res.layout);
      if (!oracle_layout_out.empty()) {
        std::ofstream out(oracle_layout_out, std::ios::binary);
        out << flp::write_layout(res.layout);
      }
      return kExitOk;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
