// Benchmark harness: generates seeded task suites, runs the selected
// planner and executor matrices, and writes the aggregated tables.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "voxbridge/bench.hpp"

using namespace voxbridge;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void print_rows(const std::vector<PlannerRow>& rows) {
  std::printf("%-8s %-9s %8s %9s %8s %13s %8s\n", "density", "planner", "success", "length",
              "turns", "min_clearance", "steps");
  for (const PlannerRow& r : rows) {
    std::printf("%-8s %-9s %8.3f %9.3f %8.2f %13.3f %8.2f\n", r.density.c_str(),
                r.algorithm.c_str(), r.success_rate, r.length, r.turns, r.min_clearance, r.steps);
  }
}

void print_rows(const std::vector<ExecRow>& rows) {
  std::printf("%-8s %-7s %8s %10s %10s %12s %12s %10s\n", "density", "solver", "success", "dq_95",
              "max_vel", "max_acc", "joint_margin", "backtracks");
  for (const ExecRow& r : rows) {
    std::printf("%-8s %-7s %8.3f %10.4f %10.3f %12.2f %12.4f %10.2f\n", r.density.c_str(),
                r.solver.c_str(), r.success_rate, r.dq_95, r.max_vel, r.max_acc, r.joint_margin,
                r.backtracks);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Voxel planner / continuous execution benchmark"};

  std::string density_list = "sparse,medium,dense";
  std::string planner_list = "original,nonorm,improved";
  std::string executor_list = "numik,tpdls";
  std::string profile = "full";
  std::string config_path;
  std::string out_dir = "results";
  std::string model_path;
  int tasks = 50;
  std::uint64_t seed = 12345;
  int threads = 0;
  bool dump_traj = false;
  bool skip_planner = false;
  bool skip_executor = false;

  app.add_option("--density", density_list, "Density classes to run (comma list)")
      ->capture_default_str();
  app.add_option("--tasks", tasks, "Tasks per density class")->capture_default_str();
  app.add_option("--planners", planner_list, "Planner variants (comma list)")
      ->capture_default_str();
  app.add_option("--executors", executor_list, "Execution layers (comma list)")
      ->capture_default_str();
  app.add_option("--seed", seed, "Base seed for the whole suite")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--config", config_path, "Config file applied on top of the profile");
  app.add_option("--model", model_path, "Arm model file (default: built-in model)");
  app.add_option("--profile", profile, "Config profile: full or ci")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_flag("--dump-trajectories", dump_traj, "Write per-task joint trajectories");
  app.add_flag("--no-planner", skip_planner, "Skip the planner benchmark");
  app.add_flag("--no-executor", skip_executor, "Skip the executor benchmark");

  CLI11_PARSE(app, argc, argv);

  RunConfig cfg;
  if (profile == "full") {
    cfg = default_run_config();
  } else if (profile == "ci") {
    cfg = ci_run_config();
  } else {
    std::cerr << "unknown profile '" << profile << "' (expected full or ci)\n";
    return 2;
  }
  if (!config_path.empty()) apply_run_config_file(cfg, config_path);

  cfg.tasks_per_density = tasks;
  cfg.base_seed = seed;
  cfg.threads = threads;
  cfg.output_dir = out_dir;
  cfg.dump_trajectories = dump_traj;

  cfg.densities.clear();
  for (const auto& name : split_list(density_list)) {
    const auto d = density_from_string(name);
    if (!d) {
      std::cerr << "unknown density '" << name << "'\n";
      return 2;
    }
    cfg.densities.push_back(*d);
  }
  cfg.planners.clear();
  for (const auto& name : split_list(planner_list)) {
    const auto p = variant_from_string(name);
    if (!p) {
      std::cerr << "unknown planner '" << name << "'\n";
      return 2;
    }
    cfg.planners.push_back(*p);
  }
  cfg.executors.clear();
  for (const auto& name : split_list(executor_list)) {
    const auto e = executor_from_string(name);
    if (!e) {
      std::cerr << "unknown executor '" << name << "'\n";
      return 2;
    }
    cfg.executors.push_back(*e);
  }
  finalize_config(cfg);

  const ArmModel model = model_path.empty() ? ArmModel::default_model() : load_arm_model(model_path);

  try {
    PlannerBenchReport planner_report;
    ExecBenchReport exec_report;
    const bool run_planner = !skip_planner && !cfg.planners.empty();
    const bool run_executor = !skip_executor && !cfg.executors.empty();

    if (run_planner) {
      planner_report = run_planner_benchmark(cfg, model);
      std::cout << "planner benchmark: " << planner_report.tasks_attempted << " tasks attempted, "
                << planner_report.skipped.size() << " skipped\n";
      print_rows(planner_report.rows);
    }
    if (run_executor) {
      exec_report = run_executor_benchmark(cfg, model);
      std::cout << "executor benchmark: " << exec_report.tasks_attempted << " tasks attempted, "
                << exec_report.skipped.size() << " skipped\n";
      print_rows(exec_report.rows);
    }
    emit_results(run_planner ? &planner_report : nullptr, run_executor ? &exec_report : nullptr,
                 cfg, model, out_dir);
    std::cout << "results written to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
