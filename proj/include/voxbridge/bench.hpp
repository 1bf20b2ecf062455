#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "voxbridge/arm_model.hpp"
#include "voxbridge/executor.hpp"
#include "voxbridge/metrics.hpp"
#include "voxbridge/planner.hpp"
#include "voxbridge/scenario.hpp"
#include "voxbridge/smoothing.hpp"

namespace voxbridge {

enum class ExecutorKind { NumIk, TpDls };

const char* to_string(ExecutorKind k);
std::optional<ExecutorKind> executor_from_string(const std::string& s);

struct RunConfig {
  std::vector<DensityClass> densities = {DensityClass::Sparse, DensityClass::Medium,
                                         DensityClass::Dense};
  int tasks_per_density = 50;
  std::vector<ActionVariant> planners = {ActionVariant::Original, ActionVariant::NoNorm,
                                         ActionVariant::Improved};
  std::vector<ExecutorKind> executors = {ExecutorKind::NumIk, ExecutorKind::TpDls};
  std::uint64_t base_seed = 12345;
  std::string output_dir = "results";
  int threads = 0;             // 0 = all available, 1 = serial
  bool dump_trajectories = false;
  int generation_retries = 3;  // reseeded retries before a task is skipped

  GridSpec grid;
  double inflation = -1.0;  // negative: use half the voxel diagonal
  double delta = 0.0;       // physical step length; 0: use grid resolution

  TrainConfig train;
  TieBreakConfig tie;
  SmoothingConfig smoothing;
  ExecutorConfig executor;
  FailurePenalties penalties;
  GenerationConfig generation;
};

// Full profile: 40^3 grid at 0.05 m, 3000 episodes per task.
RunConfig default_run_config();
// Reduced profile for quick runs: 20^3 grid at 0.10 m, 1000 episodes.
RunConfig ci_run_config();

// Resolves derived fields (inflation, delta, generation grid) in place.
void finalize_config(RunConfig& cfg);

// Fingerprint of the canonical serialization; stamped into every row.
std::uint64_t config_fingerprint(const RunConfig& cfg);

void save_run_config(const RunConfig& cfg, std::ostream& out);
// Applies directives on top of the given config (partial files are fine).
void apply_run_config(RunConfig& cfg, std::istream& in);
void apply_run_config_file(RunConfig& cfg, const std::string& path);

// --- per-task records -------------------------------------------------------

struct PlannerTaskRecord {
  DensityClass density;
  int task_index = 0;
  std::uint64_t scenario_seed = 0;
  ActionVariant variant;
  PathPolyline path;
  PlannerMetrics metrics;
};

struct ExecTaskRecord {
  DensityClass density;
  int task_index = 0;
  std::uint64_t scenario_seed = 0;
  ExecutorKind kind;
  std::uint64_t reference_hash = 0;
  ExecutionMetrics metrics;
  JointTrajectory trajectory;
};

struct SkipRecord {
  DensityClass density;
  int task_index = 0;
  std::string reason;
};

// --- aggregated rows (one per density x method) ------------------------------

struct PlannerRow {
  std::string density;
  std::string algorithm;
  double success_rate = 0.0;
  double length = 0.0;
  double turns = 0.0;
  double min_clearance = 0.0;
  double steps = 0.0;
  int tasks = 0;
  std::uint64_t config_hash = 0;
};

struct ExecRow {
  std::string density;
  std::string solver;
  double success_rate = 0.0;
  double dq_95 = 0.0;
  double max_vel = 0.0;
  double max_acc = 0.0;
  double joint_margin = 0.0;
  double backtracks = 0.0;
  double time = 0.0;
  int tasks = 0;
  std::uint64_t config_hash = 0;
};

struct PlannerBenchReport {
  std::vector<PlannerRow> rows;
  std::vector<PlannerTaskRecord> records;
  std::vector<SkipRecord> skipped;
  int tasks_attempted = 0;
};

struct ExecBenchReport {
  std::vector<ExecRow> rows;
  std::vector<ExecTaskRecord> records;
  std::vector<SkipRecord> skipped;
  int tasks_attempted = 0;
};

// Obstacle-free scenes report +inf clearance; aggregation caps each task's
// clearance here so means stay finite.
inline constexpr double kClearanceAggregationCap = 1.0;  // m

// All planner variants trained with identical hyperparameters and seeds on
// identical scenarios; deterministic in (cfg, base_seed) for any thread count.
PlannerBenchReport run_planner_benchmark(const RunConfig& cfg, const ArmModel& model);

// Plans once per task with the Improved planner, then executes the identical
// reference path with every selected executor.
ExecBenchReport run_executor_benchmark(const RunConfig& cfg, const ArmModel& model);

std::uint64_t reference_path_hash(const ReferencePath& ref);

// Writes planner_table.csv / executor_table.csv / meta.txt (plus traj/ dumps
// when enabled) into out_dir. Pass nullptr for a benchmark that did not run.
void emit_results(const PlannerBenchReport* planner, const ExecBenchReport* executor,
                  const RunConfig& cfg, const ArmModel& model, const std::string& out_dir);

std::string planner_csv(const std::vector<PlannerRow>& rows);
std::string executor_csv(const std::vector<ExecRow>& rows);
std::vector<PlannerRow> parse_planner_csv(std::istream& in);
std::vector<ExecRow> parse_exec_csv(std::istream& in);

}  // namespace voxbridge
