#include "voxbridge/bench.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace voxbridge {

const char* to_string(ExecutorKind k) {
  switch (k) {
    case ExecutorKind::NumIk: return "numik";
    case ExecutorKind::TpDls: return "tpdls";
  }
  return "?";
}

std::optional<ExecutorKind> executor_from_string(const std::string& s) {
  if (s == "numik") return ExecutorKind::NumIk;
  if (s == "tpdls") return ExecutorKind::TpDls;
  return std::nullopt;
}

RunConfig default_run_config() {
  RunConfig cfg;
  finalize_config(cfg);
  return cfg;
}

RunConfig ci_run_config() {
  RunConfig cfg;
  cfg.grid.resolution = 0.10;
  cfg.grid.dims = VoxelIndex(20, 20, 20);
  cfg.train.episodes = 1000;
  finalize_config(cfg);
  return cfg;
}

void finalize_config(RunConfig& cfg) {
  if (cfg.inflation < 0.0) cfg.inflation = cfg.grid.default_inflation();
  if (cfg.delta <= 0.0) cfg.delta = cfg.grid.resolution;
  cfg.generation.grid = cfg.grid;
  cfg.generation.inflation = cfg.inflation;
  cfg.generation.ik_tolerance = cfg.executor.eps_p;
}

namespace {

std::string join_names(const std::vector<DensityClass>& v) {
  std::string s;
  for (const auto d : v) s += (s.empty() ? "" : ",") + std::string(to_string(d));
  return s;
}
std::string join_names(const std::vector<ActionVariant>& v) {
  std::string s;
  for (const auto d : v) s += (s.empty() ? "" : ",") + std::string(to_string(d));
  return s;
}
std::string join_names(const std::vector<ExecutorKind>& v) {
  std::string s;
  for (const auto d : v) s += (s.empty() ? "" : ",") + std::string(to_string(d));
  return s;
}

std::vector<std::string> split_csv_list(const std::string& s) {
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

}  // namespace

void save_run_config(const RunConfig& cfg, std::ostream& out) {
  out << std::setprecision(17);
  out << "densities " << join_names(cfg.densities) << "\n";
  out << "tasks_per_density " << cfg.tasks_per_density << "\n";
  out << "planners " << join_names(cfg.planners) << "\n";
  out << "executors " << join_names(cfg.executors) << "\n";
  out << "base_seed " << cfg.base_seed << "\n";
  out << "threads " << cfg.threads << "\n";
  out << "dump_trajectories " << (cfg.dump_trajectories ? 1 : 0) << "\n";
  out << "generation_retries " << cfg.generation_retries << "\n";
  out << "grid_origin " << cfg.grid.origin.x() << " " << cfg.grid.origin.y() << " "
      << cfg.grid.origin.z() << "\n";
  out << "grid_resolution " << cfg.grid.resolution << "\n";
  out << "grid_dims " << cfg.grid.dims.x() << " " << cfg.grid.dims.y() << " " << cfg.grid.dims.z()
      << "\n";
  out << "inflation " << cfg.inflation << "\n";
  out << "delta " << cfg.delta << "\n";
  out << "train_alpha " << cfg.train.alpha << "\n";
  out << "train_gamma " << cfg.train.gamma << "\n";
  out << "train_epsilon_start " << cfg.train.epsilon_start << "\n";
  out << "train_epsilon_end " << cfg.train.epsilon_end << "\n";
  out << "train_episodes " << cfg.train.episodes << "\n";
  out << "train_max_steps " << cfg.train.max_steps_per_episode << "\n";
  out << "reward_goal " << cfg.train.reward_goal << "\n";
  out << "reward_collision " << cfg.train.reward_collision << "\n";
  out << "reward_step " << cfg.train.reward_step << "\n";
  out << "tie_epsilon_q " << cfg.tie.epsilon_q << "\n";
  out << "tie_epsilon_q_rel " << cfg.tie.epsilon_q_rel << "\n";
  out << "tie_w_theta " << cfg.tie.w_theta << "\n";
  out << "tie_w_d " << cfg.tie.w_d << "\n";
  out << "tie_lookahead " << cfg.tie.lookahead_steps << "\n";
  out << "smooth_s_macro " << cfg.smoothing.s_macro << "\n";
  out << "smooth_d_max " << cfg.smoothing.d_max << "\n";
  out << "smooth_arc_samples " << cfg.smoothing.arc_samples << "\n";
  out << "exec_lambda " << cfg.executor.lambda << "\n";
  out << "exec_k_p " << cfg.executor.k_p << "\n";
  out << "exec_alpha_c " << cfg.executor.alpha_c << "\n";
  out << "exec_dq_max_norm " << cfg.executor.dq_max_norm << "\n";
  out << "exec_dq_max_joint";
  for (int j = 0; j < kNumJoints; ++j) out << " " << cfg.executor.dq_max_joint[j];
  out << "\n";
  out << "exec_eps_p " << cfg.executor.eps_p << "\n";
  out << "exec_k_max_iters " << cfg.executor.k_max_iters << "\n";
  out << "exec_dt " << cfg.executor.dt << "\n";
  out << "numik_lambda " << cfg.executor.numik_lambda << "\n";
  out << "numik_max_iters " << cfg.executor.numik_max_iters << "\n";
  out << "penalty_length " << cfg.penalties.length << "\n";
  out << "penalty_turns " << cfg.penalties.turns << "\n";
  out << "penalty_steps " << cfg.penalties.steps << "\n";
  out << "gen_joint_margin " << cfg.generation.joint_margin << "\n";
  out << "gen_max_attempts " << cfg.generation.max_attempts << "\n";
  out << "gen_radius_min " << cfg.generation.radius_min << "\n";
  out << "gen_radius_max " << cfg.generation.radius_max << "\n";
  out << "gen_clear_radius " << cfg.generation.clear_radius << "\n";
  out << "gen_min_task_distance " << cfg.generation.min_task_distance << "\n";
}

void apply_run_config(RunConfig& cfg, std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;

    auto fail = [&] { throw std::runtime_error("config: malformed line: " + line); };
    if (key == "densities") {
      std::string v;
      ls >> v;
      cfg.densities.clear();
      for (const auto& name : split_csv_list(v)) {
        const auto d = density_from_string(name);
        if (!d) fail();
        cfg.densities.push_back(*d);
      }
    } else if (key == "planners") {
      std::string v;
      ls >> v;
      cfg.planners.clear();
      for (const auto& name : split_csv_list(v)) {
        const auto p = variant_from_string(name);
        if (!p) fail();
        cfg.planners.push_back(*p);
      }
    } else if (key == "executors") {
      std::string v;
      ls >> v;
      cfg.executors.clear();
      for (const auto& name : split_csv_list(v)) {
        const auto e = executor_from_string(name);
        if (!e) fail();
        cfg.executors.push_back(*e);
      }
    } else if (key == "tasks_per_density") {
      ls >> cfg.tasks_per_density;
    } else if (key == "base_seed") {
      ls >> cfg.base_seed;
    } else if (key == "threads") {
      ls >> cfg.threads;
    } else if (key == "dump_trajectories") {
      int v;
      ls >> v;
      cfg.dump_trajectories = v != 0;
    } else if (key == "generation_retries") {
      ls >> cfg.generation_retries;
    } else if (key == "grid_origin") {
      ls >> cfg.grid.origin.x() >> cfg.grid.origin.y() >> cfg.grid.origin.z();
    } else if (key == "grid_resolution") {
      ls >> cfg.grid.resolution;
    } else if (key == "grid_dims") {
      ls >> cfg.grid.dims.x() >> cfg.grid.dims.y() >> cfg.grid.dims.z();
    } else if (key == "inflation") {
      ls >> cfg.inflation;
    } else if (key == "delta") {
      ls >> cfg.delta;
    } else if (key == "train_alpha") {
      ls >> cfg.train.alpha;
    } else if (key == "train_gamma") {
      ls >> cfg.train.gamma;
    } else if (key == "train_epsilon_start") {
      ls >> cfg.train.epsilon_start;
    } else if (key == "train_epsilon_end") {
      ls >> cfg.train.epsilon_end;
    } else if (key == "train_episodes") {
      ls >> cfg.train.episodes;
    } else if (key == "train_max_steps") {
      ls >> cfg.train.max_steps_per_episode;
    } else if (key == "reward_goal") {
      ls >> cfg.train.reward_goal;
    } else if (key == "reward_collision") {
      ls >> cfg.train.reward_collision;
    } else if (key == "reward_step") {
      ls >> cfg.train.reward_step;
    } else if (key == "tie_epsilon_q") {
      ls >> cfg.tie.epsilon_q;
    } else if (key == "tie_epsilon_q_rel") {
      ls >> cfg.tie.epsilon_q_rel;
    } else if (key == "tie_w_theta") {
      ls >> cfg.tie.w_theta;
    } else if (key == "tie_w_d") {
      ls >> cfg.tie.w_d;
    } else if (key == "tie_lookahead") {
      ls >> cfg.tie.lookahead_steps;
    } else if (key == "smooth_s_macro") {
      ls >> cfg.smoothing.s_macro;
    } else if (key == "smooth_d_max") {
      ls >> cfg.smoothing.d_max;
    } else if (key == "smooth_arc_samples") {
      ls >> cfg.smoothing.arc_samples;
    } else if (key == "exec_lambda") {
      ls >> cfg.executor.lambda;
    } else if (key == "exec_k_p") {
      ls >> cfg.executor.k_p;
    } else if (key == "exec_alpha_c") {
      ls >> cfg.executor.alpha_c;
    } else if (key == "exec_dq_max_norm") {
      ls >> cfg.executor.dq_max_norm;
    } else if (key == "exec_dq_max_joint") {
      for (int j = 0; j < kNumJoints; ++j) ls >> cfg.executor.dq_max_joint[j];
    } else if (key == "exec_eps_p") {
      ls >> cfg.executor.eps_p;
    } else if (key == "exec_k_max_iters") {
      ls >> cfg.executor.k_max_iters;
    } else if (key == "exec_dt") {
      ls >> cfg.executor.dt;
    } else if (key == "numik_lambda") {
      ls >> cfg.executor.numik_lambda;
    } else if (key == "numik_max_iters") {
      ls >> cfg.executor.numik_max_iters;
    } else if (key == "penalty_length") {
      ls >> cfg.penalties.length;
    } else if (key == "penalty_turns") {
      ls >> cfg.penalties.turns;
    } else if (key == "penalty_steps") {
      ls >> cfg.penalties.steps;
    } else if (key == "gen_joint_margin") {
      ls >> cfg.generation.joint_margin;
    } else if (key == "gen_max_attempts") {
      ls >> cfg.generation.max_attempts;
    } else if (key == "gen_radius_min") {
      ls >> cfg.generation.radius_min;
    } else if (key == "gen_radius_max") {
      ls >> cfg.generation.radius_max;
    } else if (key == "gen_clear_radius") {
      ls >> cfg.generation.clear_radius;
    } else if (key == "gen_min_task_distance") {
      ls >> cfg.generation.min_task_distance;
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
    if (ls.fail()) fail();
  }
  finalize_config(cfg);
}

void apply_run_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  apply_run_config(cfg, in);
}

std::uint64_t config_fingerprint(const RunConfig& cfg) {
  std::ostringstream os;
  save_run_config(cfg, os);
  const std::string s = os.str();
  Fnv1a h;
  h.feed(s.data(), s.size());
  return h.state;
}

namespace {

std::uint64_t task_scenario_seed(const RunConfig& cfg, DensityClass density, int task_index,
                                 int retry) {
  const std::uint64_t density_tag = static_cast<std::uint64_t>(density) * 0x100000ull;
  std::uint64_t s = mix_seed(cfg.base_seed, density_tag + static_cast<std::uint64_t>(task_index));
  if (retry > 0) s = mix_seed(s, 0xfeedull + static_cast<std::uint64_t>(retry));
  return s;
}

struct TaskSetup {
  Scenario scenario;
  VoxelGrid grid;
  std::uint64_t seed = 0;
};

// Generates the scenario for one task, retrying with derived seeds when a
// seed's scene is over-constrained. Empty optional means the task is skipped.
std::optional<TaskSetup> make_task(const RunConfig& cfg, const ArmModel& model,
                                   DensityClass density, int task_index, std::string* reason) {
  for (int retry = 0; retry <= cfg.generation_retries; ++retry) {
    const std::uint64_t seed = task_scenario_seed(cfg, density, task_index, retry);
    try {
      TaskSetup setup;
      setup.seed = seed;
      setup.scenario = generate_scenario(density, seed, model, cfg.generation);
      setup.grid = voxelize_serial(setup.scenario.obstacles, cfg.grid, cfg.inflation);
      const VoxelIndex sv = setup.grid.voxel_of(setup.scenario.x_start);
      const VoxelIndex gv = setup.grid.voxel_of(setup.scenario.x_goal);
      if (!setup.grid.is_free(sv) || !setup.grid.is_free(gv)) continue;
      return setup;
    } catch (const GenerationFailed&) {
      continue;
    }
  }
  *reason = "scenario generation exhausted";
  return std::nullopt;
}

int resolve_threads(const RunConfig& cfg) {
  return cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
}

std::string format_g17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

PlannerBenchReport run_planner_benchmark(const RunConfig& cfg, const ArmModel& model) {
  if (cfg.densities.empty() || cfg.planners.empty())
    throw std::invalid_argument("run_planner_benchmark: empty density or planner selection");

  PlannerBenchReport report;
  const std::uint64_t fingerprint = config_fingerprint(cfg);
  const std::size_t n_tasks =
      cfg.densities.size() * static_cast<std::size_t>(cfg.tasks_per_density);
  report.tasks_attempted = static_cast<int>(n_tasks);

  struct TaskOut {
    std::vector<PlannerTaskRecord> records;
    std::optional<SkipRecord> skip;
  };
  std::vector<TaskOut> outs(n_tasks);

  const int threads = resolve_threads(cfg);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(n_tasks); ++t) {
    const DensityClass density = cfg.densities[t / cfg.tasks_per_density];
    const int task_index = static_cast<int>(t % cfg.tasks_per_density);

    std::string reason;
    auto setup = make_task(cfg, model, density, task_index, &reason);
    if (!setup) {
      outs[t].skip = SkipRecord{density, task_index, reason};
      continue;
    }

    const std::uint64_t train_seed = mix_seed(setup->seed, 0xa11ull);
    const int k_max = default_rollout_cap(cfg.grid);
    for (const ActionVariant variant : cfg.planners) {
      const ActionSet actions = build_action_set(variant, cfg.grid.resolution, cfg.delta);
      const QTable table = train(setup->scenario, setup->grid, actions, cfg.train, train_seed);
      PathPolyline path = rollout(table, setup->scenario, setup->grid, actions, cfg.tie, k_max);
      const ReferencePath ref = smooth_path(path, cfg.smoothing);

      PlannerTaskRecord rec;
      rec.density = density;
      rec.task_index = task_index;
      rec.scenario_seed = setup->seed;
      rec.variant = variant;
      rec.metrics = planner_metrics(path, setup->scenario.obstacles, cfg.penalties, ref.micro);
      rec.path = std::move(path);
      outs[t].records.push_back(std::move(rec));
    }
  }

  for (auto& out : outs) {
    if (out.skip) report.skipped.push_back(*out.skip);
    for (auto& rec : out.records) report.records.push_back(std::move(rec));
  }

  // One row per (density, planner), mean over reported tasks.
  for (const DensityClass density : cfg.densities) {
    for (const ActionVariant variant : cfg.planners) {
      PlannerRow row;
      row.density = to_string(density);
      row.algorithm = to_string(variant);
      row.config_hash = fingerprint;
      double len = 0, turns = 0, steps = 0, clear = 0, succ = 0;
      int n = 0;
      for (const PlannerTaskRecord& rec : report.records) {
        if (rec.density != density || rec.variant != variant) continue;
        ++n;
        succ += rec.metrics.success ? 1.0 : 0.0;
        len += rec.metrics.length;
        turns += rec.metrics.turns;
        steps += rec.metrics.steps;
        clear += std::min(rec.metrics.min_clearance, kClearanceAggregationCap);
      }
      row.tasks = n;
      if (n > 0) {
        row.success_rate = succ / n;
        row.length = len / n;
        row.turns = turns / n;
        row.steps = steps / n;
        row.min_clearance = clear / n;
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

std::uint64_t reference_path_hash(const ReferencePath& ref) {
  Fnv1a h;
  h.feed(static_cast<std::uint64_t>(ref.macro.size()));
  for (const Vec3& p : ref.macro) {
    h.feed(p.x());
    h.feed(p.y());
    h.feed(p.z());
  }
  h.feed(static_cast<std::uint64_t>(ref.micro.size()));
  for (const Vec3& p : ref.micro) {
    h.feed(p.x());
    h.feed(p.y());
    h.feed(p.z());
  }
  return h.state;
}

ExecBenchReport run_executor_benchmark(const RunConfig& cfg, const ArmModel& model) {
  if (cfg.densities.empty() || cfg.executors.empty())
    throw std::invalid_argument("run_executor_benchmark: empty density or executor selection");

  ExecBenchReport report;
  const std::uint64_t fingerprint = config_fingerprint(cfg);
  const std::size_t n_tasks =
      cfg.densities.size() * static_cast<std::size_t>(cfg.tasks_per_density);
  report.tasks_attempted = static_cast<int>(n_tasks);

  struct TaskOut {
    std::vector<ExecTaskRecord> records;
    std::optional<SkipRecord> skip;
  };
  std::vector<TaskOut> outs(n_tasks);

  const int threads = resolve_threads(cfg);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(n_tasks); ++t) {
    const DensityClass density = cfg.densities[t / cfg.tasks_per_density];
    const int task_index = static_cast<int>(t % cfg.tasks_per_density);

    std::string reason;
    auto setup = make_task(cfg, model, density, task_index, &reason);
    if (!setup) {
      outs[t].skip = SkipRecord{density, task_index, reason};
      continue;
    }

    const ActionSet actions =
        build_action_set(ActionVariant::Improved, cfg.grid.resolution, cfg.delta);
    const std::uint64_t train_seed = mix_seed(setup->seed, 0xa11ull);
    const QTable table = train(setup->scenario, setup->grid, actions, cfg.train, train_seed);
    const PathPolyline path =
        rollout(table, setup->scenario, setup->grid, actions, cfg.tie, default_rollout_cap(cfg.grid));
    if (!path.success) {
      outs[t].skip = SkipRecord{density, task_index, "planning failed"};
      continue;
    }
    const ReferencePath ref = smooth_path(path, cfg.smoothing);
    const std::uint64_t ref_hash = reference_path_hash(ref);

    for (const ExecutorKind kind : cfg.executors) {
      ExecTaskRecord rec;
      rec.density = density;
      rec.task_index = task_index;
      rec.scenario_seed = setup->seed;
      rec.kind = kind;
      rec.reference_hash = ref_hash;
      rec.trajectory = (kind == ExecutorKind::TpDls)
                           ? execute_tp_dls(model, setup->scenario.q_start, ref, cfg.executor)
                           : execute_num_ik(model, setup->scenario.q_start, ref, cfg.executor);
      rec.metrics = execution_metrics(rec.trajectory, model, cfg.executor.dt);
      outs[t].records.push_back(std::move(rec));
    }
  }

  for (auto& out : outs) {
    if (out.skip) report.skipped.push_back(*out.skip);
    for (auto& rec : out.records) report.records.push_back(std::move(rec));
  }

  for (const DensityClass density : cfg.densities) {
    for (const ExecutorKind kind : cfg.executors) {
      ExecRow row;
      row.density = to_string(density);
      row.solver = to_string(kind);
      row.config_hash = fingerprint;
      double succ = 0, dq = 0, vel = 0, acc = 0, margin = 0, back = 0, time = 0;
      int n = 0;
      for (const ExecTaskRecord& rec : report.records) {
        if (rec.density != density || rec.kind != kind) continue;
        ++n;
        succ += rec.metrics.success ? 1.0 : 0.0;
        dq += rec.metrics.dq_95;
        vel += rec.metrics.max_vel;
        acc += rec.metrics.max_acc;
        margin += rec.metrics.joint_margin;
        back += rec.metrics.backtracks;
        time += rec.metrics.time;
      }
      row.tasks = n;
      if (n > 0) {
        row.success_rate = succ / n;
        row.dq_95 = dq / n;
        row.max_vel = vel / n;
        row.max_acc = acc / n;
        row.joint_margin = margin / n;
        row.backtracks = back / n;
        row.time = time / n;
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

std::string planner_csv(const std::vector<PlannerRow>& rows) {
  std::ostringstream os;
  os << "density,algorithm,success_rate,length,turns,min_clearance,steps,tasks,config_hash\n";
  for (const PlannerRow& r : rows) {
    os << r.density << "," << r.algorithm << "," << format_g17(r.success_rate) << ","
       << format_g17(r.length) << "," << format_g17(r.turns) << "," << format_g17(r.min_clearance)
       << "," << format_g17(r.steps) << "," << r.tasks << "," << std::hex << r.config_hash
       << std::dec << "\n";
  }
  return os.str();
}

std::string executor_csv(const std::vector<ExecRow>& rows) {
  std::ostringstream os;
  os << "density,solver,success_rate,dq_95,max_vel,max_acc,joint_margin,backtracks,tasks,"
        "config_hash,mean_time_s\n";
  for (const ExecRow& r : rows) {
    os << r.density << "," << r.solver << "," << format_g17(r.success_rate) << ","
       << format_g17(r.dq_95) << "," << format_g17(r.max_vel) << "," << format_g17(r.max_acc)
       << "," << format_g17(r.joint_margin) << "," << format_g17(r.backtracks) << "," << r.tasks
       << "," << std::hex << r.config_hash << std::dec << "," << format_g17(r.time) << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

std::vector<PlannerRow> parse_planner_csv(std::istream& in) {
  std::vector<PlannerRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 9) throw std::runtime_error("planner csv: bad row: " + line);
    PlannerRow r;
    r.density = f[0];
    r.algorithm = f[1];
    r.success_rate = std::stod(f[2]);
    r.length = std::stod(f[3]);
    r.turns = std::stod(f[4]);
    r.min_clearance = std::stod(f[5]);
    r.steps = std::stod(f[6]);
    r.tasks = std::stoi(f[7]);
    r.config_hash = std::stoull(f[8], nullptr, 16);
    rows.push_back(r);
  }
  return rows;
}

std::vector<ExecRow> parse_exec_csv(std::istream& in) {
  std::vector<ExecRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 11) throw std::runtime_error("executor csv: bad row: " + line);
    ExecRow r;
    r.density = f[0];
    r.solver = f[1];
    r.success_rate = std::stod(f[2]);
    r.dq_95 = std::stod(f[3]);
    r.max_vel = std::stod(f[4]);
    r.max_acc = std::stod(f[5]);
    r.joint_margin = std::stod(f[6]);
    r.backtracks = std::stod(f[7]);
    r.tasks = std::stoi(f[8]);
    r.config_hash = std::stoull(f[9], nullptr, 16);
    r.time = std::stod(f[10]);
    rows.push_back(r);
  }
  return rows;
}

void emit_results(const PlannerBenchReport* planner, const ExecBenchReport* executor,
                  const RunConfig& cfg, const ArmModel& model, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("emit_results: cannot create " + out_dir);

  if (planner) {
    std::ofstream f(fs::path(out_dir) / "planner_table.csv");
    if (!f) throw std::runtime_error("emit_results: cannot write planner_table.csv");
    f << planner_csv(planner->rows);
  }
  if (executor) {
    std::ofstream f(fs::path(out_dir) / "executor_table.csv");
    if (!f) throw std::runtime_error("emit_results: cannot write executor_table.csv");
    f << executor_csv(executor->rows);

    if (cfg.dump_trajectories) {
      const fs::path traj_dir = fs::path(out_dir) / "traj";
      fs::create_directories(traj_dir, ec);
      for (const ExecTaskRecord& rec : executor->records) {
        std::ostringstream name;
        name << to_string(rec.density) << "_" << rec.task_index << "_" << to_string(rec.kind)
             << ".txt";
        std::ofstream tf(traj_dir / name.str());
        save_trajectory(rec.trajectory, tf);
      }
    }
  }

  std::ofstream meta(fs::path(out_dir) / "meta.txt");
  if (!meta) throw std::runtime_error("emit_results: cannot write meta.txt");
  const auto now = std::chrono::system_clock::now();
  const std::time_t stamp = std::chrono::system_clock::to_time_t(now);
  meta << "# benchmark run metadata\n";
  meta << "timestamp " << std::put_time(std::gmtime(&stamp), "%Y-%m-%dT%H:%M:%SZ") << "\n";
  meta << "config_hash " << std::hex << config_fingerprint(cfg) << std::dec << "\n";
  meta << "model_fingerprint " << std::hex << model_fingerprint(model) << std::dec << "\n";
  if (planner) {
    meta << "planner_tasks_attempted " << planner->tasks_attempted << "\n";
    meta << "planner_tasks_skipped " << planner->skipped.size() << "\n";
    for (const SkipRecord& s : planner->skipped) {
      meta << "planner_skip " << to_string(s.density) << " " << s.task_index << " " << s.reason
           << "\n";
    }
  }
  if (executor) {
    meta << "executor_tasks_attempted " << executor->tasks_attempted << "\n";
    meta << "executor_tasks_skipped " << executor->skipped.size() << "\n";
    for (const SkipRecord& s : executor->skipped) {
      meta << "executor_skip " << to_string(s.density) << " " << s.task_index << " " << s.reason
           << "\n";
    }
  }
  meta << "# full configuration\n";
  save_run_config(cfg, meta);
}

}  // namespace voxbridge
