#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zonal/connectivity.hpp"
#include "zonal/geometry.hpp"
#include "zonal/hl_planner.hpp"
#include "zonal/local_planner.hpp"
#include "zonal/partition.hpp"

namespace zonal {

enum class Algo { Rrt, RrtStar, Zonal };

std::string algo_name(Algo a);
Algo algo_from_name(const std::string& name);

// One benchmark entry: which planner to run and with which knobs. Zeroed
// numeric knobs resolve to map-derived defaults at run time.
struct PlannerConfig {
  std::string id;
  Algo algo = Algo::Rrt;
  int depth = 4;  // binary split levels (zonal only)
  RewardWeights weights;
  QHyperparams qlearn;
  RrtParams rrt;
  SubgoalParams subgoal;
  double delta = 0.0;    // 0: default_delta(map)
  double gamma_c = 0.0;  // 0: default_gamma_c(map)
  std::uint64_t seed = 1;
};

enum class ObstacleKind { Ball, Box };

struct Scenario {
  int dimension = 2;
  double bounds_extent = 200.0;
  int n_obstacles = 1000;
  // Defaults to balls in 2D and boxes in 3D+ when left unset in the file.
  ObstacleKind obstacle_kind = ObstacleKind::Ball;
  std::pair<double, double> radius_range{1.0, 3.0};
  int n_maps = 30;
  double agent_radius = 0.0;
  std::vector<PlannerConfig> planners;
  double time_limit_s = 30.0;
  std::uint64_t base_seed = 1;
  bool report_warm_start = false;
};

struct StageTimings {
  double partition_s = 0.0;
  double connectivity_s = 0.0;
  double training_s = 0.0;
  double local_plan_s = 0.0;
};

struct TrialRecord {
  int map_id = 0;
  std::string planner_id;
  bool success = false;
  double wall_time_s = 0.0;
  std::optional<double> path_length;
  std::string failure_stage;  // empty on success
  StageTimings stages;
};

struct PlannerSummary {
  std::string planner_id;
  int n_trials = 0;
  int n_success = 0;
  double success_rate_pct = 0.0;
  double avg_time_success_s = 0.0;  // over successful trials only
  double avg_time_all_s = 0.0;      // secondary, over every trial
  double avg_time_warm_s = 0.0;     // local planning stage only (successes)
  double mean_path_length = 0.0;
  double median_path_length = 0.0;
  double ci_lo_s = 0.0;  // bootstrap 95% CI on avg_time_success_s
  double ci_hi_s = 0.0;
};

struct Summary {
  std::vector<PlannerSummary> per_planner;
};

// Uniform obstacle centers; radii (balls) or per-axis half-extents (boxes)
// uniform in radius_range. Start/goal at opposite corners, 5% inset; any
// obstacle overlapping either is redrawn. Deterministic per seed; throws
// after 1000 redraws (map too dense around the endpoints).
WorldMap gen_forest_map(int dimension, int n_obstacles, double bounds_extent,
                        std::pair<double, double> radius_range, std::uint64_t seed,
                        ObstacleKind kind, double agent_radius = 0.0);

// Everything one trial produces, including the artifacts the ledger and SVG
// emitters want. Artifacts are only retained when keep_artifacts is set.
struct TrialOutcome {
  bool success = false;
  double wall_time_s = 0.0;
  StageTimings stages;
  std::optional<Path> path;
  std::string failure_stage;
  std::optional<Decomposition> decomposition;
  std::optional<ZoneGraph> graph;
};

// Runs one planner on one map under a single wall clock covering every
// stage (cold start). The returned path has already passed path_valid.
TrialOutcome run_planner_once(const WorldMap& map, const PlannerConfig& cfg,
                              bool keep_artifacts = false, std::uint64_t trial_seed_salt = 0);

// All map x planner trials; identical maps are fed to every planner. Trials
// run on `jobs` workers, each writing its own preallocated record slot.
std::vector<TrialRecord> run_scenario(const Scenario& s, int jobs = 1);

Summary summarize(const std::vector<TrialRecord>& records);

// records CSV columns: map_id, planner_id, success, wall_time_s,
// path_length, failure_stage.
void emit_records_csv(const std::vector<TrialRecord>& records, const std::string& path);
void emit_summary_csv(const Summary& summary, const std::string& path, bool warm_column = false);
std::string records_csv_string(const std::vector<TrialRecord>& records);

// Structural hash of a map (bounds, obstacles, endpoints, agent radius);
// used by the fairness check that every planner saw the same map.
std::uint64_t world_map_hash(const WorldMap& map);

}  // namespace zonal
