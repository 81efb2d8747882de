#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "zonal/harness.hpp"
#include "zonal/json_io.hpp"
#include "zonal/svg.hpp"

namespace {

using namespace zonal;

int cmd_gen_map(int dim, int n_obstacles, std::uint64_t seed, const std::string& out,
                double extent, double r_min, double r_max, const std::string& kind,
                double agent_radius) {
  ObstacleKind k;
  if (kind == "auto")
    k = dim == 2 ? ObstacleKind::Ball : ObstacleKind::Box;
  else if (kind == "ball")
    k = ObstacleKind::Ball;
  else if (kind == "box")
    k = ObstacleKind::Box;
  else
    throw std::invalid_argument("--kind must be ball, box, or auto");

  WorldMap map = gen_forest_map(dim, n_obstacles, extent, {r_min, r_max}, seed, k, agent_radius);
  save_map(map, out);
  std::cout << "wrote " << out << " (dim=" << dim << ", obstacles=" << n_obstacles
            << ", seed=" << seed << ")\n";
  return 0;
}

int cmd_plan(const PlannerConfig& cfg, const std::string& map_path, const std::string& svg_out,
             const std::string& json_out) {
  WorldMap map = load_map(map_path);
  TrialOutcome out = run_planner_once(map, cfg, /*keep_artifacts=*/true);

  std::printf("algo=%s success=%d wall_time_s=%.6f", algo_name(cfg.algo).c_str(),
              out.success ? 1 : 0, out.wall_time_s);
  if (out.success) {
    std::printf(" path_length=%.3f waypoints=%zu", out.path->length, out.path->waypoints.size());
    if (!out.path->zone_sequence.empty())
      std::printf(" zones=%zu", out.path->zone_sequence.size());
  } else {
    std::printf(" failure_stage=%s", out.failure_stage.c_str());
  }
  std::printf("\n");

  if (!json_out.empty())
    write_text_file(json_out, trial_ledger_json(map, out, cfg.id).dump(2) + "\n");
  if (!svg_out.empty()) {
    emit_svg(map, out.decomposition ? &*out.decomposition : nullptr,
             out.graph ? &*out.graph : nullptr, out.path ? &*out.path : nullptr, svg_out);
  }
  return out.success ? 0 : 1;
}

int cmd_bench(const std::string& scenario_path, const std::string& out_dir, int jobs,
              bool ledger) {
  Scenario s = load_scenario(scenario_path);
  std::filesystem::create_directories(out_dir);

  auto records = run_scenario(s, jobs);
  Summary summary = summarize(records);

  emit_records_csv(records, out_dir + "/records.csv");
  emit_summary_csv(summary, out_dir + "/summary.csv", s.report_warm_start);
  if (ledger) {
    // Full artifacts for the first map of each planner, for inspection.
    WorldMap map0 = gen_forest_map(s.dimension, s.n_obstacles, s.bounds_extent, s.radius_range,
                                   derive_seed(s.base_seed, 0), s.obstacle_kind, s.agent_radius);
    json all = json::array();
    for (const PlannerConfig& cfg : s.planners) {
      TrialOutcome out = run_planner_once(map0, cfg, true, 0);
      all.push_back(trial_ledger_json(map0, out, cfg.id));
    }
    write_text_file(out_dir + "/ledger.json", all.dump(2) + "\n");
  }

  std::printf("%-16s %8s %10s %12s %12s\n", "planner", "success", "sr_pct", "avg_time_s",
              "mean_length");
  for (const PlannerSummary& p : summary.per_planner) {
    std::printf("%-16s %4d/%-3d %10.1f %12.4f %12.2f\n", p.planner_id.c_str(), p.n_success,
                p.n_trials, p.success_rate_pct, p.avg_time_success_s, p.mean_path_length);
  }
  std::printf("wrote %s/records.csv and %s/summary.csv\n", out_dir.c_str(), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zonal kd-tree + Q-learning RRT planner and benchmark harness"};
  app.require_subcommand(1);

  // gen-map
  auto* gen = app.add_subcommand("gen-map", "Generate a random forest map file");
  int g_dim = 2, g_n = 1000;
  std::uint64_t g_seed = 1;
  double g_extent = 200.0, g_rmin = 1.0, g_rmax = 3.0, g_agent = 0.0;
  std::string g_out = "map.json", g_kind = "auto";
  gen->add_option("--dim", g_dim, "Dimension (2-6)");
  gen->add_option("--n-obstacles", g_n, "Obstacle count");
  gen->add_option("--seed", g_seed, "Generator seed");
  gen->add_option("--out", g_out, "Output map file")->required();
  gen->add_option("--extent", g_extent, "Bounds extent per axis");
  gen->add_option("--r-min", g_rmin, "Min radius / half-extent");
  gen->add_option("--r-max", g_rmax, "Max radius / half-extent");
  gen->add_option("--kind", g_kind, "ball | box | auto (ball in 2D, box in 3D+)");
  gen->add_option("--agent-radius", g_agent, "Agent radius");

  // plan
  auto* plan = app.add_subcommand("plan", "Plan a single query on a map file");
  std::string p_map, p_algo = "zonal", p_svg, p_json;
  PlannerConfig cfg;
  plan->add_option("--map", p_map, "Map file")->required();
  plan->add_option("--algo", p_algo, "rrt | rrt-star | zonal");
  plan->add_option("--depth", cfg.depth, "kd-tree binary split levels");
  plan->add_option("--seed", cfg.seed, "Planner seed");
  plan->add_option("--svg", p_svg, "Write an SVG rendering here");
  plan->add_option("--json", p_json, "Write the run ledger JSON here");
  plan->add_option("--step-size", cfg.rrt.step_size, "RRT step (0: 2% of diagonal)");
  plan->add_option("--goal-bias", cfg.rrt.goal_bias, "Goal sampling probability");
  plan->add_option("--max-iterations", cfg.rrt.max_iterations, "RRT iteration cap");
  plan->add_option("--goal-tolerance", cfg.rrt.goal_tolerance, "Goal tolerance (0: step/2)");
  plan->add_option("--rewire-radius", cfg.rrt.rewire_radius, "RRT* rewire radius (0: 3*step)");
  plan->add_flag("--full-budget", "RRT*: run all iterations instead of first solution");
  plan->add_option("--m", cfg.subgoal.m, "Subgoal candidates per zone");
  plan->add_option("--gamma-s", cfg.subgoal.gamma_s, "Subgoal safety clearance (0: auto)");
  plan->add_option("--delta", cfg.delta, "Facet strip half-width (0: auto)");
  plan->add_option("--gamma-c", cfg.gamma_c, "Accessibility gap threshold (0: auto)");
  plan->add_option("--w1", cfg.weights.w1, "Distance reward weight");
  plan->add_option("--w2", cfg.weights.w2, "Density reward weight");
  plan->add_option("--w3", cfg.weights.w3, "Goal bonus");
  plan->add_option("--episodes", cfg.qlearn.episodes, "Q-learning episodes");
  plan->add_option("--epsilon", cfg.qlearn.epsilon, "Exploration rate");
  plan->add_option("--alpha", cfg.qlearn.alpha, "Learning rate");
  plan->add_option("--gamma", cfg.qlearn.gamma, "Discount factor");

  // bench
  auto* bench = app.add_subcommand("bench", "Run a benchmark scenario file");
  std::string b_scenario, b_out = "bench_out";
  int b_jobs = 1;
  bool b_ledger = false;
  bench->add_option("--scenario", b_scenario, "Scenario JSON file")->required();
  bench->add_option("--out", b_out, "Output directory");
  bench->add_option("--jobs", b_jobs, "Worker threads");
  bench->add_flag("--ledger", b_ledger, "Also write ledger.json with full artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen_map(g_dim, g_n, g_seed, g_out, g_extent, g_rmin, g_rmax, g_kind, g_agent);
    if (plan->parsed()) {
      cfg.algo = algo_from_name(p_algo);
      cfg.id = p_algo;
      cfg.rrt.first_solution = plan->count("--full-budget") == 0;
      return cmd_plan(cfg, p_map, p_svg, p_json);
    }
    if (bench->parsed()) return cmd_bench(b_scenario, b_out, b_jobs, b_ledger);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
