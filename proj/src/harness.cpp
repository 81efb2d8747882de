#include "zonal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "zonal/log.hpp"
#include "zonal/rng.hpp"

namespace zonal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string algo_name(Algo a) {
  switch (a) {
    case Algo::Rrt: return "rrt";
    case Algo::RrtStar: return "rrt-star";
    case Algo::Zonal: return "zonal";
  }
  return "rrt";
}

Algo algo_from_name(const std::string& name) {
  if (name == "rrt") return Algo::Rrt;
  if (name == "rrt-star" || name == "rrt_star") return Algo::RrtStar;
  if (name == "zonal") return Algo::Zonal;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

WorldMap gen_forest_map(int dimension, int n_obstacles, double bounds_extent,
                        std::pair<double, double> radius_range, std::uint64_t seed,
                        ObstacleKind kind, double agent_radius) {
  if (dimension < 2 || dimension > kMaxDim)
    throw std::invalid_argument("gen_forest_map: dimension must be in [2,6]");
  if (!(radius_range.first > 0.0) || radius_range.second < radius_range.first)
    throw std::invalid_argument("gen_forest_map: bad radius range");
  if (n_obstacles < 0) throw std::invalid_argument("gen_forest_map: n_obstacles must be >= 0");

  WorldMap map;
  map.bounds.min_corner = PointN::zeros(dimension);
  map.bounds.max_corner = PointN::zeros(dimension);
  for (int k = 0; k < dimension; ++k) map.bounds.max_corner[k] = bounds_extent;
  map.agent_radius = agent_radius;

  map.start = PointN::zeros(dimension);
  map.goal = PointN::zeros(dimension);
  for (int k = 0; k < dimension; ++k) {
    map.start[k] = 0.05 * bounds_extent;
    map.goal[k] = 0.95 * bounds_extent;
  }

  Rng rng(seed);
  int redraws = 0;
  auto clears_endpoints = [&](const Obstacle& o) {
    return !obstacle_hits_point(o, map.start, agent_radius) &&
           !obstacle_hits_point(o, map.goal, agent_radius);
  };

  map.obstacles.reserve(static_cast<std::size_t>(n_obstacles));
  for (int i = 0; i < n_obstacles; ++i) {
    for (;;) {
      Obstacle o = [&] {
        PointN c = PointN::zeros(dimension);
        for (int k = 0; k < dimension; ++k) c[k] = rng.uniform(0.0, bounds_extent);
        if (kind == ObstacleKind::Ball) {
          return Obstacle(Ball{c, rng.uniform(radius_range.first, radius_range.second)});
        }
        AxisBox bx{c, c};
        for (int k = 0; k < dimension; ++k) {
          double h = rng.uniform(radius_range.first, radius_range.second);
          bx.min_corner[k] = c[k] - h;
          bx.max_corner[k] = c[k] + h;
        }
        return Obstacle(bx);
      }();
      if (clears_endpoints(o)) {
        map.obstacles.push_back(std::move(o));
        break;
      }
      if (++redraws > 1000)
        throw std::runtime_error("gen_forest_map: map too dense to keep start/goal free");
    }
  }
  return map;
}

TrialOutcome run_planner_once(const WorldMap& map, const PlannerConfig& cfg, bool keep_artifacts,
                              std::uint64_t trial_seed_salt) {
  TrialOutcome out;
  const std::uint64_t trial_seed = derive_seed(cfg.seed, trial_seed_salt);
  const auto t0 = Clock::now();

  if (cfg.algo == Algo::Rrt || cfg.algo == Algo::RrtStar) {
    RrtParams rp = resolve_rrt_params(cfg.rrt, map);
    rp.seed = derive_seed(trial_seed, 0xba5e);
    auto t_local = Clock::now();
    auto path = cfg.algo == Algo::Rrt ? rrt(map.start, map.goal, map.bounds, map, rp)
                                      : rrt_star(map.start, map.goal, map.bounds, map, rp);
    out.stages.local_plan_s = seconds_since(t_local);
    if (path) {
      out.success = true;
      out.path = std::move(path);
    } else {
      out.failure_stage = "timeout";
    }
  } else {
    auto t_part = Clock::now();
    Decomposition dec = build_kdtree(map, cfg.depth);
    out.stages.partition_s = seconds_since(t_part);

    const double delta = cfg.delta > 0.0 ? cfg.delta : default_delta(map);
    const double gamma_c = cfg.gamma_c > 0.0 ? cfg.gamma_c : default_gamma_c(map);
    auto t_conn = Clock::now();
    ZoneGraph graph = build_zone_graph(dec, map, delta, gamma_c);
    out.stages.connectivity_s = seconds_since(t_conn);

    QHyperparams qh = cfg.qlearn;
    qh.seed = derive_seed(trial_seed, 0x911);
    auto t_train = Clock::now();
    TrainResult trained = train(graph, map, dec, cfg.weights, qh);
    out.stages.training_s = seconds_since(t_train);

    RrtParams rp = resolve_rrt_params(cfg.rrt, map);
    rp.seed = derive_seed(trial_seed, 0x1e6);
    auto t_local = Clock::now();
    TrajectoryResult traj = get_trajectory(map, dec, graph, trained.table, rp, cfg.subgoal);
    out.stages.local_plan_s = seconds_since(t_local);

    if (traj.path) {
      out.success = true;
      out.path = std::move(traj.path);
    } else {
      out.failure_stage = traj.failure.stage;
    }
    if (keep_artifacts) {
      out.decomposition = std::move(dec);
      out.graph = std::move(graph);
    }
  }

  out.wall_time_s = seconds_since(t0);

  // Hard contract: every returned path is collision-free end to end.
  if (out.success) {
    RrtParams rp = resolve_rrt_params(cfg.rrt, map);
    if (!path_valid(*out.path, map, map.start, map.goal, rp.goal_tolerance)) {
      log_line(LogLevel::Error, "planner ", cfg.id, " returned an invalid path");
      out.success = false;
      out.path.reset();
      out.failure_stage = "invalid_path";
    }
  }
  return out;
}

std::vector<TrialRecord> run_scenario(const Scenario& s, int jobs) {
  if (jobs < 1) jobs = 1;
  const int n_planners = static_cast<int>(s.planners.size());
  const int n_tasks = s.n_maps * n_planners;

  // Maps are generated once and shared read-only by every planner.
  std::vector<WorldMap> maps;
  maps.reserve(static_cast<std::size_t>(s.n_maps));
  for (int m = 0; m < s.n_maps; ++m)
    maps.push_back(gen_forest_map(s.dimension, s.n_obstacles, s.bounds_extent, s.radius_range,
                                  derive_seed(s.base_seed, static_cast<std::uint64_t>(m)),
                                  s.obstacle_kind, s.agent_radius));

  std::vector<TrialRecord> records(static_cast<std::size_t>(n_tasks));
  std::atomic<int> next{0};

  auto worker = [&]() {
    for (;;) {
      const int task = next.fetch_add(1);
      if (task >= n_tasks) return;
      const int map_id = task / n_planners;
      const int planner_idx = task % n_planners;
      const PlannerConfig& cfg = s.planners[static_cast<std::size_t>(planner_idx)];
      TrialRecord rec;
      rec.map_id = map_id;
      rec.planner_id = cfg.id;
      try {
        TrialOutcome out = run_planner_once(maps[static_cast<std::size_t>(map_id)], cfg, false,
                                            static_cast<std::uint64_t>(map_id));
        rec.success = out.success;
        rec.wall_time_s = out.wall_time_s;
        rec.stages = out.stages;
        if (out.success && out.wall_time_s > s.time_limit_s) {
          rec.success = false;
          rec.failure_stage = "time_limit";
        } else if (out.success) {
          rec.path_length = out.path->length;
        } else {
          rec.failure_stage = out.failure_stage;
        }
      } catch (const std::exception& e) {
        rec.success = false;
        rec.failure_stage = std::string("error:") + e.what();
        log_line(LogLevel::Error, "trial map=", map_id, " planner=", cfg.id, " failed: ",
                 e.what());
      }
      records[static_cast<std::size_t>(task)] = std::move(rec);
      log_line(LogLevel::Debug, "trial map=", map_id, " planner=", cfg.id, " done");
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

namespace {

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Percentile-bootstrap CI on the mean; fixed seed so summaries reproduce.
std::pair<double, double> bootstrap_ci(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  constexpr int kResamples = 1000;
  Rng rng(0x0b00f5);
  std::vector<double> means;
  means.reserve(kResamples);
  for (int r = 0; r < kResamples; ++r) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += v[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(v.size())))];
    means.push_back(s / static_cast<double>(v.size()));
  }
  std::sort(means.begin(), means.end());
  return {means[static_cast<std::size_t>(0.025 * kResamples)],
          means[static_cast<std::size_t>(0.975 * kResamples) - 1]};
}

}  // namespace

Summary summarize(const std::vector<TrialRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  Summary sum;
  std::vector<std::string> order;
  for (const TrialRecord& r : records)
    if (std::find(order.begin(), order.end(), r.planner_id) == order.end())
      order.push_back(r.planner_id);

  for (const std::string& id : order) {
    PlannerSummary ps;
    ps.planner_id = id;
    std::vector<double> ok_times, all_times, warm_times, lengths;
    for (const TrialRecord& r : records) {
      if (r.planner_id != id) continue;
      ++ps.n_trials;
      all_times.push_back(r.wall_time_s);
      if (r.success) {
        ++ps.n_success;
        ok_times.push_back(r.wall_time_s);
        warm_times.push_back(r.stages.local_plan_s);
        lengths.push_back(*r.path_length);
      }
    }
    ps.success_rate_pct = 100.0 * ps.n_success / ps.n_trials;
    ps.avg_time_success_s = mean(ok_times);
    ps.avg_time_all_s = mean(all_times);
    ps.avg_time_warm_s = mean(warm_times);
    ps.mean_path_length = mean(lengths);
    ps.median_path_length = median(lengths);
    auto ci = bootstrap_ci(ok_times);
    ps.ci_lo_s = ci.first;
    ps.ci_hi_s = ci.second;
    sum.per_planner.push_back(std::move(ps));
  }
  return sum;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string records_csv_string(const std::vector<TrialRecord>& records) {
  std::string out = "map_id,planner_id,success,wall_time_s,path_length,failure_stage\n";
  for (const TrialRecord& r : records) {
    out += std::to_string(r.map_id);
    out += ',';
    out += r.planner_id;
    out += ',';
    out += r.success ? '1' : '0';
    out += ',';
    out += fmt(r.wall_time_s);
    out += ',';
    if (r.path_length) out += fmt(*r.path_length);
    out += ',';
    out += r.failure_stage;
    out += '\n';
  }
  return out;
}

void emit_records_csv(const std::vector<TrialRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << records_csv_string(records);
  if (!f) throw std::runtime_error("write failed: " + path);
}

void emit_summary_csv(const Summary& summary, const std::string& path, bool warm_column) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "planner_id,n_trials,n_success,success_rate_pct,avg_time_success_s,avg_time_all_s,"
       "mean_path_length,median_path_length,ci95_lo_s,ci95_hi_s";
  if (warm_column) f << ",avg_time_warm_s";
  f << "\n";
  for (const PlannerSummary& p : summary.per_planner) {
    f << p.planner_id << ',' << p.n_trials << ',' << p.n_success << ','
      << fmt(p.success_rate_pct) << ',' << fmt(p.avg_time_success_s) << ','
      << fmt(p.avg_time_all_s) << ',' << fmt(p.mean_path_length) << ','
      << fmt(p.median_path_length) << ',' << fmt(p.ci_lo_s) << ',' << fmt(p.ci_hi_s);
    if (warm_column) f << ',' << fmt(p.avg_time_warm_s);
    f << "\n";
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
}

void hash_double(std::uint64_t& h, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  hash_mix(h, bits);
}

void hash_point(std::uint64_t& h, const PointN& p) {
  hash_mix(h, static_cast<std::uint64_t>(p.dim()));
  for (int k = 0; k < p.dim(); ++k) hash_double(h, p[k]);
}

}  // namespace

std::uint64_t world_map_hash(const WorldMap& map) {
  std::uint64_t h = 0x5eed;
  hash_point(h, map.bounds.min_corner);
  hash_point(h, map.bounds.max_corner);
  hash_point(h, map.start);
  hash_point(h, map.goal);
  hash_double(h, map.agent_radius);
  for (const Obstacle& o : map.obstacles) {
    if (o.is_ball()) {
      hash_mix(h, 1);
      hash_point(h, o.ball().center);
      hash_double(h, o.ball().radius);
    } else {
      hash_mix(h, 2);
      hash_point(h, o.box().min_corner);
      hash_point(h, o.box().max_corner);
    }
  }
  return h;
}

}  // namespace zonal
