#include "zonal/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace zonal {

namespace {

json point_to_json(const PointN& p) {
  json a = json::array();
  for (int k = 0; k < p.dim(); ++k) a.push_back(p[k]);
  return a;
}

PointN point_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > kMaxDim)
    throw std::invalid_argument("point: expected array of 2..6 numbers");
  PointN p = PointN::zeros(static_cast<int>(j.size()));
  for (int k = 0; k < p.dim(); ++k) p[k] = j[static_cast<std::size_t>(k)].get<double>();
  return p;
}

}  // namespace

json map_to_json(const WorldMap& map) {
  json j;
  j["format"] = 1;
  j["dimension"] = map.dimension();
  j["bounds"] = {{"min", point_to_json(map.bounds.min_corner)},
                 {"max", point_to_json(map.bounds.max_corner)}};
  json obs = json::array();
  for (const Obstacle& o : map.obstacles) {
    if (o.is_ball()) {
      obs.push_back({{"kind", "ball"},
                     {"center", point_to_json(o.ball().center)},
                     {"radius", o.ball().radius}});
    } else {
      obs.push_back({{"kind", "box"},
                     {"min", point_to_json(o.box().min_corner)},
                     {"max", point_to_json(o.box().max_corner)}});
    }
  }
  j["obstacles"] = std::move(obs);
  j["start"] = point_to_json(map.start);
  j["goal"] = point_to_json(map.goal);
  j["agent_radius"] = map.agent_radius;
  return j;
}

WorldMap map_from_json(const json& j) {
  if (j.value("format", 0) != 1) throw std::invalid_argument("map file: unsupported format");
  WorldMap map;
  map.bounds.min_corner = point_from_json(j.at("bounds").at("min"));
  map.bounds.max_corner = point_from_json(j.at("bounds").at("max"));
  for (const json& o : j.at("obstacles")) {
    const std::string kind = o.at("kind").get<std::string>();
    if (kind == "ball") {
      map.obstacles.push_back(
          Obstacle(Ball{point_from_json(o.at("center")), o.at("radius").get<double>()}));
    } else if (kind == "box") {
      map.obstacles.push_back(
          Obstacle(AxisBox{point_from_json(o.at("min")), point_from_json(o.at("max"))}));
    } else {
      throw std::invalid_argument("map file: unknown obstacle kind '" + kind + "'");
    }
  }
  map.start = point_from_json(j.at("start"));
  map.goal = point_from_json(j.at("goal"));
  map.agent_radius = j.value("agent_radius", 0.0);
  const int dim = j.value("dimension", map.bounds.dim());
  if (dim != map.bounds.dim())
    throw std::invalid_argument("map file: dimension field disagrees with bounds");
  validate(map);
  return map;
}

void save_map(const WorldMap& map, const std::string& path) {
  write_text_file(path, map_to_json(map).dump(2) + "\n");
}

WorldMap load_map(const std::string& path) {
  return map_from_json(json::parse(read_text_file(path)));
}

namespace {

json planner_to_json(const PlannerConfig& c) {
  json j;
  j["id"] = c.id;
  j["algo"] = algo_name(c.algo);
  j["seed"] = c.seed;
  j["depth"] = c.depth;
  j["weights"] = {{"w1", c.weights.w1}, {"w2", c.weights.w2}, {"w3", c.weights.w3},
                  {"c_d", c.weights.c_d}, {"c_rho", c.weights.c_rho}};
  j["qlearn"] = {{"alpha", c.qlearn.alpha},
                 {"gamma", c.qlearn.gamma},
                 {"epsilon", c.qlearn.epsilon},
                 {"episodes", c.qlearn.episodes},
                 {"max_steps_per_episode", c.qlearn.max_steps_per_episode},
                 {"stability_window", c.qlearn.stability_window}};
  j["rrt"] = {{"step_size", c.rrt.step_size},
              {"goal_bias", c.rrt.goal_bias},
              {"max_iterations", c.rrt.max_iterations},
              {"goal_tolerance", c.rrt.goal_tolerance},
              {"rewire_radius", c.rrt.rewire_radius},
              {"first_solution", c.rrt.first_solution}};
  j["subgoal"] = {{"m", c.subgoal.m}, {"gamma_s", c.subgoal.gamma_s}};
  j["connectivity"] = {{"delta", c.delta}, {"gamma_c", c.gamma_c}};
  return j;
}

PlannerConfig planner_from_json(const json& j) {
  PlannerConfig c;
  c.algo = algo_from_name(j.at("algo").get<std::string>());
  c.id = j.value("id", algo_name(c.algo));
  c.seed = j.value("seed", std::uint64_t{1});
  c.depth = j.value("depth", 4);
  if (j.contains("weights")) {
    const json& w = j["weights"];
    c.weights.w1 = w.value("w1", c.weights.w1);
    c.weights.w2 = w.value("w2", c.weights.w2);
    c.weights.w3 = w.value("w3", c.weights.w3);
    c.weights.c_d = w.value("c_d", 0.0);
    c.weights.c_rho = w.value("c_rho", 0.0);
  }
  if (j.contains("qlearn")) {
    const json& q = j["qlearn"];
    c.qlearn.alpha = q.value("alpha", c.qlearn.alpha);
    c.qlearn.gamma = q.value("gamma", c.qlearn.gamma);
    c.qlearn.epsilon = q.value("epsilon", c.qlearn.epsilon);
    c.qlearn.episodes = q.value("episodes", c.qlearn.episodes);
    c.qlearn.max_steps_per_episode =
        q.value("max_steps_per_episode", c.qlearn.max_steps_per_episode);
    c.qlearn.stability_window = q.value("stability_window", c.qlearn.stability_window);
  }
  if (j.contains("rrt")) {
    const json& r = j["rrt"];
    c.rrt.step_size = r.value("step_size", 0.0);
    c.rrt.goal_bias = r.value("goal_bias", c.rrt.goal_bias);
    c.rrt.max_iterations = r.value("max_iterations", c.rrt.max_iterations);
    c.rrt.goal_tolerance = r.value("goal_tolerance", 0.0);
    c.rrt.rewire_radius = r.value("rewire_radius", 0.0);
    c.rrt.first_solution = r.value("first_solution", true);
  }
  if (j.contains("subgoal")) {
    c.subgoal.m = j["subgoal"].value("m", c.subgoal.m);
    c.subgoal.gamma_s = j["subgoal"].value("gamma_s", 0.0);
  }
  if (j.contains("connectivity")) {
    c.delta = j["connectivity"].value("delta", 0.0);
    c.gamma_c = j["connectivity"].value("gamma_c", 0.0);
  }
  return c;
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json j;
  j["format"] = 1;
  j["dimension"] = s.dimension;
  j["bounds_extent"] = s.bounds_extent;
  j["n_obstacles"] = s.n_obstacles;
  j["obstacle_kind"] = s.obstacle_kind == ObstacleKind::Ball ? "ball" : "box";
  j["radius_range"] = {s.radius_range.first, s.radius_range.second};
  j["n_maps"] = s.n_maps;
  j["agent_radius"] = s.agent_radius;
  j["time_limit_s"] = s.time_limit_s;
  j["base_seed"] = s.base_seed;
  j["report_warm_start"] = s.report_warm_start;
  json ps = json::array();
  for (const PlannerConfig& c : s.planners) ps.push_back(planner_to_json(c));
  j["planners"] = std::move(ps);
  return j;
}

Scenario scenario_from_json(const json& j) {
  if (j.value("format", 0) != 1) throw std::invalid_argument("scenario file: unsupported format");
  Scenario s;
  s.dimension = j.value("dimension", 2);
  s.bounds_extent = j.value("bounds_extent", 200.0);
  s.n_obstacles = j.value("n_obstacles", 1000);
  if (j.contains("obstacle_kind")) {
    const std::string k = j["obstacle_kind"].get<std::string>();
    if (k == "ball")
      s.obstacle_kind = ObstacleKind::Ball;
    else if (k == "box")
      s.obstacle_kind = ObstacleKind::Box;
    else
      throw std::invalid_argument("scenario file: unknown obstacle_kind '" + k + "'");
  } else {
    s.obstacle_kind = s.dimension == 2 ? ObstacleKind::Ball : ObstacleKind::Box;
  }
  if (j.contains("radius_range"))
    s.radius_range = {j["radius_range"][0].get<double>(), j["radius_range"][1].get<double>()};
  s.n_maps = j.value("n_maps", 30);
  s.agent_radius = j.value("agent_radius", 0.0);
  s.time_limit_s = j.value("time_limit_s", 30.0);
  s.base_seed = j.value("base_seed", std::uint64_t{1});
  s.report_warm_start = j.value("report_warm_start", false);
  if (s.n_maps < 1) throw std::invalid_argument("scenario: n_maps must be >= 1");
  if (s.time_limit_s <= 0) throw std::invalid_argument("scenario: time_limit_s must be > 0");
  for (const json& p : j.at("planners")) s.planners.push_back(planner_from_json(p));
  if (s.planners.empty()) throw std::invalid_argument("scenario: no planners configured");
  return s;
}

Scenario load_scenario(const std::string& path) {
  return scenario_from_json(json::parse(read_text_file(path)));
}

json decomposition_to_json(const Decomposition& dec) {
  json j;
  j["max_depth"] = dec.max_depth();
  json planes = json::array();
  for (const SplitPlane& sp : dec.split_planes())
    planes.push_back({{"axis", sp.axis}, {"coord", sp.coord}});
  j["split_planes"] = std::move(planes);
  json zones = json::array();
  for (const Zone& z : dec.zones()) {
    zones.push_back({{"id", z.id},
                     {"depth", z.depth},
                     {"cell", {{"min", point_to_json(z.cell.min_corner)},
                               {"max", point_to_json(z.cell.max_corner)}}},
                     {"obstacle_ids", z.obstacle_ids},
                     {"density", z.density}});
  }
  j["zones"] = std::move(zones);
  return j;
}

json zone_graph_to_json(const ZoneGraph& g) {
  json j;
  j["zone_count"] = g.zone_count();
  j["delta"] = g.delta();
  j["gamma_c"] = g.gamma_c();
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  return j;
}

json path_to_json(const Path& p) {
  json j;
  json wps = json::array();
  for (const PointN& w : p.waypoints) wps.push_back(point_to_json(w));
  j["waypoints"] = std::move(wps);
  j["length"] = p.length;
  if (!p.zone_sequence.empty()) j["zone_sequence"] = p.zone_sequence;
  if (!p.subgoals.empty()) {
    json sgs = json::array();
    for (const PointN& s : p.subgoals) sgs.push_back(point_to_json(s));
    j["subgoals"] = std::move(sgs);
  }
  return j;
}

json trial_ledger_json(const WorldMap& map, const TrialOutcome& outcome,
                       const std::string& planner_id) {
  json j;
  j["format"] = 1;
  j["planner_id"] = planner_id;
  j["map"] = map_to_json(map);
  if (outcome.decomposition) j["decomposition"] = decomposition_to_json(*outcome.decomposition);
  if (outcome.graph) j["zone_graph"] = zone_graph_to_json(*outcome.graph);
  j["success"] = outcome.success;
  j["wall_time_s"] = outcome.wall_time_s;
  j["stage_timings"] = {{"partition_s", outcome.stages.partition_s},
                        {"connectivity_s", outcome.stages.connectivity_s},
                        {"training_s", outcome.stages.training_s},
                        {"local_plan_s", outcome.stages.local_plan_s}};
  if (outcome.path)
    j["path"] = path_to_json(*outcome.path);
  else
    j["failure_stage"] = outcome.failure_stage;
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return s;
}

}  // namespace zonal
