#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zonal/connectivity.hpp"
#include "zonal/geometry.hpp"
#include "zonal/hl_planner.hpp"
#include "zonal/partition.hpp"
#include "zonal/rng.hpp"

namespace zonal {

// Zero-valued knobs are derived from the map at resolve time: step_size =
// 2% of the bounds diagonal, goal_tolerance = step_size / 2, rewire_radius =
// 3 * step_size.
struct RrtParams {
  double step_size = 0.0;
  double goal_bias = 0.05;
  int max_iterations = 30000;
  double goal_tolerance = 0.0;
  double rewire_radius = 0.0;   // RRT* only
  bool first_solution = true;   // RRT*: stop at the initial path
  std::uint64_t seed = 0;
};

RrtParams resolve_rrt_params(RrtParams p, const WorldMap& map);

// gamma_s of 0 resolves to 2 * agent_radius + 0.1 * mean obstacle
// circumradius, floored at 0.5 world units.
struct SubgoalParams {
  int m = 20;
  double gamma_s = 0.0;
};

SubgoalParams resolve_subgoal_params(SubgoalParams sp, const WorldMap& map);

struct Path {
  std::vector<PointN> waypoints;
  double length = 0.0;
  std::vector<int> zone_sequence;  // zonal pipeline only
  std::vector<PointN> subgoals;    // zonal pipeline only
};

double polyline_length(const std::vector<PointN>& pts);

// Uniform sampling in region with goal bias, nearest neighbor by Euclidean
// distance, fixed-step extension, edges validated by the exact collision
// predicate (grid-accelerated; a null grid means build one locally).
// Returns the tree path once a node within goal_tolerance connects to the
// exact goal; nullopt on iteration timeout.
std::optional<Path> rrt(const PointN& start, const PointN& goal, const Aabb& region,
                        const WorldMap& map, const RrtParams& p, CollisionGrid* grid = nullptr);

struct RrtStarTrace {
  // (iteration, best path length so far) sampled every 500 iterations.
  std::vector<std::pair<int, double>> best_length_at;
};

// RRT with choose-parent and rewiring inside rewire_radius. With
// first_solution the initial path is returned; otherwise the best path at
// max_iterations. rewire_radius = 0 degenerates to plain rrt.
std::optional<Path> rrt_star(const PointN& start, const PointN& goal, const Aabb& region,
                             const WorldMap& map, const RrtParams& p,
                             RrtStarTrace* trace = nullptr, CollisionGrid* grid = nullptr);

// Draw m uniform candidates in next_zone.cell, keep those with clearance >=
// gamma_s, return the one nearest the goal. entry_facet documents the zone
// transition being prepared (the candidates themselves are zone-uniform).
std::optional<PointN> choose_subgoal(const Zone& next_zone, const Facet& entry_facet,
                                     const PointN& goal, const WorldMap& map,
                                     const SubgoalParams& sp, Rng& rng,
                                     CollisionGrid* grid = nullptr);

struct PlanFailure {
  std::string stage;  // route | subgoal | local_rrt | goal_rrt
  int zone_id = -1;
};

struct TrajectoryResult {
  std::optional<Path> path;
  PlanFailure failure;  // meaningful when !path
  double subgoal_s = 0.0;
  double local_rrt_s = 0.0;
  double goal_rrt_s = 0.0;
};

// High-level sequence -> subgoal per upcoming zone -> RRT leg over the
// union box of the two cells -> RRT* from the last subgoal to the goal
// inside the goal zone. A leg that times out is retried once with a fresh
// subgoal; a failed subgoal draw is retried once with 2m candidates.
TrajectoryResult get_trajectory(const WorldMap& map, const Decomposition& dec,
                                const ZoneGraph& graph, const QTable& qtable, const RrtParams& rp,
                                const SubgoalParams& sp);

// Path contract used by the harness on every returned path: collision-free
// segments, exact start, end within tolerance of goal.
bool path_valid(const Path& path, const WorldMap& map, const PointN& start, const PointN& goal,
                double goal_tolerance);

}  // namespace zonal
