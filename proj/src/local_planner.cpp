#include "zonal/local_planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zonal {

namespace {

double mean_halfwidth(const WorldMap& map) {
  if (map.obstacles.empty()) return 0.0;
  double s = 0.0;
  for (const Obstacle& o : map.obstacles) {
    if (o.is_ball()) {
      s += o.ball().radius;
    } else {
      double t = 0.0;
      for (int k = 0; k < o.dim(); ++k)
        t += 0.5 * (o.box().max_corner[k] - o.box().min_corner[k]);
      s += t / o.dim();
    }
  }
  return s / static_cast<double>(map.obstacles.size());
}

PointN sample_in(const Aabb& box, Rng& rng) {
  PointN p = PointN::zeros(box.dim());
  for (int k = 0; k < box.dim(); ++k) p[k] = rng.uniform(box.min_corner[k], box.max_corner[k]);
  return p;
}

struct Tree {
  std::vector<PointN> nodes;
  std::vector<int> parent;

  int add(const PointN& p, int par) {
    nodes.push_back(p);
    parent.push_back(par);
    return static_cast<int>(nodes.size() - 1);
  }

  int nearest(const PointN& p) const {
    int best = 0;
    double best_d = distance(nodes[0], p);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      double d = distance(nodes[i], p);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  std::vector<PointN> path_to(int idx) const {
    std::vector<PointN> out;
    for (int i = idx; i >= 0; i = parent[static_cast<std::size_t>(i)])
      out.push_back(nodes[static_cast<std::size_t>(i)]);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

void check_params(const RrtParams& p, const Aabb& region) {
  if (p.step_size <= 0.0) throw std::invalid_argument("RrtParams: step_size must be positive");
  if (p.goal_bias < 0.0 || p.goal_bias >= 1.0)
    throw std::invalid_argument("RrtParams: goal_bias in [0,1)");
  if (p.max_iterations <= 0) throw std::invalid_argument("RrtParams: max_iterations > 0");
  if (p.goal_tolerance <= 0.0 || p.goal_tolerance > p.step_size)
    throw std::invalid_argument("RrtParams: goal_tolerance in (0, step_size]");
  (void)region;
}

Path make_path(std::vector<PointN> waypoints) {
  Path p;
  p.length = polyline_length(waypoints);
  p.waypoints = std::move(waypoints);
  return p;
}

}  // namespace

double polyline_length(const std::vector<PointN>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

RrtParams resolve_rrt_params(RrtParams p, const WorldMap& map) {
  const double diag = map.bounds.diagonal();
  if (p.step_size <= 0.0) p.step_size = 0.02 * diag;
  if (p.step_size >= map.bounds.min_extent())
    throw std::invalid_argument("RrtParams: step_size must be below the smallest bounds extent");
  if (p.goal_tolerance <= 0.0) p.goal_tolerance = 0.5 * p.step_size;
  if (p.rewire_radius <= 0.0) p.rewire_radius = 3.0 * p.step_size;
  return p;
}

SubgoalParams resolve_subgoal_params(SubgoalParams sp, const WorldMap& map) {
  if (sp.m <= 0) throw std::invalid_argument("SubgoalParams: m must be positive");
  if (sp.gamma_s <= 0.0)
    sp.gamma_s = std::max(2.0 * map.agent_radius + 0.1 * mean_halfwidth(map), 0.5);
  return sp;
}

std::optional<Path> rrt(const PointN& start, const PointN& goal, const Aabb& region,
                        const WorldMap& map, const RrtParams& p, CollisionGrid* grid_in) {
  check_params(p, region);
  const Aabb box = Aabb::intersect(region, map.bounds);
  if (start == goal) return make_path({start});

  Rng rng(p.seed);
  std::optional<CollisionGrid> own_grid;
  if (!grid_in) grid_in = &own_grid.emplace(map);
  CollisionGrid& grid = *grid_in;
  Tree tree;
  tree.add(start, -1);

  for (int it = 0; it < p.max_iterations; ++it) {
    const PointN sample = (rng.unit() < p.goal_bias) ? goal : sample_in(box, rng);
    const int nearest = tree.nearest(sample);
    const PointN& from = tree.nodes[static_cast<std::size_t>(nearest)];
    const double d = distance(from, sample);
    if (d == 0.0) continue;
    const PointN next = d <= p.step_size ? sample : lerp(from, sample, p.step_size / d);
    if (grid.segment_hits(from, next)) continue;
    const int idx = tree.add(next, nearest);

    if (distance(next, goal) <= p.goal_tolerance) {
      if (next == goal) return make_path(tree.path_to(idx));
      if (!grid.segment_hits(next, goal)) {
        auto pts = tree.path_to(idx);
        pts.push_back(goal);
        return make_path(std::move(pts));
      }
    }
  }
  return std::nullopt;
}

std::optional<Path> rrt_star(const PointN& start, const PointN& goal, const Aabb& region,
                             const WorldMap& map, const RrtParams& p, RrtStarTrace* trace,
                             CollisionGrid* grid_in) {
  check_params(p, region);
  const Aabb box = Aabb::intersect(region, map.bounds);
  if (start == goal) return make_path({start});

  Rng rng(p.seed);
  std::optional<CollisionGrid> own_grid;
  if (!grid_in) grid_in = &own_grid.emplace(map);
  CollisionGrid& grid = *grid_in;
  Tree tree;
  tree.add(start, -1);
  std::vector<double> cost{0.0};
  std::vector<std::vector<int>> children{{}};
  // Nodes verified to connect collision-free to the exact goal.
  std::vector<int> goal_nodes;

  auto best_goal_cost = [&]() {
    double best = std::numeric_limits<double>::infinity();
    for (int gi : goal_nodes)
      best = std::min(best, cost[static_cast<std::size_t>(gi)] +
                                distance(tree.nodes[static_cast<std::size_t>(gi)], goal));
    return best;
  };

  auto reparent = [&](int node, int new_parent, double new_cost) {
    int old_parent = tree.parent[static_cast<std::size_t>(node)];
    if (old_parent >= 0) {
      auto& c = children[static_cast<std::size_t>(old_parent)];
      c.erase(std::find(c.begin(), c.end(), node));
    }
    tree.parent[static_cast<std::size_t>(node)] = new_parent;
    children[static_cast<std::size_t>(new_parent)].push_back(node);
    const double delta = new_cost - cost[static_cast<std::size_t>(node)];
    // Propagate the improvement through the subtree.
    std::vector<int> stack{node};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      cost[static_cast<std::size_t>(v)] += delta;
      for (int c : children[static_cast<std::size_t>(v)]) stack.push_back(c);
    }
  };

  for (int it = 0; it < p.max_iterations; ++it) {
    if (trace && it % 500 == 0 && !goal_nodes.empty())
      trace->best_length_at.emplace_back(it, best_goal_cost());

    const PointN sample = (rng.unit() < p.goal_bias) ? goal : sample_in(box, rng);
    const int nearest = tree.nearest(sample);
    const PointN& from = tree.nodes[static_cast<std::size_t>(nearest)];
    const double d = distance(from, sample);
    if (d == 0.0) continue;
    const PointN next = d <= p.step_size ? sample : lerp(from, sample, p.step_size / d);
    if (grid.segment_hits(from, next)) continue;

    // Choose parent among neighbors within rewire_radius.
    std::vector<int> near;
    if (p.rewire_radius > 0.0) {
      for (std::size_t i = 0; i < tree.nodes.size(); ++i)
        if (distance(tree.nodes[i], next) <= p.rewire_radius) near.push_back(static_cast<int>(i));
    }
    int parent = nearest;
    double parent_cost = cost[static_cast<std::size_t>(nearest)] + distance(from, next);
    for (int cand : near) {
      if (cand == nearest) continue;
      double c = cost[static_cast<std::size_t>(cand)] +
                 distance(tree.nodes[static_cast<std::size_t>(cand)], next);
      if (c < parent_cost &&
          !grid.segment_hits(tree.nodes[static_cast<std::size_t>(cand)], next)) {
        parent = cand;
        parent_cost = c;
      }
    }

    const int idx = tree.add(next, parent);
    cost.push_back(parent_cost);
    children.emplace_back();
    children[static_cast<std::size_t>(parent)].push_back(idx);

    // Rewire neighbors through the new node when that shortens them.
    for (int cand : near) {
      double through = parent_cost + distance(next, tree.nodes[static_cast<std::size_t>(cand)]);
      if (through + 1e-12 < cost[static_cast<std::size_t>(cand)] &&
          !grid.segment_hits(next, tree.nodes[static_cast<std::size_t>(cand)])) {
        reparent(cand, idx, through);
      }
    }

    if (distance(next, goal) <= p.goal_tolerance) {
      if (next == goal || !grid.segment_hits(next, goal)) {
        goal_nodes.push_back(idx);
        if (p.first_solution) {
          auto pts = tree.path_to(idx);
          if (!(next == goal)) pts.push_back(goal);
          return make_path(std::move(pts));
        }
      }
    }
  }

  if (goal_nodes.empty()) return std::nullopt;
  int best = goal_nodes[0];
  double best_c = std::numeric_limits<double>::infinity();
  for (int gi : goal_nodes) {
    double c = cost[static_cast<std::size_t>(gi)] +
               distance(tree.nodes[static_cast<std::size_t>(gi)], goal);
    if (c < best_c) {
      best_c = c;
      best = gi;
    }
  }
  auto pts = tree.path_to(best);
  if (!(pts.back() == goal)) pts.push_back(goal);
  return make_path(std::move(pts));
}

std::optional<PointN> choose_subgoal(const Zone& next_zone, const Facet& entry_facet,
                                     const PointN& goal, const WorldMap& map,
                                     const SubgoalParams& sp, Rng& rng, CollisionGrid* grid_in) {
  (void)entry_facet;
  std::optional<CollisionGrid> own_grid;
  if (!grid_in) grid_in = &own_grid.emplace(map);
  std::optional<PointN> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sp.m; ++i) {
    PointN cand = sample_in(next_zone.cell, rng);
    if (grid_in->any_surface_within(cand, sp.gamma_s)) continue;  // clearance < gamma_s
    double d = distance(cand, goal);
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  }
  return best;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void append_leg(Path& total, const Path& leg) {
  // Legs start exactly where the previous one ended; drop the junction dup.
  std::size_t begin = total.waypoints.empty() ? 0 : 1;
  for (std::size_t i = begin; i < leg.waypoints.size(); ++i)
    total.waypoints.push_back(leg.waypoints[i]);
}

}  // namespace

TrajectoryResult get_trajectory(const WorldMap& map, const Decomposition& dec,
                                const ZoneGraph& graph, const QTable& qtable, const RrtParams& rp0,
                                const SubgoalParams& sp0) {
  const RrtParams rp = resolve_rrt_params(rp0, map);
  const SubgoalParams sp = resolve_subgoal_params(sp0, map);

  TrajectoryResult res;
  const int start_zone = dec.zone_of(map.start);
  const int goal_zone = dec.zone_of(map.goal);

  auto seq = extract_sequence(qtable, graph, start_zone, goal_zone);
  if (!seq) {
    res.failure = {"route", start_zone};
    return res;
  }

  Rng rng(rp.seed);
  CollisionGrid grid(map);
  // A leg explores a fraction of the map; give it a matching fraction of the
  // iteration budget (floored) so a blocked subgoal fails fast and the retry
  // stays cheap.
  auto leg_params = [&](const Aabb& region) {
    RrtParams q = rp;
    q.seed = rng.fork();
    const double frac = std::min(1.0, region.measure() / map.bounds.measure());
    q.max_iterations =
        std::max(2000, static_cast<int>(static_cast<double>(rp.max_iterations) * frac));
    q.max_iterations = std::min(q.max_iterations, rp.max_iterations);
    return q;
  };

  // Next zone already the goal zone (or start == goal zone): one direct RRT*.
  if (seq->size() <= 2) {
    Aabb region = dec.zone(start_zone).cell;
    for (int z : *seq) region = Aabb::unite(region, dec.zone(z).cell);
    auto t0 = Clock::now();
    auto path = rrt_star(map.start, map.goal, region, map, leg_params(region), nullptr, &grid);
    res.goal_rrt_s = seconds_since(t0);
    if (!path) {
      res.failure = {"goal_rrt", goal_zone};
      return res;
    }
    path->zone_sequence = *seq;
    res.path = std::move(path);
    return res;
  }

  Path total;
  total.zone_sequence = *seq;
  PointN current = map.start;

  auto run_leg = [&](const PointN& from, const PointN& to, const Aabb& region) {
    auto t0 = Clock::now();
    auto leg = rrt(from, to, region, map, leg_params(region), &grid);
    res.local_rrt_s += seconds_since(t0);
    return leg;
  };

  // A subgoal is drawn in every upcoming zone of the sequence, the goal zone
  // included; the direct goal connection happens afterwards inside that zone.
  for (std::size_t i = 1; i < seq->size(); ++i) {
    const Zone& prev_zone = dec.zone((*seq)[i - 1]);
    const Zone& next_zone = dec.zone((*seq)[i]);
    auto facet = shared_facet(prev_zone, next_zone);
    if (!facet) {
      res.failure = {"route", next_zone.id};
      return res;
    }

    auto draw_subgoal = [&]() -> std::optional<PointN> {
      auto t0 = Clock::now();
      auto sg = choose_subgoal(next_zone, *facet, map.goal, map, sp, rng, &grid);
      if (!sg) {
        SubgoalParams doubled = sp;
        doubled.m = 2 * sp.m;
        sg = choose_subgoal(next_zone, *facet, map.goal, map, doubled, rng, &grid);
      }
      res.subgoal_s += seconds_since(t0);
      return sg;
    };

    auto subgoal = draw_subgoal();
    if (!subgoal) {
      res.failure = {"subgoal", next_zone.id};
      return res;
    }

    const Aabb region = Aabb::unite(prev_zone.cell, next_zone.cell);
    auto leg = run_leg(current, *subgoal, region);
    if (!leg) {
      // One retry with a fresh subgoal; a bad draw should not kill the query.
      subgoal = draw_subgoal();
      if (!subgoal) {
        res.failure = {"subgoal", next_zone.id};
        return res;
      }
      leg = run_leg(current, *subgoal, region);
    }
    if (!leg) {
      res.failure = {"local_rrt", next_zone.id};
      return res;
    }

    append_leg(total, *leg);
    total.subgoals.push_back(*subgoal);
    current = *subgoal;
  }

  // Final leg inside the goal zone.
  auto t0 = Clock::now();
  auto final_leg = rrt_star(current, map.goal, dec.zone(goal_zone).cell, map,
                            leg_params(dec.zone(goal_zone).cell), nullptr, &grid);
  res.goal_rrt_s = seconds_since(t0);
  if (!final_leg) {
    res.failure = {"goal_rrt", goal_zone};
    return res;
  }
  append_leg(total, *final_leg);
  total.length = polyline_length(total.waypoints);
  res.path = std::move(total);
  return res;
}

bool path_valid(const Path& path, const WorldMap& map, const PointN& start, const PointN& goal,
                double goal_tolerance) {
  if (path.waypoints.empty()) return false;
  if (!(path.waypoints.front() == start)) return false;
  if (distance(path.waypoints.back(), goal) > goal_tolerance) return false;
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    if (segment_collides(path.waypoints[i - 1], path.waypoints[i], map)) return false;
  return true;
}

}  // namespace zonal
