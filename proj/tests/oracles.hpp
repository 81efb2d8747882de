#pragma once

// Independent reference implementations used only by tests. Each one checks
// a production path by a different route: dense sampling for exact segment
// tests, occupancy-grid flood fill for facet accessibility, value iteration
// for the learned policy.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "zonal/connectivity.hpp"
#include "zonal/geometry.hpp"
#include "zonal/hl_planner.hpp"
#include "zonal/partition.hpp"

namespace zonal::oracle {

// Dense-sampling stand-in for segment_collides: point tests at dt-spaced
// parameters, endpoints included.
inline bool segment_collides_sampled(const PointN& a, const PointN& b, const WorldMap& map,
                                     double dt = 1e-3) {
  for (double t = 0.0; t < 1.0; t += dt) {
    if (point_collides(lerp(a, b, t), map)) return true;
  }
  return point_collides(b, map);
}

// Deepest penetration of the inflated obstacle set along [a,b]; negative
// when the segment stays clear. Fine sampling; used on rare disagreements.
inline double max_penetration(const PointN& a, const PointN& b, const WorldMap& map,
                              double dt = 1e-5) {
  double pen = -std::numeric_limits<double>::infinity();
  for (double t = 0.0; t <= 1.0; t += dt)
    pen = std::max(pen, map.agent_radius - clearance(lerp(a, b, t), map));
  return pen;
}

// Occupancy-grid flood fill across the delta-strip of a facet (2D). Cell
// size gamma_c / 4; free cells are those whose center clears every obstacle
// at agent_radius; returns true when some free corridor connects the strip's
// low side to its high side by 4-connectivity.
inline bool corridor_exists(const Facet& f, const WorldMap& map, double delta, double gamma_c) {
  const int t_axis = 1 - f.axis;
  const double cell = gamma_c / 4.0;
  const double lo_n = f.coord - delta, hi_n = f.coord + delta;
  const double lo_t = f.overlap.min_corner[t_axis], hi_t = f.overlap.max_corner[t_axis];
  const int rows = std::max(2, static_cast<int>(std::ceil((hi_n - lo_n) / cell)));
  const int cols = std::max(1, static_cast<int>(std::ceil((hi_t - lo_t) / cell)));

  // Only obstacles near the strip rectangle can block a cell center.
  std::vector<const Obstacle*> near;
  for (const Obstacle& o : map.obstacles) {
    PointN blo, bhi;
    o.bounding_box(blo, bhi);
    if (bhi[f.axis] + map.agent_radius < lo_n || blo[f.axis] - map.agent_radius > hi_n) continue;
    if (bhi[t_axis] + map.agent_radius < lo_t || blo[t_axis] - map.agent_radius > hi_t) continue;
    near.push_back(&o);
  }

  auto center = [&](int r, int c) {
    PointN p = PointN::zeros(2);
    p[f.axis] = lo_n + (r + 0.5) * (hi_n - lo_n) / rows;
    p[t_axis] = lo_t + (c + 0.5) * (hi_t - lo_t) / cols;
    return p;
  };
  auto free_cell = [&](int r, int c) {
    PointN p = center(r, c);
    for (const Obstacle* o : near)
      if (obstacle_hits_point(*o, p, map.agent_radius)) return false;
    return true;
  };

  std::vector<char> seen(static_cast<std::size_t>(rows * cols), 0);
  std::queue<std::pair<int, int>> q;
  for (int c = 0; c < cols; ++c) {
    if (free_cell(0, c)) {
      q.emplace(0, c);
      seen[static_cast<std::size_t>(c)] = 1;
    }
  }
  while (!q.empty()) {
    auto [r, c] = q.front();
    q.pop();
    if (r == rows - 1) return true;
    const int dr[] = {1, -1, 0, 0}, dc[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      int nr = r + dr[k], nc = c + dc[k];
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      std::size_t idx = static_cast<std::size_t>(nr * cols + nc);
      if (seen[idx]) continue;
      seen[idx] = 1;
      if (free_cell(nr, nc)) q.emplace(nr, nc);
    }
  }
  return false;
}

struct ViSolution {
  std::vector<double> value;   // V*(z), goal fixed at 0
  std::vector<int> argmax;     // greedy action per zone, ties lowest id, -1 if none
};

// Exact value iteration on the deterministic zone MDP train() optimizes:
// transitioning to a gives reward(z, a) and, unless a is the goal, the
// discounted continuation V(a).
inline ViSolution value_iteration(const ZoneGraph& graph, const WorldMap& map,
                                  const Decomposition& dec, const RewardWeights& w_resolved,
                                  double gamma, int goal_zone, double tol = 1e-10) {
  const int n = graph.zone_count();
  ViSolution sol;
  sol.value.assign(static_cast<std::size_t>(n), 0.0);
  sol.argmax.assign(static_cast<std::size_t>(n), -1);

  for (int iter = 0; iter < 2000000; ++iter) {
    double delta = 0.0;
    for (int z = 0; z < n; ++z) {
      if (z == goal_zone) continue;
      const auto& nb = graph.neighbors(z);
      if (nb.empty()) continue;
      double best = -std::numeric_limits<double>::infinity();
      for (int a : nb) {
        double q = reward(dec.zone(z), dec.zone(a), goal_zone, map, w_resolved);
        if (a != goal_zone) q += gamma * sol.value[static_cast<std::size_t>(a)];
        best = std::max(best, q);
      }
      delta = std::max(delta, std::abs(best - sol.value[static_cast<std::size_t>(z)]));
      sol.value[static_cast<std::size_t>(z)] = best;
    }
    if (delta < tol) break;
  }

  for (int z = 0; z < n; ++z) {
    if (z == goal_zone) continue;
    const auto& nb = graph.neighbors(z);
    double best = -std::numeric_limits<double>::infinity();
    for (int a : nb) {
      double q = reward(dec.zone(z), dec.zone(a), goal_zone, map, w_resolved);
      if (a != goal_zone) q += gamma * sol.value[static_cast<std::size_t>(a)];
      if (q > best) {  // strict: lowest id wins ties
        best = q;
        sol.argmax[static_cast<std::size_t>(z)] = a;
      }
    }
  }
  return sol;
}

}  // namespace zonal::oracle
