#pragma once

// Constructed maps and decompositions shared by the unit and acceptance
// suites.

#include <vector>

#include "zonal/geometry.hpp"
#include "zonal/harness.hpp"
#include "zonal/partition.hpp"
#include "zonal/rng.hpp"

namespace zonal::fixtures {

inline Aabb square_bounds(double extent, int dim = 2) {
  Aabb b;
  b.min_corner = PointN::zeros(dim);
  b.max_corner = PointN::zeros(dim);
  for (int k = 0; k < dim; ++k) b.max_corner[k] = extent;
  return b;
}

inline WorldMap empty_map(double extent = 100.0, int dim = 2) {
  WorldMap m;
  m.bounds = square_bounds(extent, dim);
  m.start = PointN::zeros(dim);
  m.goal = PointN::zeros(dim);
  for (int k = 0; k < dim; ++k) {
    m.start[k] = 0.05 * extent;
    m.goal[k] = 0.95 * extent;
  }
  return m;
}

// Uniform 2^levels lattice cells over bounds (midpoint splits, axes cycling),
// for hand-built decompositions.
inline std::vector<Aabb> lattice_cells(const Aabb& bounds, int levels) {
  std::vector<Aabb> cells{bounds};
  for (int d = 0; d < levels; ++d) {
    const int axis = d % bounds.dim();
    std::vector<Aabb> next;
    for (const Aabb& c : cells) {
      const double mid = 0.5 * (c.min_corner[axis] + c.max_corner[axis]);
      Aabb lo = c, hi = c;
      lo.max_corner[axis] = mid;
      hi.min_corner[axis] = mid;
      next.push_back(lo);
      next.push_back(hi);
    }
    cells = std::move(next);
  }
  return cells;
}

// Vertical wall of balls along x = 50 in a [0,100]^2 map, rows spaced
// `spacing` apart in y from 0.5 to 99.5 (flush with the map edges), with one
// gap of `gap_size` starting at `gap_at` (gap_size 0 means a solid wall).
// Start/goal sit either side of the wall.
inline WorldMap wall_map(double spacing, double gap_at, double gap_size, double radius = 0.9) {
  WorldMap m = empty_map(100.0);
  m.start = {10.0, 50.0};
  m.goal = {90.0, 50.0};
  for (double y = 0.5; y <= 99.5; y += spacing) {
    if (gap_size > 0.0 && y > gap_at && y < gap_at + gap_size) continue;
    m.obstacles.push_back(Obstacle(Ball{{50.0, y}, radius}));
  }
  return m;
}

// Corridor-vs-detour map: start and goal sit in sparse outer zones of the
// bottom row, the two middle bottom zones are dense but passable, and the
// whole top row is sparse. With depth 3 the kd build yields a 4x2 zone
// layout where the direct route crosses the dense middle and the detour
// runs through the top.
inline WorldMap corridor_detour_map() {
  WorldMap m = empty_map(100.0);
  m.start = {5.0, 10.0};
  m.goal = {95.0, 10.0};

  const double tiny = 0.2, big = 2.2;
  const double tiny_x[] = {3, 6, 9, 12, 15, 18};
  const double tiny_y[] = {8, 14, 22, 28, 36, 44};
  // Bottom-left sparse block (start zone).
  for (int i = 0; i < 6; ++i) m.obstacles.push_back(Obstacle(Ball{{tiny_x[i], tiny_y[i]}, tiny}));
  // Bottom mid-left dense block.
  for (double x : {38.0, 47.0})
    for (double y : {8.0, 24.0, 40.0}) m.obstacles.push_back(Obstacle(Ball{{x, y}, big}));
  // Mirror image on the right (goal side).
  for (int i = 0; i < 6; ++i)
    m.obstacles.push_back(Obstacle(Ball{{100.0 - tiny_x[i], tiny_y[i]}, tiny}));
  for (double x : {62.0, 53.0})
    for (double y : {8.0, 24.0, 40.0}) m.obstacles.push_back(Obstacle(Ball{{x, y}, big}));
  // Sparse top rows, both halves; x extremes pin the root split at 48/52.
  const double top_x[] = {2, 10, 19, 28, 37, 48};
  const double top_y[] = {56, 64, 72, 80, 88, 96};
  for (int i = 0; i < 6; ++i) {
    m.obstacles.push_back(Obstacle(Ball{{top_x[i], top_y[i]}, tiny}));
    m.obstacles.push_back(Obstacle(Ball{{top_x[i] + 1.0, top_y[5 - i]}, tiny}));
    m.obstacles.push_back(Obstacle(Ball{{100.0 - top_x[i], top_y[i]}, tiny}));
    m.obstacles.push_back(Obstacle(Ball{{99.0 - top_x[i], top_y[5 - i]}, tiny}));
  }
  return m;
}

// Three square zones in a row; start in the left one, goal in the right one.
inline WorldMap chain_map() {
  WorldMap m;
  m.bounds = square_bounds(300.0);
  m.bounds.max_corner[1] = 100.0;
  m.start = {20.0, 50.0};
  m.goal = {280.0, 50.0};
  m.obstacles.push_back(Obstacle(Ball{{80.0, 20.0}, 3.0}));
  m.obstacles.push_back(Obstacle(Ball{{150.0, 80.0}, 3.0}));
  m.obstacles.push_back(Obstacle(Ball{{220.0, 30.0}, 3.0}));
  return m;
}

inline Decomposition chain_decomposition(const WorldMap& m) {
  std::vector<Aabb> cells;
  for (int i = 0; i < 3; ++i) {
    Aabb c = m.bounds;
    c.min_corner[0] = 100.0 * i;
    c.max_corner[0] = 100.0 * (i + 1);
    cells.push_back(c);
  }
  return decomposition_from_cells(m, cells);
}

}  // namespace zonal::fixtures
