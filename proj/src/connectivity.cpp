#include "zonal/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace zonal {

namespace {

constexpr double kAbutTol = 1e-9;

// "Radius" analogs for boxes. Reach bounds how far an obstacle's body can
// stick out from its centroid along a facet normal (max half-extent); the
// mean half-extent stands in for the mean radius in the gap threshold.
double obstacle_reach(const Obstacle& o) {
  if (o.is_ball()) return o.ball().radius;
  double r = 0.0;
  for (int k = 0; k < o.dim(); ++k)
    r = std::max(r, 0.5 * (o.box().max_corner[k] - o.box().min_corner[k]));
  return r;
}

double obstacle_mean_halfwidth(const Obstacle& o) {
  if (o.is_ball()) return o.ball().radius;
  double s = 0.0;
  for (int k = 0; k < o.dim(); ++k) s += 0.5 * (o.box().max_corner[k] - o.box().min_corner[k]);
  return s / o.dim();
}

}  // namespace

std::optional<Facet> shared_facet(const Zone& zi, const Zone& zj) {
  const int n = zi.cell.dim();
  for (int axis = 0; axis < n; ++axis) {
    double coord;
    if (std::abs(zi.cell.max_corner[axis] - zj.cell.min_corner[axis]) <= kAbutTol)
      coord = zi.cell.max_corner[axis];
    else if (std::abs(zj.cell.max_corner[axis] - zi.cell.min_corner[axis]) <= kAbutTol)
      coord = zj.cell.max_corner[axis];
    else
      continue;

    Facet f;
    f.axis = axis;
    f.coord = coord;
    f.overlap = zi.cell;
    bool positive = true;
    for (int k = 0; k < n; ++k) {
      if (k == axis) {
        f.overlap.min_corner[k] = coord;
        f.overlap.max_corner[k] = coord;
        continue;
      }
      double lo = std::max(zi.cell.min_corner[k], zj.cell.min_corner[k]);
      double hi = std::min(zi.cell.max_corner[k], zj.cell.max_corner[k]);
      if (!(hi - lo > kAbutTol)) {
        positive = false;
        break;
      }
      f.overlap.min_corner[k] = lo;
      f.overlap.max_corner[k] = hi;
    }
    if (positive) return f;
  }
  return std::nullopt;
}

namespace {

bool accessible_2d(const Facet& f, const WorldMap& map, double delta, double gamma_c,
                   AccessStats* stats) {
  const int t = 1 - f.axis;  // tangent axis of the facet interval
  const double lo = f.overlap.min_corner[t];
  const double hi = f.overlap.max_corner[t];

  std::vector<double> pts;
  for (const Obstacle& o : map.obstacles) {
    PointN c = o.centroid();
    if (std::abs(c[f.axis] - f.coord) < delta && c[t] >= lo && c[t] <= hi) pts.push_back(c[t]);
  }
  if (stats) stats->strip_points += pts.size();

  // Endpoints make the empty strip fully open and a single point meaningful.
  pts.push_back(lo);
  pts.push_back(hi);
  if (stats) {
    std::sort(pts.begin(), pts.end(), [stats](double a, double b) {
      ++stats->comparisons;
      return a < b;
    });
  } else {
    std::sort(pts.begin(), pts.end());
  }

  double max_gap = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) max_gap = std::max(max_gap, pts[i] - pts[i - 1]);
  return max_gap >= gamma_c;
}

bool accessible_nd(const Facet& f, const WorldMap& map, double delta, double gamma_c,
                   AccessStats* stats) {
  const int n = f.overlap.dim();

  // Facet tiling: per tangent axis, floor(extent / gamma_c) cells of side
  // >= gamma_c. A facet narrower than gamma_c has no admissible passage.
  std::vector<int> axes, counts;
  std::vector<double> sides;
  long total = 1;
  for (int k = 0; k < n; ++k) {
    if (k == f.axis) continue;
    double ext = f.overlap.extent(k);
    int m = static_cast<int>(std::floor(ext / gamma_c));
    if (m < 1) return false;
    axes.push_back(k);
    counts.push_back(m);
    sides.push_back(ext / m);
    total *= m;
  }

  // Only obstacles whose inflated bounding box meets the extruded facet can
  // block a probe; prefilter once per facet.
  Aabb slab = f.overlap;
  slab.min_corner[f.axis] = f.coord - delta;
  slab.max_corner[f.axis] = f.coord + delta;
  std::vector<const Obstacle*> near;
  for (const Obstacle& o : map.obstacles) {
    PointN lo, hi;
    o.bounding_box(lo, hi);
    bool overlap = true;
    for (int k = 0; k < n; ++k) {
      if (hi[k] + map.agent_radius < slab.min_corner[k] ||
          lo[k] - map.agent_radius > slab.max_corner[k]) {
        overlap = false;
        break;
      }
    }
    if (overlap) near.push_back(&o);
  }

  std::vector<int> idx(axes.size(), 0);
  for (long cell = 0; cell < total; ++cell) {
    PointN center = f.overlap.min_corner;
    for (std::size_t a = 0; a < axes.size(); ++a)
      center[axes[a]] += (idx[a] + 0.5) * sides[a];
    center[f.axis] = f.coord;

    PointN from = center, to = center;
    from[f.axis] -= delta;
    to[f.axis] += delta;

    if (stats) ++stats->cells_probed;
    bool blocked = false;
    for (const Obstacle* o : near) {
      if (obstacle_hits_segment(*o, from, to, map.agent_radius)) {
        blocked = true;
        break;
      }
    }
    if (!blocked) return true;

    for (std::size_t a = 0; a < axes.size(); ++a) {
      if (++idx[a] < counts[a]) break;
      idx[a] = 0;
    }
  }
  return false;
}

}  // namespace

bool is_accessible(const Zone& zi, const Zone& zj, const WorldMap& map, double delta,
                   double gamma_c, AccessStats* stats) {
  if (delta <= 0.0 || gamma_c <= 0.0)
    throw std::invalid_argument("is_accessible: delta and gamma_c must be positive");
  auto facet = shared_facet(zi, zj);
  if (!facet) return false;
  if (map.dimension() == 2) return accessible_2d(*facet, map, delta, gamma_c, stats);
  return accessible_nd(*facet, map, delta, gamma_c, stats);
}

ZoneGraph::ZoneGraph(int zone_count, double delta, double gamma_c)
    : zone_count_(zone_count),
      delta_(delta),
      gamma_c_(gamma_c),
      adj_(static_cast<std::size_t>(zone_count)) {}

void ZoneGraph::add_edge(int i, int j) {
  if (i == j) throw std::invalid_argument("ZoneGraph: self loop");
  if (i > j) std::swap(i, j);
  adj_[static_cast<std::size_t>(i)].push_back(j);
  adj_[static_cast<std::size_t>(j)].push_back(i);
  edges_.emplace_back(i, j);
  std::sort(adj_[static_cast<std::size_t>(i)].begin(), adj_[static_cast<std::size_t>(i)].end());
  std::sort(adj_[static_cast<std::size_t>(j)].begin(), adj_[static_cast<std::size_t>(j)].end());
  std::sort(edges_.begin(), edges_.end());
}

bool ZoneGraph::accessible(int i, int j) const {
  const auto& nb = adj_[static_cast<std::size_t>(i)];
  return std::binary_search(nb.begin(), nb.end(), j);
}

ZoneGraph build_zone_graph(const Decomposition& dec, const WorldMap& map, double delta,
                           double gamma_c) {
  if (delta <= 0.0 || gamma_c <= 0.0)
    throw std::invalid_argument("build_zone_graph: delta and gamma_c must be positive");
  const auto& zones = dec.zones();
  ZoneGraph g(dec.zone_count(), delta, gamma_c);
  for (std::size_t i = 0; i < zones.size(); ++i) {
    for (std::size_t j = i + 1; j < zones.size(); ++j) {
      if (is_accessible(zones[i], zones[j], map, delta, gamma_c)) {
        g.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return g;
}

double default_delta(const WorldMap& map) {
  double max_r = 0.0;
  for (const Obstacle& o : map.obstacles) max_r = std::max(max_r, obstacle_reach(o));
  return std::max(2.0 * max_r, 1e-3 * map.bounds.min_extent());
}

double default_gamma_c(const WorldMap& map) {
  double mean_r = 0.0;
  if (!map.obstacles.empty()) {
    for (const Obstacle& o : map.obstacles) mean_r += obstacle_mean_halfwidth(o);
    mean_r /= static_cast<double>(map.obstacles.size());
  }
  return std::max(2.0 * map.agent_radius + 2.0 * mean_r, 1e-3 * map.bounds.min_extent());
}

}  // namespace zonal
