#include "zonal/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace zonal {

int Decomposition::zone_of(const PointN& p) const {
  if (!bounds_.contains(p)) throw std::domain_error("zone_of: point outside bounds");
  if (!nodes_.empty()) {
    int idx = 0;
    while (nodes_[static_cast<std::size_t>(idx)].zone_id < 0) {
      const Node& nd = nodes_[static_cast<std::size_t>(idx)];
      idx = (p[nd.axis] < nd.coord) ? nd.lower : nd.upper;
    }
    return nodes_[static_cast<std::size_t>(idx)].zone_id;
  }
  // Cell-list decomposition: half-open membership, closed on faces that lie
  // on the outer bounds maximum.
  for (const Zone& z : zones_) {
    bool inside = true;
    for (int k = 0; k < p.dim(); ++k) {
      const bool outer_max = z.cell.max_corner[k] == bounds_.max_corner[k];
      if (p[k] < z.cell.min_corner[k] || p[k] > z.cell.max_corner[k] ||
          (p[k] == z.cell.max_corner[k] && !outer_max)) {
        inside = false;
        break;
      }
    }
    if (inside) return z.id;
  }
  throw std::domain_error("zone_of: point not covered by any cell");
}

int zone_of(const Decomposition& dec, const PointN& p) { return dec.zone_of(p); }

double zone_density(const Zone& zone, const WorldMap& map) {
  double total = 0.0;
  for (int id : zone.obstacle_ids) total += map.obstacles[static_cast<std::size_t>(id)].measure();
  return total / zone.cell.measure();
}

Decomposition build_kdtree(const WorldMap& map, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("build_kdtree: max_depth must be >= 0");
  if (map.obstacles.empty()) max_depth = 0;

  Decomposition dec;
  dec.bounds_ = map.bounds;
  dec.max_depth_ = max_depth;

  const int n = map.dimension();
  std::vector<PointN> centroids;
  centroids.reserve(map.obstacles.size());
  for (const Obstacle& o : map.obstacles) centroids.push_back(o.centroid());

  std::vector<int> all(map.obstacles.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);

  // Explicit stack-free recursion via a lambda; nodes in preorder, lower first.
  struct Frame {
    Aabb cell;
    std::vector<int> members;
    int depth;
  };

  auto make_leaf = [&](const Aabb& cell, std::vector<int> members, int depth) {
    Zone z;
    z.id = static_cast<int>(dec.zones_.size());
    z.cell = cell;
    z.depth = depth;
    std::sort(members.begin(), members.end());
    z.obstacle_ids = std::move(members);
    z.density = zone_density(z, map);
    Decomposition::Node nd;
    nd.zone_id = z.id;
    dec.zones_.push_back(std::move(z));
    dec.nodes_.push_back(nd);
    return static_cast<int>(dec.nodes_.size() - 1);
  };

  auto rec = [&](auto&& self, const Aabb& cell, std::vector<int> members, int depth) -> int {
    if (depth == max_depth) return make_leaf(cell, std::move(members), depth);

    const int axis = depth % n;
    double coord;
    if (members.empty()) {
      coord = 0.5 * (cell.min_corner[axis] + cell.max_corner[axis]);
    } else {
      std::vector<double> cs;
      cs.reserve(members.size());
      for (int id : members) cs.push_back(centroids[static_cast<std::size_t>(id)][axis]);
      auto mid = cs.begin() + static_cast<std::ptrdiff_t>((cs.size() - 1) / 2);  // lower median
      std::nth_element(cs.begin(), mid, cs.end());
      coord = *mid;
      // A median on a cell face would create a zero-measure child.
      if (!(coord > cell.min_corner[axis] && coord < cell.max_corner[axis]))
        coord = 0.5 * (cell.min_corner[axis] + cell.max_corner[axis]);
    }

    std::vector<int> lower_members, upper_members;
    for (int id : members) {
      if (centroids[static_cast<std::size_t>(id)][axis] <= coord)
        lower_members.push_back(id);
      else
        upper_members.push_back(id);
    }

    Aabb lower_cell = cell, upper_cell = cell;
    lower_cell.max_corner[axis] = coord;
    upper_cell.min_corner[axis] = coord;

    const int node_idx = static_cast<int>(dec.nodes_.size());
    dec.nodes_.emplace_back();
    dec.nodes_[static_cast<std::size_t>(node_idx)].axis = axis;
    dec.nodes_[static_cast<std::size_t>(node_idx)].coord = coord;
    dec.split_planes_.push_back({axis, coord});

    int lo = self(self, lower_cell, std::move(lower_members), depth + 1);
    int hi = self(self, upper_cell, std::move(upper_members), depth + 1);
    dec.nodes_[static_cast<std::size_t>(node_idx)].lower = lo;
    dec.nodes_[static_cast<std::size_t>(node_idx)].upper = hi;
    return node_idx;
  };

  rec(rec, map.bounds, std::move(all), 0);
  return dec;
}

Decomposition decomposition_from_cells(const WorldMap& map, const std::vector<Aabb>& cells) {
  if (cells.empty()) throw std::invalid_argument("decomposition_from_cells: no cells");
  Decomposition dec;
  dec.bounds_ = map.bounds;
  dec.max_depth_ = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    Zone z;
    z.id = static_cast<int>(i);
    z.cell = cells[i];
    for (std::size_t oi = 0; oi < map.obstacles.size(); ++oi) {
      PointN c = map.obstacles[oi].centroid();
      bool inside = true;
      for (int k = 0; k < c.dim(); ++k) {
        const bool outer_max = z.cell.max_corner[k] == map.bounds.max_corner[k];
        if (c[k] < z.cell.min_corner[k] || c[k] > z.cell.max_corner[k] ||
            (c[k] == z.cell.max_corner[k] && !outer_max)) {
          inside = false;
          break;
        }
      }
      if (inside) z.obstacle_ids.push_back(static_cast<int>(oi));
    }
    z.density = zone_density(z, map);
    dec.zones_.push_back(std::move(z));
  }
  return dec;
}

}  // namespace zonal
