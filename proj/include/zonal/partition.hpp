#pragma once

#include <vector>

#include "zonal/geometry.hpp"

namespace zonal {

// Leaf cell of the kd decomposition. obstacle_ids are the obstacles whose
// centroid lies in the cell; density uses the full obstacle measure, not the
// part clipped to the cell.
struct Zone {
  int id = 0;
  Aabb cell;
  int depth = 0;
  std::vector<int> obstacle_ids;
  double density = 0.0;
};

struct SplitPlane {
  int axis = 0;
  double coord = 0.0;
};

// Binary kd decomposition of the map bounds. Leaves partition the bounds
// exactly; every point maps to one zone under the half-open convention
// (points on an internal split plane belong to the upper child, points on
// the outer max face to the adjacent boundary zone).
class Decomposition {
 public:
  const std::vector<Zone>& zones() const { return zones_; }
  const Zone& zone(int id) const { return zones_[static_cast<std::size_t>(id)]; }
  int zone_count() const { return static_cast<int>(zones_.size()); }
  int max_depth() const { return max_depth_; }
  const std::vector<SplitPlane>& split_planes() const { return split_planes_; }
  const Aabb& bounds() const { return bounds_; }

  // Zone id owning p. Throws std::domain_error if p is outside bounds.
  int zone_of(const PointN& p) const;

 private:
  struct Node {
    int axis = -1;
    double coord = 0.0;
    int lower = -1;
    int upper = -1;
    int zone_id = -1;  // set on leaves
  };

  Aabb bounds_;
  int max_depth_ = 0;
  std::vector<Node> nodes_;  // empty for cell-list decompositions
  std::vector<Zone> zones_;
  std::vector<SplitPlane> split_planes_;

  friend Decomposition build_kdtree(const WorldMap& map, int max_depth);
  friend Decomposition decomposition_from_cells(const WorldMap& map,
                                                const std::vector<Aabb>& cells);
};

// Recursive median split of obstacle centroids, cycling axes (depth mod n).
// Lower median for even counts; on-plane centroids go to the lower child;
// cells without centroids (or whose median degenerates onto a cell face)
// split at the geometric midpoint so the 2^depth leaf count holds. An empty
// obstacle list forces max_depth to 0.
Decomposition build_kdtree(const WorldMap& map, int max_depth);

int zone_of(const Decomposition& dec, const PointN& p);

// Sum of member obstacle measures divided by cell measure.
double zone_density(const Zone& zone, const WorldMap& map);

// Assemble a decomposition from an explicit leaf-cell list (cells must tile
// the map bounds; the caller is responsible for that). Zone membership and
// density are computed from the map; zone_of uses a linear scan under the
// usual half-open convention.
Decomposition decomposition_from_cells(const WorldMap& map, const std::vector<Aabb>& cells);

}  // namespace zonal
