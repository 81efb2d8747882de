#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <variant>
#include <vector>

namespace zonal {

inline constexpr int kMaxDim = 6;

// Coordinate vector in R^n, 2 <= n <= 6. Inline storage, value semantics.
class PointN {
 public:
  PointN() = default;
  PointN(std::initializer_list<double> coords);
  static PointN zeros(int n);

  int dim() const { return n_; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  PointN operator+(const PointN& o) const;
  PointN operator-(const PointN& o) const;
  PointN operator*(double s) const;
  double dot(const PointN& o) const;
  double norm() const;
  bool operator==(const PointN& o) const;
  bool operator!=(const PointN& o) const { return !(*this == o); }

 private:
  std::array<double, kMaxDim> c_{};
  int n_ = 0;
};

double distance(const PointN& a, const PointN& b);
PointN lerp(const PointN& a, const PointN& b, double t);

struct Ball {
  PointN center;
  double radius = 0.0;
};

struct AxisBox {
  PointN min_corner;
  PointN max_corner;
};

// Tagged union of the two obstacle shapes. Constructors validate the shape
// invariants (radius > 0, min < max per axis) and throw std::invalid_argument.
class Obstacle {
 public:
  explicit Obstacle(Ball b);
  explicit Obstacle(AxisBox b);

  bool is_ball() const { return std::holds_alternative<Ball>(v_); }
  const Ball& ball() const { return std::get<Ball>(v_); }
  const AxisBox& box() const { return std::get<AxisBox>(v_); }

  int dim() const;
  PointN centroid() const;  // ball center; box midpoint
  double measure() const;   // area in 2D, volume in 3D, ...
  // Smallest axis-aligned box containing the obstacle.
  void bounding_box(PointN& lo, PointN& hi) const;

 private:
  std::variant<Ball, AxisBox> v_;
};

struct Aabb {
  PointN min_corner;
  PointN max_corner;

  int dim() const { return min_corner.dim(); }
  double extent(int axis) const { return max_corner[axis] - min_corner[axis]; }
  double measure() const;
  double diagonal() const;
  double min_extent() const;
  PointN center() const;
  bool contains(const PointN& p) const;  // closed on all faces
  static Aabb unite(const Aabb& a, const Aabb& b);
  static Aabb intersect(const Aabb& a, const Aabb& b);
};

struct WorldMap {
  Aabb bounds;
  std::vector<Obstacle> obstacles;
  PointN start;
  PointN goal;
  double agent_radius = 0.0;

  int dimension() const { return bounds.dim(); }
};

// Throws std::invalid_argument if the map breaks its invariants (start/goal
// inside bounds and collision-free, centroids inside bounds, matching dims).
void validate(const WorldMap& map);

// Signed distance from p to the obstacle surface; negative inside.
double signed_surface_distance(const PointN& p, const Obstacle& o);

// Single-obstacle tests against the obstacle inflated by `inflate`.
// Boxes inflate per axis (conservative superset of the true Minkowski sum).
bool obstacle_hits_point(const Obstacle& o, const PointN& p, double inflate);
bool obstacle_hits_segment(const Obstacle& o, const PointN& a, const PointN& b, double inflate);

// True iff p is within agent_radius of any obstacle or outside bounds.
bool point_collides(const PointN& p, const WorldMap& map);

// True iff the closed segment [a,b] intersects any inflated obstacle.
// Exact point-segment distance for balls, slab test for inflated boxes.
bool segment_collides(const PointN& a, const PointN& b, const WorldMap& map);

// Minimum over obstacles of signed surface distance (agent radius NOT
// subtracted). +infinity when the map has no obstacles.
double clearance(const PointN& p, const WorldMap& map);

// Obstacle-only variant of segment_collides (no bounds semantics); used by
// facet probing where the probe segment may graze the outer boundary.
bool any_obstacle_hits_segment(const WorldMap& map, const PointN& a, const PointN& b);

// Uniform-grid broadphase over the map's obstacles (inflated by the agent
// radius). Queries return exactly what the linear scans return; the grid
// only prunes candidates. Planners build one per query; an instance is not
// shareable across threads (it keeps a visit-stamp scratch buffer).
class CollisionGrid {
 public:
  explicit CollisionGrid(const WorldMap& map);

  // Same predicate as segment_collides without the bounds precondition.
  bool segment_hits(const PointN& a, const PointN& b);

  // True iff some obstacle surface lies strictly within distance t of p
  // (i.e. clearance(p, map) < t), ignoring the agent radius.
  bool any_surface_within(const PointN& p, double t);

 private:
  const WorldMap* map_;
  int per_axis_ = 1;
  std::array<double, kMaxDim> origin_{};
  std::array<double, kMaxDim> inv_cell_{};
  std::vector<std::vector<int>> cells_;
  std::vector<int> stamp_;
  int epoch_ = 0;

  int cell_index(const std::array<int, kMaxDim>& c) const;
};

}  // namespace zonal
