#include "zonal/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zonal {

namespace {

void require_same_dim(const PointN& a, const PointN& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

PointN::PointN(std::initializer_list<double> coords) {
  if (coords.size() > kMaxDim) throw std::invalid_argument("PointN: more than 6 coordinates");
  n_ = static_cast<int>(coords.size());
  int k = 0;
  for (double v : coords) c_[static_cast<std::size_t>(k++)] = v;
}

PointN PointN::zeros(int n) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("PointN: bad dimension");
  PointN p;
  p.n_ = n;
  return p;
}

PointN PointN::operator+(const PointN& o) const {
  PointN r = *this;
  for (int k = 0; k < n_; ++k) r[k] += o[k];
  return r;
}

PointN PointN::operator-(const PointN& o) const {
  PointN r = *this;
  for (int k = 0; k < n_; ++k) r[k] -= o[k];
  return r;
}

PointN PointN::operator*(double s) const {
  PointN r = *this;
  for (int k = 0; k < n_; ++k) r[k] *= s;
  return r;
}

double PointN::dot(const PointN& o) const {
  double s = 0.0;
  for (int k = 0; k < n_; ++k) s += (*this)[k] * o[k];
  return s;
}

double PointN::norm() const { return std::sqrt(dot(*this)); }

bool PointN::operator==(const PointN& o) const {
  if (n_ != o.n_) return false;
  for (int k = 0; k < n_; ++k)
    if ((*this)[k] != o[k]) return false;
  return true;
}

double distance(const PointN& a, const PointN& b) { return (a - b).norm(); }

PointN lerp(const PointN& a, const PointN& b, double t) {
  PointN r = a;
  for (int k = 0; k < a.dim(); ++k) r[k] = a[k] + t * (b[k] - a[k]);
  return r;
}

Obstacle::Obstacle(Ball b) : v_(std::move(b)) {
  const Ball& bb = ball();
  if (bb.center.dim() < 2) throw std::invalid_argument("Ball: dimension must be >= 2");
  if (!(bb.radius > 0.0) || !std::isfinite(bb.radius))
    throw std::invalid_argument("Ball: radius must be positive and finite");
}

Obstacle::Obstacle(AxisBox b) : v_(std::move(b)) {
  const AxisBox& bx = box();
  require_same_dim(bx.min_corner, bx.max_corner, "AxisBox");
  if (bx.min_corner.dim() < 2) throw std::invalid_argument("AxisBox: dimension must be >= 2");
  for (int k = 0; k < bx.min_corner.dim(); ++k) {
    if (!(bx.min_corner[k] < bx.max_corner[k]))
      throw std::invalid_argument("AxisBox: min_corner must be strictly below max_corner");
  }
}

int Obstacle::dim() const { return is_ball() ? ball().center.dim() : box().min_corner.dim(); }

PointN Obstacle::centroid() const {
  if (is_ball()) return ball().center;
  return lerp(box().min_corner, box().max_corner, 0.5);
}

double Obstacle::measure() const {
  if (is_ball()) {
    // n-ball volume: pi^(n/2) r^n / Gamma(n/2 + 1)
    const int n = dim();
    const double r = ball().radius;
    return std::pow(M_PI, n / 2.0) * std::pow(r, n) / std::tgamma(n / 2.0 + 1.0);
  }
  double m = 1.0;
  for (int k = 0; k < dim(); ++k) m *= box().max_corner[k] - box().min_corner[k];
  return m;
}

void Obstacle::bounding_box(PointN& lo, PointN& hi) const {
  if (is_ball()) {
    lo = hi = ball().center;
    for (int k = 0; k < dim(); ++k) {
      lo[k] -= ball().radius;
      hi[k] += ball().radius;
    }
  } else {
    lo = box().min_corner;
    hi = box().max_corner;
  }
}

double Aabb::measure() const {
  double m = 1.0;
  for (int k = 0; k < dim(); ++k) m *= extent(k);
  return m;
}

double Aabb::diagonal() const { return (max_corner - min_corner).norm(); }

double Aabb::min_extent() const {
  double e = std::numeric_limits<double>::infinity();
  for (int k = 0; k < dim(); ++k) e = std::min(e, extent(k));
  return e;
}

PointN Aabb::center() const { return lerp(min_corner, max_corner, 0.5); }

bool Aabb::contains(const PointN& p) const {
  for (int k = 0; k < dim(); ++k)
    if (p[k] < min_corner[k] || p[k] > max_corner[k]) return false;
  return true;
}

Aabb Aabb::unite(const Aabb& a, const Aabb& b) {
  Aabb r = a;
  for (int k = 0; k < a.dim(); ++k) {
    r.min_corner[k] = std::min(a.min_corner[k], b.min_corner[k]);
    r.max_corner[k] = std::max(a.max_corner[k], b.max_corner[k]);
  }
  return r;
}

Aabb Aabb::intersect(const Aabb& a, const Aabb& b) {
  Aabb r = a;
  for (int k = 0; k < a.dim(); ++k) {
    r.min_corner[k] = std::max(a.min_corner[k], b.min_corner[k]);
    r.max_corner[k] = std::min(a.max_corner[k], b.max_corner[k]);
  }
  return r;
}

namespace {

// Distance from p to the solid axis box [lo, hi]; 0 inside.
double point_box_distance(const PointN& p, const PointN& lo, const PointN& hi) {
  double s = 0.0;
  for (int k = 0; k < p.dim(); ++k) {
    double d = std::max({lo[k] - p[k], p[k] - hi[k], 0.0});
    s += d * d;
  }
  return std::sqrt(s);
}

// Distance from point c to closed segment [a, b].
double point_segment_distance(const PointN& c, const PointN& a, const PointN& b) {
  PointN ab = b - a;
  double len2 = ab.dot(ab);
  if (len2 == 0.0) return distance(c, a);
  double t = (c - a).dot(ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(c, lerp(a, b, t));
}

// Slab test: does [a,b] intersect the box [lo, hi]?
bool segment_box_intersects(const PointN& a, const PointN& b, const PointN& lo, const PointN& hi) {
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < a.dim(); ++k) {
    double d = b[k] - a[k];
    if (d == 0.0) {
      if (a[k] < lo[k] || a[k] > hi[k]) return false;
      continue;
    }
    double u = (lo[k] - a[k]) / d;
    double v = (hi[k] - a[k]) / d;
    if (u > v) std::swap(u, v);
    t0 = std::max(t0, u);
    t1 = std::min(t1, v);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

double signed_surface_distance(const PointN& p, const Obstacle& o) {
  if (o.is_ball()) return distance(p, o.ball().center) - o.ball().radius;
  const AxisBox& bx = o.box();
  double outside = point_box_distance(p, bx.min_corner, bx.max_corner);
  if (outside > 0.0) return outside;
  // Inside: negative distance to the nearest face.
  double depth = std::numeric_limits<double>::infinity();
  for (int k = 0; k < p.dim(); ++k)
    depth = std::min({depth, p[k] - bx.min_corner[k], bx.max_corner[k] - p[k]});
  return -depth;
}

bool obstacle_hits_point(const Obstacle& o, const PointN& p, double inflate) {
  if (o.is_ball()) return distance(p, o.ball().center) <= o.ball().radius + inflate;
  return point_box_distance(p, o.box().min_corner, o.box().max_corner) <= inflate;
}

bool obstacle_hits_segment(const Obstacle& o, const PointN& a, const PointN& b, double inflate) {
  if (o.is_ball())
    return point_segment_distance(o.ball().center, a, b) <= o.ball().radius + inflate;
  PointN lo = o.box().min_corner;
  PointN hi = o.box().max_corner;
  for (int k = 0; k < lo.dim(); ++k) {
    lo[k] -= inflate;
    hi[k] += inflate;
  }
  return segment_box_intersects(a, b, lo, hi);
}

bool point_collides(const PointN& p, const WorldMap& map) {
  require_same_dim(p, map.bounds.min_corner, "point_collides");
  if (!map.bounds.contains(p)) return true;
  for (const Obstacle& o : map.obstacles)
    if (obstacle_hits_point(o, p, map.agent_radius)) return true;
  return false;
}

bool segment_collides(const PointN& a, const PointN& b, const WorldMap& map) {
  require_same_dim(a, b, "segment_collides");
  require_same_dim(a, map.bounds.min_corner, "segment_collides");
  return any_obstacle_hits_segment(map, a, b);
}

bool any_obstacle_hits_segment(const WorldMap& map, const PointN& a, const PointN& b) {
  for (const Obstacle& o : map.obstacles)
    if (obstacle_hits_segment(o, a, b, map.agent_radius)) return true;
  return false;
}

double clearance(const PointN& p, const WorldMap& map) {
  double best = std::numeric_limits<double>::infinity();
  for (const Obstacle& o : map.obstacles) best = std::min(best, signed_surface_distance(p, o));
  return best;
}

CollisionGrid::CollisionGrid(const WorldMap& map) : map_(&map) {
  const int n = map.dimension();
  const int count = static_cast<int>(map.obstacles.size());
  per_axis_ = std::clamp(
      static_cast<int>(std::floor(std::pow(static_cast<double>(std::max(count, 1)),
                                           1.0 / static_cast<double>(n)))),
      1, 32);
  int total = 1;
  for (int k = 0; k < n; ++k) {
    origin_[static_cast<std::size_t>(k)] = map.bounds.min_corner[k];
    const double extent = std::max(map.bounds.extent(k), 1e-12);
    inv_cell_[static_cast<std::size_t>(k)] = per_axis_ / extent;
    total *= per_axis_;
  }
  cells_.resize(static_cast<std::size_t>(total));
  stamp_.assign(map.obstacles.size(), -1);

  for (int i = 0; i < count; ++i) {
    PointN lo, hi;
    map.obstacles[static_cast<std::size_t>(i)].bounding_box(lo, hi);
    std::array<int, kMaxDim> clo{}, chi{}, c{};
    for (int k = 0; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      clo[kk] = std::clamp(static_cast<int>((lo[k] - map.agent_radius - origin_[kk]) *
                                            inv_cell_[kk]),
                           0, per_axis_ - 1);
      chi[kk] = std::clamp(static_cast<int>((hi[k] + map.agent_radius - origin_[kk]) *
                                            inv_cell_[kk]),
                           0, per_axis_ - 1);
    }
    c = clo;
    for (;;) {
      cells_[static_cast<std::size_t>(cell_index(c))].push_back(i);
      int k = 0;
      for (; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (++c[kk] <= chi[kk]) break;
        c[kk] = clo[kk];
      }
      if (k == n) break;
    }
  }
}

int CollisionGrid::cell_index(const std::array<int, kMaxDim>& c) const {
  int idx = 0;
  for (int k = map_->dimension() - 1; k >= 0; --k)
    idx = idx * per_axis_ + c[static_cast<std::size_t>(k)];
  return idx;
}

bool CollisionGrid::segment_hits(const PointN& a, const PointN& b) {
  const int n = map_->dimension();
  ++epoch_;
  std::array<int, kMaxDim> clo{}, chi{}, c{};
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    const double lo = std::min(a[k], b[k]);
    const double hi = std::max(a[k], b[k]);
    clo[kk] = std::clamp(static_cast<int>((lo - origin_[kk]) * inv_cell_[kk]), 0, per_axis_ - 1);
    chi[kk] = std::clamp(static_cast<int>((hi - origin_[kk]) * inv_cell_[kk]), 0, per_axis_ - 1);
  }
  c = clo;
  for (;;) {
    for (int id : cells_[static_cast<std::size_t>(cell_index(c))]) {
      auto& s = stamp_[static_cast<std::size_t>(id)];
      if (s == epoch_) continue;
      s = epoch_;
      if (obstacle_hits_segment(map_->obstacles[static_cast<std::size_t>(id)], a, b,
                                map_->agent_radius))
        return true;
    }
    int k = 0;
    for (; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (++c[kk] <= chi[kk]) break;
      c[kk] = clo[kk];
    }
    if (k == n) break;
  }
  return false;
}

bool CollisionGrid::any_surface_within(const PointN& p, double t) {
  const int n = map_->dimension();
  ++epoch_;
  std::array<int, kMaxDim> clo{}, chi{}, c{};
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    clo[kk] =
        std::clamp(static_cast<int>((p[k] - t - origin_[kk]) * inv_cell_[kk]), 0, per_axis_ - 1);
    chi[kk] =
        std::clamp(static_cast<int>((p[k] + t - origin_[kk]) * inv_cell_[kk]), 0, per_axis_ - 1);
  }
  c = clo;
  for (;;) {
    for (int id : cells_[static_cast<std::size_t>(cell_index(c))]) {
      auto& s = stamp_[static_cast<std::size_t>(id)];
      if (s == epoch_) continue;
      s = epoch_;
      if (signed_surface_distance(p, map_->obstacles[static_cast<std::size_t>(id)]) < t)
        return true;
    }
    int k = 0;
    for (; k < n; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (++c[kk] <= chi[kk]) break;
      c[kk] = clo[kk];
    }
    if (k == n) break;
  }
  return false;
}

void validate(const WorldMap& map) {
  const int n = map.dimension();
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("WorldMap: dimension must be in [2,6]");
  require_same_dim(map.bounds.min_corner, map.bounds.max_corner, "WorldMap bounds");
  for (int k = 0; k < n; ++k) {
    if (!(map.bounds.min_corner[k] < map.bounds.max_corner[k]))
      throw std::invalid_argument("WorldMap: bounds must have positive extent");
  }
  if (map.agent_radius < 0.0) throw std::invalid_argument("WorldMap: agent_radius must be >= 0");
  require_same_dim(map.start, map.bounds.min_corner, "WorldMap start");
  require_same_dim(map.goal, map.bounds.min_corner, "WorldMap goal");
  for (const Obstacle& o : map.obstacles) {
    if (o.dim() != n) throw std::invalid_argument("WorldMap: obstacle dimension mismatch");
    if (!map.bounds.contains(o.centroid()))
      throw std::invalid_argument("WorldMap: obstacle centroid outside bounds");
  }
  if (point_collides(map.start, map))
    throw std::invalid_argument("WorldMap: start is in collision or outside bounds");
  if (point_collides(map.goal, map))
    throw std::invalid_argument("WorldMap: goal is in collision or outside bounds");
}

}  // namespace zonal
