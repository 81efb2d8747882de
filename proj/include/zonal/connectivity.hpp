#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "zonal/geometry.hpp"
#include "zonal/partition.hpp"

namespace zonal {

// Shared facet between two abutting cells: the abutment axis, the plane
// coordinate, and the (n-1)-dimensional overlap box (degenerate on `axis`).
struct Facet {
  int axis = 0;
  double coord = 0.0;
  Aabb overlap;
};

// Facet of positive (n-1)-measure shared by the two cells, or nullopt.
std::optional<Facet> shared_facet(const Zone& zi, const Zone& zj);

// Work counters for the accessibility test (quasi-linearity checks).
struct AccessStats {
  std::size_t strip_points = 0;
  std::size_t comparisons = 0;
  std::size_t cells_probed = 0;
};

// Is the border between zi and zj passable?
//
// 2D: gather obstacle centroids inside the delta-strip straddling the facet
// and within the facet's common range, add the facet endpoints, sort along
// the facet, and pass iff the largest consecutive gap is >= gamma_c.
//
// n >= 3: tile the facet with cells of side >= gamma_c; a cell is free when
// no inflated obstacle hits the segment through its center extruded +-delta
// along the facet normal; pass iff any cell is free.
bool is_accessible(const Zone& zi, const Zone& zj, const WorldMap& map, double delta,
                   double gamma_c, AccessStats* stats = nullptr);

class ZoneGraph {
 public:
  ZoneGraph() = default;
  ZoneGraph(int zone_count, double delta, double gamma_c);

  void add_edge(int i, int j);

  int zone_count() const { return zone_count_; }
  const std::vector<int>& neighbors(int zone) const {
    return adj_[static_cast<std::size_t>(zone)];
  }
  bool accessible(int i, int j) const;
  // Unordered edge list, each pair with i < j, sorted.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  double delta() const { return delta_; }
  double gamma_c() const { return gamma_c_; }

 private:
  int zone_count_ = 0;
  double delta_ = 0.0;
  double gamma_c_ = 0.0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
};

// Edge (i,j) present iff the cells share a facet and is_accessible holds.
ZoneGraph build_zone_graph(const Decomposition& dec, const WorldMap& map, double delta,
                           double gamma_c);

// Default strip half-width: twice the largest obstacle circumradius, so any
// obstacle overlapping a facet has its centroid inside the strip.
double default_delta(const WorldMap& map);

// Default gap threshold: agent diameter plus twice the mean circumradius
// (the centroid gap test ignores obstacle extent; this compensates).
double default_gamma_c(const WorldMap& map);

}  // namespace zonal
