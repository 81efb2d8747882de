#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "zonal/harness.hpp"
#include "zonal/partition.hpp"
#include "zonal/rng.hpp"

using namespace zonal;

namespace {

WorldMap balls_at(std::vector<PointN> centers, double r = 0.5, double extent = 10.0) {
  WorldMap m = fixtures::empty_map(extent);
  for (auto& c : centers) m.obstacles.push_back(Obstacle(Ball{c, r}));
  return m;
}

}  // namespace

TEST_CASE("build_kdtree: depth 0 keeps the whole map as a single zone") {
  WorldMap m = balls_at({{3.0, 3.0}, {7.0, 7.0}});
  Decomposition dec = build_kdtree(m, 0);
  REQUIRE(dec.zone_count() == 1);
  CHECK(dec.zone(0).cell.measure() == doctest::Approx(100.0));
  CHECK(dec.zone(0).obstacle_ids.size() == 2);
  CHECK(dec.zone_of({5.0, 5.0}) == 0);
}

TEST_CASE("build_kdtree: empty obstacle list forces depth 0") {
  WorldMap m = fixtures::empty_map(10.0);
  Decomposition dec = build_kdtree(m, 3);
  CHECK(dec.zone_count() == 1);
  CHECK(dec.max_depth() == 0);
}

TEST_CASE("build_kdtree: lower-median split on the first axis") {
  WorldMap m = balls_at({{1.0, 5.0}, {2.0, 5.0}, {8.0, 5.0}, {9.0, 5.0}});
  Decomposition dec = build_kdtree(m, 1);
  REQUIRE(dec.zone_count() == 2);
  REQUIRE(dec.split_planes().size() == 1);
  CHECK(dec.split_planes()[0].axis == 0);
  CHECK(dec.split_planes()[0].coord == doctest::Approx(2.0));  // lower median of {1,2,8,9}
  CHECK(dec.zone(0).cell.max_corner[0] == doctest::Approx(2.0));
  CHECK(dec.zone(0).cell.measure() == doctest::Approx(20.0));
  CHECK(dec.zone(1).cell.measure() == doctest::Approx(80.0));
  // Tie rule: the centroid exactly on the plane belongs to the lower child.
  CHECK(dec.zone(0).obstacle_ids == std::vector<int>{0, 1});
  CHECK(dec.zone(1).obstacle_ids == std::vector<int>{2, 3});
}

TEST_CASE("build_kdtree: depth 4 in 2D yields 16 zones") {
  WorldMap m = gen_forest_map(2, 100, 200.0, {1.0, 3.0}, 7, ObstacleKind::Ball);
  Decomposition dec = build_kdtree(m, 4);
  CHECK(dec.zone_count() == 16);
  CHECK(dec.split_planes().size() == 15);
}

TEST_CASE("build_kdtree: axes cycle with depth") {
  WorldMap m = gen_forest_map(3, 60, 100.0, {1.0, 2.0}, 3, ObstacleKind::Box);
  Decomposition dec = build_kdtree(m, 3);
  REQUIRE(dec.zone_count() == 8);
  // Preorder: root splits axis 0, second level axis 1, third level axis 2.
  CHECK(dec.split_planes()[0].axis == 0);
  CHECK(dec.split_planes()[1].axis == 1);
  CHECK(dec.split_planes()[2].axis == 2);
}

TEST_CASE("zone_of: split-plane points go to the upper child") {
  WorldMap m = balls_at({{1.0, 5.0}, {2.0, 5.0}, {8.0, 5.0}, {9.0, 5.0}});
  Decomposition dec = build_kdtree(m, 1);
  CHECK(dec.zone_of({2.0, 5.0}) == 1);  // exactly on x = 2
  CHECK(dec.zone_of({1.999, 5.0}) == 0);
  CHECK(dec.zone_of({10.0, 5.0}) == 1);  // outer max face belongs to the boundary zone
  CHECK_THROWS_AS(dec.zone_of({10.5, 5.0}), std::domain_error);
}

TEST_CASE("zone_of: membership matches the owning cell on random points") {
  WorldMap m = gen_forest_map(2, 300, 200.0, {1.0, 3.0}, 11, ObstacleKind::Ball);
  Decomposition dec = build_kdtree(m, 4);
  Rng rng(0x50f7);
  for (int i = 0; i < 10000; ++i) {
    PointN p{rng.uniform(0.0, 200.0), rng.uniform(0.0, 200.0)};
    const Zone& z = dec.zone(dec.zone_of(p));
    CHECK(z.cell.contains(p));
  }
}

TEST_CASE("zone_density: empty zone, analytic value, scaling law") {
  WorldMap m = fixtures::empty_map(10.0);
  Decomposition dec = build_kdtree(m, 0);
  CHECK(zone_density(dec.zone(0), m) == 0.0);

  WorldMap one = balls_at({{5.0, 5.0}}, 1.0, 10.0);
  Decomposition dec1 = build_kdtree(one, 0);
  CHECK(zone_density(dec1.zone(0), one) == doctest::Approx(M_PI / 100.0));

  WorldMap doubled = balls_at({{5.0, 5.0}}, 2.0, 10.0);
  Decomposition dec2 = build_kdtree(doubled, 0);
  CHECK(zone_density(dec2.zone(0), doubled) / zone_density(dec1.zone(0), one) ==
        doctest::Approx(4.0));
}

TEST_CASE("median balance: leaf member counts stay within one of N / 2^D") {
  Rng rng(0xba1a);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 64 + rng.uniform_int(200);
    WorldMap m = gen_forest_map(2, n, 200.0, {0.5, 1.5},
                                0xabc0 + static_cast<std::uint64_t>(trial), ObstacleKind::Ball);
    const int depth = 1 + rng.uniform_int(5);  // 2^5 = 32 <= 64 <= n
    Decomposition dec = build_kdtree(m, depth);

    int recount = 0;
    const double ideal = static_cast<double>(n) / (1 << depth);
    for (const Zone& z : dec.zones()) {
      recount += static_cast<int>(z.obstacle_ids.size());
      CHECK(static_cast<double>(z.obstacle_ids.size()) >= std::floor(ideal) - 1);
      CHECK(static_cast<double>(z.obstacle_ids.size()) <= std::ceil(ideal) + 1);
    }
    CHECK(recount == n);  // every obstacle in exactly one zone
  }
}

TEST_CASE("partition property: cell measures sum to the bounds measure") {
  for (int depth : {1, 3, 6}) {
    WorldMap m = gen_forest_map(3, 150, 200.0, {2.0, 5.0}, 99, ObstacleKind::Box);
    Decomposition dec = build_kdtree(m, depth);
    CHECK(dec.zone_count() == (1 << depth));
    double total = 0.0;
    for (const Zone& z : dec.zones()) total += z.cell.measure();
    CHECK(total == doctest::Approx(m.bounds.measure()).epsilon(1e-9));
  }
}

TEST_CASE("rebuilding from a permuted obstacle list gives identical planes") {
  WorldMap m = gen_forest_map(2, 151, 200.0, {1.0, 3.0}, 5, ObstacleKind::Ball);
  WorldMap perm = m;
  std::reverse(perm.obstacles.begin(), perm.obstacles.end());

  Decomposition a = build_kdtree(m, 4);
  Decomposition b = build_kdtree(perm, 4);
  REQUIRE(a.split_planes().size() == b.split_planes().size());
  for (std::size_t i = 0; i < a.split_planes().size(); ++i) {
    CHECK(a.split_planes()[i].axis == b.split_planes()[i].axis);
    CHECK(a.split_planes()[i].coord == b.split_planes()[i].coord);
  }
  for (int z = 0; z < a.zone_count(); ++z) {
    CHECK(a.zone(z).cell.min_corner == b.zone(z).cell.min_corner);
    CHECK(a.zone(z).cell.max_corner == b.zone(z).cell.max_corner);
    CHECK(a.zone(z).density == doctest::Approx(b.zone(z).density).epsilon(1e-12));
  }
}

TEST_CASE("deep trees split empty cells at the midpoint and keep 2^d leaves") {
  WorldMap m = balls_at({{1.0, 1.0}, {9.0, 9.0}});
  Decomposition dec = build_kdtree(m, 5);
  CHECK(dec.zone_count() == 32);
  double total = 0.0;
  for (const Zone& z : dec.zones()) {
    CHECK(z.cell.measure() > 0.0);
    total += z.cell.measure();
  }
  CHECK(total == doctest::Approx(100.0));
}

TEST_CASE("decomposition_from_cells covers points and computes densities") {
  WorldMap m = fixtures::chain_map();
  Decomposition dec = fixtures::chain_decomposition(m);
  REQUIRE(dec.zone_count() == 3);
  CHECK(dec.zone_of(m.start) == 0);
  CHECK(dec.zone_of(m.goal) == 2);
  CHECK(dec.zone_of({100.0, 50.0}) == 1);  // shared face goes to the upper cell
  for (const Zone& z : dec.zones()) CHECK(z.obstacle_ids.size() == 1);
}
