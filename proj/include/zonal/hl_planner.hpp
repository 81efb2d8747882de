#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "zonal/connectivity.hpp"
#include "zonal/geometry.hpp"
#include "zonal/partition.hpp"

namespace zonal {

// Reward weights and normalizers. c_d / c_rho of 0 mean "derive from the
// map": bounds diagonal and map-wide mean nonzero zone density. Normalizing
// keeps both reward components O(1) so the w's are scale-free across maps.
struct RewardWeights {
  double w1 = 1.0;   // distance component
  double w2 = 1.0;   // density component
  double w3 = 10.0;  // goal bonus
  double c_d = 0.0;
  double c_rho = 0.0;
};

RewardWeights resolve_weights(RewardWeights w, const WorldMap& map, const Decomposition& dec);

struct QHyperparams {
  double alpha = 0.1;
  double gamma = 0.9;
  double epsilon = 0.9;
  int episodes = 5000;
  int max_steps_per_episode = 0;  // 0: 4 * zone_count
  int stability_window = 200;
  std::uint64_t seed = 0;
};

// State-action values keyed by the directed versions of graph edges.
class QTable {
 public:
  QTable() = default;
  explicit QTable(const ZoneGraph& graph);

  double get(int zone, int action) const;
  void set(int zone, int action, double value);
  // Highest-valued action from zone, ties broken by lowest zone id; -1 when
  // the zone has no outgoing edges.
  int greedy_action(int zone) const;
  double max_value(int zone) const;  // 0 when no actions
  const std::vector<int>& actions(int zone) const {
    return actions_[static_cast<std::size_t>(zone)];
  }
  int zone_count() const { return static_cast<int>(actions_.size()); }
  std::vector<int> greedy_policy() const;

  bool operator==(const QTable& o) const {
    return actions_ == o.actions_ && values_ == o.values_;
  }

 private:
  std::vector<std::vector<int>> actions_;     // sorted neighbor ids
  std::vector<std::vector<double>> values_;   // parallel to actions_
};

// Reward for the transition from_zone -> to_zone: w1 * (-dist(to.center,
// goal)/c_d) + w2 * (-to.density/c_rho) + w3 * [to == goal zone].
double reward(const Zone& from_zone, const Zone& to_zone, int goal_zone_id, const WorldMap& map,
              const RewardWeights& w);

// One Q-value update; the max term is 0 when z_next is the goal zone.
// Returns the new Q(z, a).
double q_update(QTable& q, int z, int a, double r, int z_next, int goal_zone_id,
                const QHyperparams& h);

struct TrainResult {
  QTable table;
  bool degenerate = false;  // start zone had no outgoing edges
  int episodes_run = 0;
  bool converged_early = false;
};

// Episodic epsilon-greedy training from the start zone; deterministic
// transitions over the zone graph; stops early once the greedy policy is
// stable for stability_window consecutive episodes. Deterministic per seed.
TrainResult train(const ZoneGraph& graph, const WorldMap& map, const Decomposition& dec,
                  RewardWeights w, QHyperparams h);

// Greedy walk start -> goal; nullopt when a zone repeats, the step count
// exceeds the zone count, or a zone has no actions.
std::optional<std::vector<int>> extract_sequence(const QTable& q, const ZoneGraph& graph,
                                                 int start_zone, int goal_zone);

}  // namespace zonal
