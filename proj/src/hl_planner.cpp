#include "zonal/hl_planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zonal/rng.hpp"

namespace zonal {

RewardWeights resolve_weights(RewardWeights w, const WorldMap& map, const Decomposition& dec) {
  if (w.w1 < 0 || w.w2 < 0 || w.w3 < 0)
    throw std::invalid_argument("RewardWeights: weights must be >= 0");
  if (w.w1 == 0 && w.w2 == 0 && w.w3 == 0)
    throw std::invalid_argument("RewardWeights: at least one weight must be positive");
  if (w.c_d <= 0.0) w.c_d = map.bounds.diagonal();
  if (w.c_rho <= 0.0) {
    double sum = 0.0;
    int nonzero = 0;
    for (const Zone& z : dec.zones()) {
      if (z.density > 0.0) {
        sum += z.density;
        ++nonzero;
      }
    }
    w.c_rho = nonzero > 0 ? sum / nonzero : 1.0;
  }
  return w;
}

double reward(const Zone& from_zone, const Zone& to_zone, int goal_zone_id, const WorldMap& map,
              const RewardWeights& w) {
  (void)from_zone;  // per-step reward is a function of the destination zone
  const double r_d = -distance(to_zone.cell.center(), map.goal) / w.c_d;
  const double r_rho = -to_zone.density / w.c_rho;
  const double bonus = (to_zone.id == goal_zone_id) ? w.w3 : 0.0;
  return w.w1 * r_d + w.w2 * r_rho + bonus;
}

QTable::QTable(const ZoneGraph& graph) {
  actions_.resize(static_cast<std::size_t>(graph.zone_count()));
  values_.resize(static_cast<std::size_t>(graph.zone_count()));
  for (int z = 0; z < graph.zone_count(); ++z) {
    actions_[static_cast<std::size_t>(z)] = graph.neighbors(z);
    values_[static_cast<std::size_t>(z)].assign(actions_[static_cast<std::size_t>(z)].size(), 0.0);
  }
}

namespace {

std::size_t action_index(const std::vector<int>& actions, int a) {
  auto it = std::lower_bound(actions.begin(), actions.end(), a);
  if (it == actions.end() || *it != a) throw std::invalid_argument("QTable: no such edge");
  return static_cast<std::size_t>(it - actions.begin());
}

}  // namespace

double QTable::get(int zone, int action) const {
  const auto& acts = actions_[static_cast<std::size_t>(zone)];
  return values_[static_cast<std::size_t>(zone)][action_index(acts, action)];
}

void QTable::set(int zone, int action, double value) {
  const auto& acts = actions_[static_cast<std::size_t>(zone)];
  values_[static_cast<std::size_t>(zone)][action_index(acts, action)] = value;
}

int QTable::greedy_action(int zone) const {
  const auto& acts = actions_[static_cast<std::size_t>(zone)];
  const auto& vals = values_[static_cast<std::size_t>(zone)];
  if (acts.empty()) return -1;
  std::size_t best = 0;
  for (std::size_t i = 1; i < acts.size(); ++i)
    if (vals[i] > vals[best]) best = i;  // strict: first (lowest id) wins ties
  return acts[best];
}

double QTable::max_value(int zone) const {
  const auto& vals = values_[static_cast<std::size_t>(zone)];
  if (vals.empty()) return 0.0;
  return *std::max_element(vals.begin(), vals.end());
}

std::vector<int> QTable::greedy_policy() const {
  std::vector<int> p(actions_.size());
  for (int z = 0; z < zone_count(); ++z) p[static_cast<std::size_t>(z)] = greedy_action(z);
  return p;
}

double q_update(QTable& q, int z, int a, double r, int z_next, int goal_zone_id,
                const QHyperparams& h) {
  const double max_next = (z_next == goal_zone_id) ? 0.0 : q.max_value(z_next);
  const double old = q.get(z, a);
  const double updated = old + h.alpha * (r + h.gamma * max_next - old);
  q.set(z, a, updated);
  return updated;
}

TrainResult train(const ZoneGraph& graph, const WorldMap& map, const Decomposition& dec,
                  RewardWeights w, QHyperparams h) {
  if (h.alpha <= 0.0 || h.alpha > 1.0) throw std::invalid_argument("train: alpha in (0,1]");
  if (h.gamma < 0.0 || h.gamma >= 1.0) throw std::invalid_argument("train: gamma in [0,1)");
  if (h.epsilon < 0.0 || h.epsilon > 1.0) throw std::invalid_argument("train: epsilon in [0,1]");
  if (h.episodes <= 0 || h.stability_window <= 0)
    throw std::invalid_argument("train: episodes and stability_window must be positive");

  w = resolve_weights(w, map, dec);
  const int start_zone = dec.zone_of(map.start);
  const int goal_zone = dec.zone_of(map.goal);
  const int max_steps =
      h.max_steps_per_episode > 0 ? h.max_steps_per_episode : 4 * graph.zone_count();

  TrainResult res;
  res.table = QTable(graph);
  if (start_zone == goal_zone) return res;
  if (graph.neighbors(start_zone).empty()) {
    res.degenerate = true;
    return res;
  }

  Rng rng(h.seed);
  std::vector<int> prev_policy = res.table.greedy_policy();
  int stable = 0;

  for (int ep = 0; ep < h.episodes; ++ep) {
    int z = start_zone;
    for (int step = 0; step < max_steps; ++step) {
      const auto& acts = res.table.actions(z);
      if (acts.empty()) break;
      int a;
      if (rng.unit() < h.epsilon) {
        a = acts[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(acts.size())))];
      } else {
        // Exploitation breaks exact ties uniformly at random.
        double best = res.table.get(z, acts[0]);
        for (int cand : acts) best = std::max(best, res.table.get(z, cand));
        std::vector<int> tied;
        for (int cand : acts)
          if (res.table.get(z, cand) == best) tied.push_back(cand);
        a = tied[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(tied.size())))];
      }
      const double r = reward(dec.zone(z), dec.zone(a), goal_zone, map, w);
      q_update(res.table, z, a, r, a, goal_zone, h);
      z = a;
      if (z == goal_zone) break;
    }
    ++res.episodes_run;

    std::vector<int> policy = res.table.greedy_policy();
    if (policy == prev_policy) {
      if (++stable >= h.stability_window) {
        res.converged_early = true;
        break;
      }
    } else {
      stable = 0;
      prev_policy = std::move(policy);
    }
  }
  return res;
}

std::optional<std::vector<int>> extract_sequence(const QTable& q, const ZoneGraph& graph,
                                                 int start_zone, int goal_zone) {
  (void)graph;
  std::vector<int> seq{start_zone};
  if (start_zone == goal_zone) return seq;
  std::vector<bool> visited(static_cast<std::size_t>(q.zone_count()), false);
  visited[static_cast<std::size_t>(start_zone)] = true;
  int z = start_zone;
  for (int step = 0; step < q.zone_count(); ++step) {
    int a = q.greedy_action(z);
    if (a < 0) return std::nullopt;
    if (visited[static_cast<std::size_t>(a)]) return std::nullopt;  // cycle
    visited[static_cast<std::size_t>(a)] = true;
    seq.push_back(a);
    if (a == goal_zone) return seq;
    z = a;
  }
  return std::nullopt;  // exceeded zone_count steps
}

}  // namespace zonal
