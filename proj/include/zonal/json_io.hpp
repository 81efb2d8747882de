#pragma once

#include <string>

#include <json.hpp>

#include "zonal/harness.hpp"

namespace zonal {

using nlohmann::json;

// Map file, format 1:
// {"format":1, "dimension":n, "bounds":{"min":[...],"max":[...]},
//  "obstacles":[{"kind":"ball","center":[...],"radius":r} |
//               {"kind":"box","min":[...],"max":[...]}],
//  "start":[...], "goal":[...], "agent_radius":r}
json map_to_json(const WorldMap& map);
WorldMap map_from_json(const json& j);
void save_map(const WorldMap& map, const std::string& path);
WorldMap load_map(const std::string& path);

// Scenario file mirrors the Scenario struct; planner entries accept partial
// knob objects, absent values meaning "derive from the map".
json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);
Scenario load_scenario(const std::string& path);

json decomposition_to_json(const Decomposition& dec);
json zone_graph_to_json(const ZoneGraph& g);
json path_to_json(const Path& p);

// Full per-query run ledger: map, zones, graph, plan outcome, timings.
json trial_ledger_json(const WorldMap& map, const TrialOutcome& outcome,
                       const std::string& planner_id);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace zonal
