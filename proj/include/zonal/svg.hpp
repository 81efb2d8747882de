#pragma once

#include <string>

#include "zonal/connectivity.hpp"
#include "zonal/geometry.hpp"
#include "zonal/local_planner.hpp"
#include "zonal/partition.hpp"

namespace zonal {

// Scene render: obstacles, zone boundaries, accessible-edge overlay,
// subgoals, path polyline, start/goal markers. Maps with n > 2 are drawn as
// their projection onto the first two axes. Output is byte-stable for equal
// inputs (fixed 3-decimal formatting).
std::string render_svg(const WorldMap& map, const Decomposition* dec, const ZoneGraph* graph,
                       const Path* path);

void emit_svg(const WorldMap& map, const Decomposition* dec, const ZoneGraph* graph,
              const Path* path, const std::string& out_path);

}  // namespace zonal
