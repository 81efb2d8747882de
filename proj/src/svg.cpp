#include "zonal/svg.hpp"

#include <cstdio>
#include <sstream>

#include "zonal/json_io.hpp"

namespace zonal {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// World y grows upward, SVG y downward; flip around the bounds midline.
struct Frame {
  double y_min, y_max;
  double flip(double y) const { return y_max - (y - y_min); }
};

void rect(std::ostringstream& os, const Frame& f, double x0, double y0, double x1, double y1,
          const char* style) {
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(f.flip(y1)) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y1 - y0) << "\" " << style << "/>\n";
}

void circle(std::ostringstream& os, const Frame& f, double cx, double cy, double r,
            const char* style) {
  os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(f.flip(cy)) << "\" r=\"" << num(r)
     << "\" " << style << "/>\n";
}

void line(std::ostringstream& os, const Frame& f, double x0, double y0, double x1, double y1,
          const char* style) {
  os << "<line x1=\"" << num(x0) << "\" y1=\"" << num(f.flip(y0)) << "\" x2=\"" << num(x1)
     << "\" y2=\"" << num(f.flip(y1)) << "\" " << style << "/>\n";
}

}  // namespace

std::string render_svg(const WorldMap& map, const Decomposition* dec, const ZoneGraph* graph,
                       const Path* path) {
  const Aabb& b = map.bounds;
  const double margin = 0.02 * std::max(b.extent(0), b.extent(1));
  const Frame f{b.min_corner[1], b.max_corner[1]};

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(b.min_corner[0] - margin)
     << " " << num(b.min_corner[1] - margin) << " " << num(b.extent(0) + 2 * margin) << " "
     << num(b.extent(1) + 2 * margin) << "\">\n";

  rect(os, f, b.min_corner[0], b.min_corner[1], b.max_corner[0], b.max_corner[1],
       "fill=\"white\" stroke=\"black\" stroke-width=\"0.4\"");

  if (dec) {
    for (const Zone& z : dec->zones()) {
      rect(os, f, z.cell.min_corner[0], z.cell.min_corner[1], z.cell.max_corner[0],
           z.cell.max_corner[1], "fill=\"none\" stroke=\"#999999\" stroke-width=\"0.25\"");
    }
  }

  if (graph && dec) {
    for (auto [i, j] : graph->edges()) {
      PointN a = dec->zone(i).cell.center();
      PointN c = dec->zone(j).cell.center();
      line(os, f, a[0], a[1], c[0], c[1],
           "stroke=\"#4a90d9\" stroke-width=\"0.35\" stroke-dasharray=\"1.5,1.5\"");
    }
  }

  for (const Obstacle& o : map.obstacles) {
    if (o.is_ball()) {
      circle(os, f, o.ball().center[0], o.ball().center[1], o.ball().radius,
             "fill=\"#555555\" stroke=\"none\"");
    } else {
      rect(os, f, o.box().min_corner[0], o.box().min_corner[1], o.box().max_corner[0],
           o.box().max_corner[1], "fill=\"#555555\" stroke=\"none\"");
    }
  }

  if (path && !path->waypoints.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#d42a2a\" stroke-width=\"0.6\" points=\"";
    for (std::size_t i = 0; i < path->waypoints.size(); ++i) {
      if (i) os << " ";
      os << num(path->waypoints[i][0]) << "," << num(f.flip(path->waypoints[i][1]));
    }
    os << "\"/>\n";
    for (const PointN& sg : path->subgoals)
      circle(os, f, sg[0], sg[1], 1.0, "fill=\"#f59e0b\" stroke=\"none\"");
  }

  circle(os, f, map.start[0], map.start[1], 1.2, "fill=\"#1f9d3a\" stroke=\"none\"");
  circle(os, f, map.goal[0], map.goal[1], 1.2, "fill=\"#2145c9\" stroke=\"none\"");

  os << "</svg>\n";
  return os.str();
}

void emit_svg(const WorldMap& map, const Decomposition* dec, const ZoneGraph* graph,
              const Path* path, const std::string& out_path) {
  write_text_file(out_path, render_svg(map, dec, graph, path));
}

}  // namespace zonal
