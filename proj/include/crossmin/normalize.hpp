#pragma once

#include <string>
#include <vector>

#include "crossmin/model.hpp"

namespace crossmin {

// A raw piecewise-linear drawing: guest vertices with positions and one
// polyline per guest edge (from the position of one endpoint to the other's).
struct RawVertex {
  std::string id;
  Point pos;
};

struct RawEdge {
  std::string a, b;
  std::vector<Point> polyline;  // full polyline including both endpoints
};

struct RawDrawing {
  std::vector<RawVertex> vertices;
  std::vector<RawEdge> edges;
};

// Text format: `vertex <id> <x> <y>` and `edge <a> <b> : x1 y1 ... xk yk`
// (interior bends only).
RawDrawing parse_raw_drawing(const std::string& text);
std::string serialize_raw_drawing(const RawDrawing& raw);

// Splits the drawing into a host graph and a simplicial map: clusters are the
// distinct vertex images and bend points; every edge-image segment is split
// at each cluster point in its relative interior; coincident atomic segments
// are identified into shared pipes; each guest edge is subdivided so every
// resulting edge maps to exactly one pipe. Transversal interior crossings
// stay crossings of the drawing, not clusters.
Instance normalize(const RawDrawing& raw);

// Guest vertices whose incident edges map to a common pipe.
std::vector<std::string> detect_spurs(const Instance& inst);

struct ForkFinding {
  std::string vertex;
  std::string inside;  // edge ("a~b") or pipe id whose image interior holds it
};

// On a raw drawing: all vertices lying in the relative interior of a
// nonincident edge image. On a normalized instance: always empty.
std::vector<ForkFinding> detect_forks(const RawDrawing& raw);
std::vector<ForkFinding> detect_forks(const Instance& inst);

}  // namespace crossmin
