#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossmin/rational.hpp"

namespace crossmin {

struct Point {
  Rat x, y;
  bool operator==(const Point& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  bool operator<(const Point& o) const { return x < o.x || (x == o.x && y < o.y); }
};

// Guest graph G: the graph being drawn.
struct GuestEdge {
  std::string id;
  std::string a, b;
};

struct GuestGraph {
  std::vector<std::string> vertices;
  std::vector<GuestEdge> edges;
};

enum class GuestShape { Cycle, DisjointPaths, General };

// Shape is verified from the structure, never declared.
GuestShape guest_shape(const GuestGraph& g);
const char* guest_shape_name(GuestShape s);

// Host graph H: clusters with exact positions, pipes with polyline drawings.
struct Cluster {
  std::string id;
  Point pos;
};

struct HostPipe {
  std::string id;
  std::string u, v;
  // Full polyline from pos(u) to pos(v); interior entries are bend points.
  std::vector<Point> polyline;
};

struct HostGraph {
  std::vector<Cluster> clusters;
  std::vector<HostPipe> pipes;

  const Cluster* find_cluster(const std::string& id) const;
  const HostPipe* find_pipe(const std::string& id) const;
};

// Simplicial map: vertices to clusters, edges to pipes, incidence-preserving.
struct SimplicialMap {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, std::string> edge_map;
};

struct Instance {
  GuestGraph guest;
  HostGraph host;
  SimplicialMap map;
};

// One total order of lambda^-1[uv] per pipe, stored in canonical pipe
// orientation (from the lexicographically smaller endpoint id to the larger).
struct PipeOrderSet {
  std::map<std::string, std::vector<std::string>> order;
};

// Pipe weights, crossing-weight sums and the multiset of crossing pipe pairs.
struct CrossingLedger {
  std::map<std::string, long long> w;
  std::map<std::string, long long> W;
  // Unordered pipe pair (lexicographically sorted) -> number of transversal
  // intersection points between the two polylines.
  std::map<std::pair<std::string, std::string>, long long> crossing_pairs;
  long long cr2 = 0;
};

struct Violation {
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> spurs;  // guest vertices, informational
  std::vector<std::string> forks;  // guest vertices, informational
  bool admissible() const { return violations.empty(); }
};

// Reports every violated structural invariant; violations are data, not
// failures. An empty violation list means the instance is admissible for the
// downstream operations.
ValidationReport validate(const Instance& inst);

void require_valid(const Instance& inst);  // throws DataError on violations

// Drops zero-weight pipes and clusters with empty preimage. Run before
// solving; such elements contribute nothing to the crossing count.
Instance prune(const Instance& inst);

// Canonical pipe orientation helper: true when `u` is the canonical tail.
inline bool is_canonical_tail(const std::string& u, const std::string& v) { return u < v; }

// Weight table w(uv) = |lambda^-1[uv]| derived from the map.
std::map<std::string, long long> pipe_weights(const Instance& inst);

}  // namespace crossmin
