#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "crossmin/geometry.hpp"
#include "crossmin/model.hpp"

namespace crossmin {

// Test-only corruption switches for mutation sensitivity checks. Not
// reachable from the CLI.
enum class EngineMutation {
  None,
  ChordFanReversed,       // boundary-cluster rotations list chords clockwise
  EllipseSeamMisaligned,  // far boundary arc glued with reversed orientation
  ChordRuleSloppy,        // chords sharing a boundary cluster counted as crossing
};

// Indexed, purely combinatorial form of an instance: graphs, map, rotation
// system and crossing ledger. Coordinates are dropped; expansion operations
// never assign any. Ids are dense ints; entities are never reused except by
// the container-adopting split (see pipe_expansion), which keeps ids valid.
struct CombVertex {
  int cluster = -1;
  std::array<int, 2> edges{-1, -1};
  int pos_in_bag = -1;
  bool alive = false;
  std::string name;
  int degree() const { return (edges[0] >= 0 ? 1 : 0) + (edges[1] >= 0 ? 1 : 0); }
};

struct CombEdge {
  std::array<int, 2> ends{-1, -1};
  int pipe = -1;
  int pos_in_pipe = -1;
  bool alive = false;
  std::string name;
};

struct CombCluster {
  std::vector<int> rotation;  // ccw incident pipe ids
  std::vector<int> bag;       // preimage vertices
  bool alive = false;
  std::string name;
  int degree() const { return static_cast<int>(rotation.size()); }
};

struct CombPipe {
  int u = -1, v = -1;
  std::vector<int> edges;               // preimage
  std::map<int, long long> crossings;   // partner pipe -> multiplicity
  long long wsum = 0;                   // W: sum of mult * weight(partner)
  bool alive = false;
  std::string name;
  long long weight() const { return static_cast<long long>(edges.size()); }
  int other(int c) const { return c == u ? v : u; }
};

struct CombInstance {
  std::vector<CombVertex> vertices;
  std::vector<CombEdge> edges;
  std::vector<CombCluster> clusters;
  std::vector<CombPipe> pipes;
  long long cr2 = 0;
  long long alive_guest_edges = 0;
  long long alive_pipes = 0;
  long long alive_clusters = 0;
  EngineMutation mutation = EngineMutation::None;

  long long phi() const { return alive_guest_edges - alive_pipes; }

  // true when `c` is the canonical tail of pipe `p` (smaller cluster id).
  bool tail_is(int p, int c) const {
    const CombPipe& pp = pipes[p];
    return (pp.u < pp.v ? pp.u : pp.v) == c;
  }

  int find_cluster(const std::string& name) const;
  int find_pipe(const std::string& name) const;
  int find_vertex(const std::string& name) const;
  int find_edge(const std::string& name) const;
};

// Builds the combinatorial form from a geometric instance: derives the
// rotation system and the crossing ledger, then indexes everything.
// Requires guest degrees <= 2.
CombInstance attach(const Instance& inst, CrossingMethod method = CrossingMethod::Sweep);
CombInstance attach(const Instance& inst, const RotationSystem& rot,
                    const CrossingLedger& ledger);

// Drops zero-weight pipes and clusters with empty preimage.
void prune_inplace(CombInstance& m);

// Views back onto the public types (by entity name).
CrossingLedger export_ledger(const CombInstance& m);
RotationSystem export_rotations(const CombInstance& m);

// Per-pipe total orders keyed by pipe id, listed in canonical orientation
// (tail = endpoint with the smaller id).
using IntOrders = std::map<int, std::vector<int>>;

// Converts a string-keyed order set (file format, canonical by cluster name)
// to int-keyed canonical orders, and back.
IntOrders import_orders(const CombInstance& m, const PipeOrderSet& orders);
PipeOrderSet export_orders(const CombInstance& m, const IntOrders& orders);

// Guest vertices with two incident edges on the same pipe.
std::vector<int> comb_spurs(const CombInstance& m);

// Structural self-check used by the test suites; throws InternalError.
void comb_check(const CombInstance& m);

}  // namespace crossmin
