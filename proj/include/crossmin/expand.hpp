#pragma once

#include <map>
#include <utility>
#include <vector>

#include "crossmin/combinatorial.hpp"

namespace crossmin {

// Base/safe flags. A cluster u is a base of an incident pipe uv when every
// vertex in lambda^-1[u] is incident to an edge in lambda^-1[uv]; a pipe is
// safe when both endpoints are bases.
struct SafetyFlags {
  std::map<std::pair<int, int>, bool> base;  // (cluster, pipe)
  std::map<int, bool> safe;                  // pipe
};

// Literal-definition recomputation (tolerates spurs).
SafetyFlags recompute_safety(const CombInstance& m);

// Incremental refresh limited to the given clusters and their pipes.
SafetyFlags update_safety(const CombInstance& m, SafetyFlags flags,
                          const std::vector<int>& touched_clusters);

// O(1) flag via weights: on spur-free instances, base(u,p) iff the number of
// preimage vertices of u equals w(p).
bool base_flag(const CombInstance& m, int cluster, int pipe);
bool safe_flag(const CombInstance& m, int pipe);

struct SplitStats {
  long long charged = 0;     // preimage elements individually re-pointed
  long long groups = 0;      // chord groups the pipe preimage split into
  long long max_group = 0;
};

struct ExpandOptions {
  // Container-adopting preimage split: work is charged only to elements that
  // leave for smaller groups; the largest group keeps its containers.
  bool heavy_path_split = false;
  // Skip the per-edge degree pre-scan (the solver's guest is a verified cycle).
  bool trusted_cycle = false;
};

// Subdivides every pipe at `cluster` with a boundary cluster placed in ccw
// rotation order, replaces each preimage vertex by a chord between its two
// boundary clusters (chords between equal pairs merge into one weighted
// pipe), deletes the cluster, and updates ledger and rotations in place.
// New crossing pairs are exactly the strictly interleaving chord pairs.
// `touched` collects pipes whose safety status may have changed.
void cluster_expansion_inplace(CombInstance& m, int cluster,
                               std::vector<int>* touched = nullptr);

// Expands a safe pipe: boundary clusters for all other pipes at the two
// endpoints, ordered ccw starting after the expanded pipe on each side; each
// preimage edge becomes a chord between the boundary clusters of its two
// outer neighbor edges. Requires every preimage edge endpoint to have guest
// degree 2. Guest edge count is invariant.
void pipe_expansion_inplace(CombInstance& m, int pipe, const ExpandOptions& opt = {},
                            std::vector<int>* touched = nullptr,
                            SplitStats* stats = nullptr);

// Functional forms over a private working copy.
CombInstance cluster_expansion(const CombInstance& m, int cluster);
CombInstance pipe_expansion(const CombInstance& m, int pipe, const ExpandOptions& opt = {});

}  // namespace crossmin
