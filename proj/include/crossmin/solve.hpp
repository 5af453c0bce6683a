#pragma once

#include <string>
#include <vector>

#include "crossmin/combinatorial.hpp"
#include "crossmin/expand.hpp"

namespace crossmin {

struct TraceStep {
  char kind;  // 'C' cluster expansion, 'P' pipe expansion
  int target;
  long long phi_before = 0;
  long long phi_after = 0;
  long long cr2_after = 0;
};

struct SolveTrace {
  std::vector<TraceStep> steps;
  long long final_cycle_length = 0;
  long long final_weight = 0;
  long long final_cr2 = 0;
};

struct SolveOptions {
  bool heavy_path_split = false;
  bool path_walk_check = false;  // cross-check the worklist against the walk
  bool paranoid = false;         // full structural self-check after every step
  CrossingMethod crossing_method = CrossingMethod::Sweep;
};

struct SolveResult {
  long long cr = 0;
  SolveTrace trace;
};

// Minimum crossing count of a perturbation: initial cluster-expansion sweep,
// then safe-pipe expansions until the host is a cycle; the answer is
// cr2 + w - 1 for the final uniform pipe weight w. Requires a cycle guest
// with no spurs.
SolveResult solve(const Instance& inst, const SolveOptions& opt = {});
SolveResult solve_comb(CombInstance m, const SolveOptions& opt = {});

// Smallest safe pipe with an endpoint of degree >= 3, or -1 when the host is
// already a cycle.
int find_safe_expandable_pipe(const CombInstance& m);

// Base-pointer path walk; the guarantee behind loop progress, kept as a
// debug cross-check of the worklist search.
int find_safe_pipe_by_path_walk(const CombInstance& m);

std::string format_trace(const SolveTrace& trace);

}  // namespace crossmin
