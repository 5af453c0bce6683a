#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "crossmin/model.hpp"

namespace crossmin {

struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;  // signed DIMACS literals
};

// DIMACS format: `p cnf <vars> <clauses>`, clause lines terminated by 0,
// `c` comment lines.
Cnf parse_dimacs(const std::string& text);

struct Assignment {
  std::map<int, bool> value;  // variable -> truth
};

// Whitespace-separated signed DIMACS literals; every variable must occur.
Assignment parse_assignment(const std::string& text, int num_vars);

bool satisfies(const Cnf& cnf, const Assignment& tau);

// Bookkeeping tying instance entities back to the formula.
struct MemberEdges {
  int var = 0;
  bool negated = false;
  // Per gadget pipe (left, middle, right): the path-ordered edges of the
  // substituted subpath of the first strand, the middle strand's edge, and
  // the substituted subpath of the third strand.
  std::array<std::vector<std::string>, 3> first_sub;
  std::array<std::string, 3> middle;
  std::array<std::vector<std::string>, 3> third_sub;
};

struct ClauseProvenance {
  std::array<std::string, 4> gadget_clusters;
  std::string v_cluster, w_cluster;
  std::array<std::string, 3> gadget_pipes;  // left, middle (the 22-edge pipe), right
  std::vector<std::string> probe_vertices;
  std::vector<std::string> probe_edges;  // probe's middle edge rides the 22-edge pipe
  std::vector<MemberEdges> members;      // ascending variable index
};

struct VariableProvenance {
  std::vector<std::string> path_vertices;
  std::vector<std::string> path_edges;
  // part[k] = 1, 2 or 3: which strand of the variable path an edge belongs to
  std::map<std::string, int> edge_part;
  std::size_t strand1_vertices = 0, strand2_vertices = 0, strand3_vertices = 0;
  std::vector<std::string> host_clusters;  // by column
};

struct ReductionOutput {
  Instance instance;
  long long K = 0;
  long long cr2 = 0;
  int num_vars = 0;
  int num_clauses = 0;
  bool cycle_variant = false;
  std::vector<ClauseProvenance> clauses;
  std::vector<VariableProvenance> variables;  // [0] is variable 1
  std::vector<std::string> matching_pipes;
  std::vector<std::string> matching_edges;
};

// 3CNF -> (instance, K) with K = cr2 + 13m. Every clause must have exactly
// three distinct variables. The guest is a disjoint union of paths; the map
// has spurs by design.
ReductionOutput build_paths_instance(const Cnf& cnf);

// Augments the paths into a single cycle by matching the path endpoints with
// polygonal arcs routed through distinct corridors below the construction;
// K is recomputed from the enlarged crossing set.
ReductionOutput build_cycle_instance(const Cnf& cnf);

// Orders witnessing K for a satisfying assignment: strand nesting by truth
// value, contiguous per-variable blocks on the gadget pipes, and the probe
// edge placed by bounded local search so each gadget costs exactly 13.
PipeOrderSet build_witness(const ReductionOutput& out, const Assignment& tau);

std::string provenance_json(const ReductionOutput& out);

}  // namespace crossmin
