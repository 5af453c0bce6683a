#include "crossmin/solve.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "crossmin/errors.hpp"

namespace crossmin {

static bool expandable(const CombInstance& m, int p) {
  const CombPipe& pp = m.pipes[p];
  if (!pp.alive || !safe_flag(m, p)) return false;
  return m.clusters[pp.u].degree() >= 3 || m.clusters[pp.v].degree() >= 3;
}

int find_safe_expandable_pipe(const CombInstance& m) {
  for (std::size_t p = 0; p < m.pipes.size(); ++p)
    if (expandable(m, static_cast<int>(p))) return static_cast<int>(p);
  return -1;
}

int find_safe_pipe_by_path_walk(const CombInstance& m) {
  int start = -1;
  for (std::size_t c = 0; c < m.clusters.size(); ++c)
    if (m.clusters[c].alive && m.clusters[c].degree() >= 3) {
      start = static_cast<int>(c);
      break;
    }
  if (start < 0) return -1;

  auto base_pointer = [&](int c) {
    int best = -1;
    for (int p : m.clusters[c].rotation)
      if (base_flag(m, c, p) && (best < 0 || p < best)) best = p;
    return best;
  };

  std::set<int> visited;
  int cur = start, prev_pipe = -1;
  while (true) {
    int sp = base_pointer(cur);
    internal_check(sp >= 0, "walk reached a cluster with no base pipe");
    if (sp == prev_pipe) {
      internal_check(safe_flag(m, sp), "walk returned an unsafe pipe");
      return sp;
    }
    int nxt = m.pipes[sp].other(cur);
    if (m.clusters[nxt].degree() == 2) {
      internal_check(safe_flag(m, sp), "walk returned an unsafe pipe");
      return sp;
    }
    visited.insert(cur);
    internal_check(!visited.count(nxt), "walk revisited a cluster");
    cur = nxt;
    prev_pipe = sp;
  }
}

SolveResult solve_comb(CombInstance m, const SolveOptions& opt) {
  prune_inplace(m);

  SolveResult res;
  auto record = [&](char kind, int target, long long phi_before) {
    res.trace.steps.push_back({kind, target, phi_before, m.phi(), m.cr2});
  };

  std::vector<int> initial;
  for (std::size_t c = 0; c < m.clusters.size(); ++c)
    if (m.clusters[c].alive) initial.push_back(static_cast<int>(c));

  std::set<int> candidates;
  for (int u : initial) {
    long long phi_before = m.phi();
    std::vector<int> touched;
    cluster_expansion_inplace(m, u, &touched);
    record('C', u, phi_before);
    internal_check(m.phi() >= 0, "potential went negative");
    if (opt.paranoid) comb_check(m);
    for (int p : touched) candidates.insert(p);
  }
  for (std::size_t p = 0; p < m.pipes.size(); ++p)
    if (expandable(m, static_cast<int>(p))) candidates.insert(static_cast<int>(p));

  ExpandOptions eopt;
  eopt.heavy_path_split = opt.heavy_path_split;
  eopt.trusted_cycle = true;

  while (!candidates.empty()) {
    int p = *candidates.begin();
    candidates.erase(candidates.begin());
    if (!expandable(m, p)) continue;
    if (opt.path_walk_check) {
      int w = find_safe_pipe_by_path_walk(m);
      internal_check(w >= 0 && expandable(m, w), "walk disagrees with the worklist");
    }
    long long phi_before = m.phi();
    std::vector<int> touched;
    pipe_expansion_inplace(m, p, eopt, &touched);
    record('P', p, phi_before);
    internal_check(m.phi() < phi_before, "potential did not decrease");
    internal_check(m.phi() >= 0, "potential went negative");
    if (opt.paranoid) comb_check(m);
    for (int t : touched) candidates.insert(t);
  }
  if (opt.path_walk_check)
    internal_check(find_safe_pipe_by_path_walk(m) == -1, "walk found work after loop exit");
  internal_check(find_safe_expandable_pipe(m) == -1, "worklist missed a safe pipe");

  // Loop exit shape: the host is one cycle and all pipe weights are equal.
  long long w = -1;
  long long nclusters = 0, npipes = 0;
  int some_cluster = -1;
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    if (!m.clusters[c].alive) continue;
    nclusters++;
    some_cluster = static_cast<int>(c);
    internal_check(m.clusters[c].degree() == 2, "final host has a cluster of degree != 2");
  }
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    if (!m.pipes[p].alive) continue;
    npipes++;
    if (w < 0) w = m.pipes[p].weight();
    internal_check(w == m.pipes[p].weight(), "final pipe weights are not all equal");
  }
  internal_check(w >= 1 && npipes == nclusters && some_cluster >= 0, "final host is not a cycle");
  {  // connectivity: walk the cycle
    long long seen = 0;
    int cur = some_cluster, prev = -1;
    do {
      seen++;
      const auto& rot = m.clusters[cur].rotation;
      int next_pipe = (rot[0] != prev) ? rot[0] : rot[1];
      prev = next_pipe;
      cur = m.pipes[next_pipe].other(cur);
    } while (cur != some_cluster && seen <= nclusters);
    internal_check(seen == nclusters, "final host is not a single cycle");
  }

  res.trace.final_cycle_length = nclusters;
  res.trace.final_weight = w;
  res.trace.final_cr2 = m.cr2;
  res.cr = m.cr2 + w - 1;
  return res;
}

SolveResult solve(const Instance& inst, const SolveOptions& opt) {
  auto rep = validate(inst);
  if (!rep.admissible()) {
    std::string msg = "invalid instance:";
    for (const auto& v : rep.violations) msg += " [" + v.code + "] " + v.detail + ";";
    throw DataError(msg);
  }
  if (!rep.spurs.empty()) throw SpurPresentError(rep.spurs);
  if (guest_shape(inst.guest) != GuestShape::Cycle)
    throw GuestNotCycleError("guest graph is not a cycle (shape: " +
                             std::string(guest_shape_name(guest_shape(inst.guest))) + ")");
  Instance pruned = prune(inst);
  CombInstance m = attach(pruned, opt.crossing_method);
  return solve_comb(std::move(m), opt);
}

std::string format_trace(const SolveTrace& trace) {
  std::ostringstream out;
  for (const auto& s : trace.steps)
    out << (s.kind == 'C' ? "cluster-expansion " : "pipe-expansion ") << s.target
        << " phi " << s.phi_before << " -> " << s.phi_after << " cr2 " << s.cr2_after << "\n";
  out << "final cycle length " << trace.final_cycle_length << " weight " << trace.final_weight
      << " cr2 " << trace.final_cr2 << "\n";
  return out.str();
}

}  // namespace crossmin
