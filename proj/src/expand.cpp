#include "crossmin/expand.hpp"

#include <algorithm>

#include "crossmin/errors.hpp"
#include "crossmin/detail/interleave.hpp"

namespace crossmin {

namespace {

int fresh_cluster(CombInstance& m) {
  int id = static_cast<int>(m.clusters.size());
  CombCluster c;
  c.alive = true;
  c.name = "@c" + std::to_string(id);
  m.clusters.push_back(std::move(c));
  m.alive_clusters++;
  return id;
}

int fresh_pipe(CombInstance& m, int u, int v) {
  int id = static_cast<int>(m.pipes.size());
  CombPipe p;
  p.u = u;
  p.v = v;
  p.alive = true;
  p.name = "@p" + std::to_string(id);
  m.pipes.push_back(std::move(p));
  m.alive_pipes++;
  return id;
}

int fresh_vertex(CombInstance& m, int cluster) {
  int id = static_cast<int>(m.vertices.size());
  CombVertex v;
  v.alive = true;
  v.cluster = cluster;
  v.name = "@v" + std::to_string(id);
  CombCluster& c = m.clusters[cluster];
  v.pos_in_bag = static_cast<int>(c.bag.size());
  c.bag.push_back(id);
  m.vertices.push_back(std::move(v));
  return id;
}

void bag_move(CombInstance& m, int v, int to_cluster) {
  CombVertex& vv = m.vertices[v];
  if (vv.cluster == to_cluster) return;
  CombCluster& from = m.clusters[vv.cluster];
  int last = from.bag.back();
  from.bag[vv.pos_in_bag] = last;
  m.vertices[last].pos_in_bag = vv.pos_in_bag;
  from.bag.pop_back();
  CombCluster& to = m.clusters[to_cluster];
  vv.cluster = to_cluster;
  vv.pos_in_bag = static_cast<int>(to.bag.size());
  to.bag.push_back(v);
}

void kill_vertex(CombInstance& m, int v) {
  CombVertex& vv = m.vertices[v];
  CombCluster& c = m.clusters[vv.cluster];
  int last = c.bag.back();
  c.bag[vv.pos_in_bag] = last;
  m.vertices[last].pos_in_bag = vv.pos_in_bag;
  c.bag.pop_back();
  vv.alive = false;
  vv.cluster = -1;
  vv.edges = {-1, -1};
}

void pipe_edges_add(CombInstance& m, int e, int pipe) {
  CombEdge& ee = m.edges[e];
  CombPipe& pp = m.pipes[pipe];
  ee.pipe = pipe;
  ee.pos_in_pipe = static_cast<int>(pp.edges.size());
  pp.edges.push_back(e);
}

void pipe_edges_remove(CombInstance& m, int e) {
  CombEdge& ee = m.edges[e];
  CombPipe& pp = m.pipes[ee.pipe];
  int last = pp.edges.back();
  pp.edges[ee.pos_in_pipe] = last;
  m.edges[last].pos_in_pipe = ee.pos_in_pipe;
  pp.edges.pop_back();
  ee.pipe = -1;
  ee.pos_in_pipe = -1;
}

int fresh_edge(CombInstance& m, int a, int b, int pipe) {
  int id = static_cast<int>(m.edges.size());
  CombEdge e;
  e.alive = true;
  e.ends = {a, b};
  e.name = "@e" + std::to_string(id);
  m.edges.push_back(std::move(e));
  pipe_edges_add(m, id, pipe);
  m.alive_guest_edges++;
  return id;
}

void rotation_remove(CombInstance& m, int cluster, int pipe) {
  auto& rot = m.clusters[cluster].rotation;
  rot.erase(std::remove(rot.begin(), rot.end(), pipe), rot.end());
}

void add_crossing(CombInstance& m, int p, int q, long long mult) {
  CombPipe& pp = m.pipes[p];
  CombPipe& pq = m.pipes[q];
  pp.crossings[q] += mult;
  pq.crossings[p] += mult;
  pp.wsum += mult * pq.weight();
  pq.wsum += mult * pp.weight();
  m.cr2 += mult * pp.weight() * pq.weight();
}

// Removes the pipe together with its ledger contribution.
void kill_pipe(CombInstance& m, int p) {
  CombPipe& pp = m.pipes[p];
  for (const auto& [q, mult] : pp.crossings) {
    CombPipe& pq = m.pipes[q];
    pq.crossings.erase(p);
    pq.wsum -= mult * pp.weight();
    m.cr2 -= mult * pp.weight() * pq.weight();
  }
  pp.crossings.clear();
  pp.wsum = 0;
  rotation_remove(m, pp.u, p);
  rotation_remove(m, pp.v, p);
  pp.alive = false;
  m.alive_pipes--;
}

void kill_cluster(CombInstance& m, int c) {
  CombCluster& cc = m.clusters[c];
  internal_check(cc.bag.empty(), "killing a cluster with a nonempty preimage");
  internal_check(cc.rotation.empty(), "killing a cluster with incident pipes");
  cc.alive = false;
  m.alive_clusters--;
}

void replace_pipe_end(CombInstance& m, int pipe, int from_cluster, int to_cluster) {
  CombPipe& pp = m.pipes[pipe];
  if (pp.u == from_cluster)
    pp.u = to_cluster;
  else if (pp.v == from_cluster)
    pp.v = to_cluster;
  else
    internal_check(false, "pipe endpoint replacement mismatch");
  m.clusters[to_cluster].rotation.push_back(pipe);
}

void set_vertex_edge_slot(CombInstance& m, int v, int old_e, int new_e) {
  CombVertex& vv = m.vertices[v];
  if (vv.edges[0] == old_e)
    vv.edges[0] = new_e;
  else if (vv.edges[1] == old_e)
    vv.edges[1] = new_e;
  else
    internal_check(false, "vertex edge slot mismatch");
}

void replace_edge_end(CombInstance& m, int e, int from_v, int to_v) {
  CombEdge& ee = m.edges[e];
  if (ee.ends[0] == from_v)
    ee.ends[0] = to_v;
  else if (ee.ends[1] == from_v)
    ee.ends[1] = to_v;
  else
    internal_check(false, "edge endpoint replacement mismatch");
}

// Rotation at a boundary cluster on the cycle (b_0 .. b_{T-1}): the outer
// stub first, then the chords fanned toward b_{i+1}, b_{i+2}, ..., b_{i-1}.
void build_boundary_rotations(CombInstance& m, const std::vector<int>& bdry,
                              const std::vector<int>& stub,
                              const std::map<std::pair<int, int>, int>& chord_pipe) {
  int T = static_cast<int>(bdry.size());
  std::vector<std::vector<int>> fan(T);
  for (const auto& [key, pipe] : chord_pipe) {
    fan[key.first].push_back(key.second);
    fan[key.second].push_back(key.first);
  }
  for (int i = 0; i < T; ++i) {
    auto& partners = fan[i];
    auto ccw_pos = [&](int j) { return (j - i + T) % T; };
    std::sort(partners.begin(), partners.end(),
              [&](int a, int b) { return ccw_pos(a) < ccw_pos(b); });
    if (m.mutation == EngineMutation::ChordFanReversed)
      std::reverse(partners.begin(), partners.end());
    auto& rot = m.clusters[bdry[i]].rotation;
    rot.clear();
    rot.push_back(stub[i]);
    for (int j : partners) {
      auto key = std::minmax(i, j);
      rot.push_back(chord_pipe.at({key.first, key.second}));
    }
  }
}

void record_chord_crossings(CombInstance& m,
                            const std::map<std::pair<int, int>, int>& chord_pipe) {
  std::vector<detail::Chord> chords;
  chords.reserve(chord_pipe.size());
  for (const auto& [key, pipe] : chord_pipe)
    chords.push_back({key.first, key.second, pipe});
  detail::for_each_interleaving(chords, [&](int p, int q) { add_crossing(m, p, q, 1); });
  if (m.mutation == EngineMutation::ChordRuleSloppy) {
    for (std::size_t i = 0; i < chords.size(); ++i)
      for (std::size_t j = i + 1; j < chords.size(); ++j) {
        const auto& a = chords[i];
        const auto& b = chords[j];
        if (a.a == b.a || a.a == b.b || a.b == b.a || a.b == b.b)
          add_crossing(m, a.payload, b.payload, 1);
      }
  }
}

int other_edge(const CombVertex& v, int e) { return v.edges[0] == e ? v.edges[1] : v.edges[0]; }

}  // namespace

bool base_flag(const CombInstance& m, int cluster, int pipe) {
  return m.pipes[pipe].weight() ==
         static_cast<long long>(m.clusters[cluster].bag.size());
}

bool safe_flag(const CombInstance& m, int pipe) {
  const CombPipe& p = m.pipes[pipe];
  return base_flag(m, p.u, pipe) && base_flag(m, p.v, pipe);
}

static bool base_literal(const CombInstance& m, int cluster, int pipe) {
  for (int v : m.clusters[cluster].bag) {
    const CombVertex& vv = m.vertices[v];
    bool touches = false;
    for (int e : vv.edges)
      if (e >= 0 && m.edges[e].pipe == pipe) touches = true;
    if (!touches) return false;
  }
  return true;
}

SafetyFlags recompute_safety(const CombInstance& m) {
  SafetyFlags flags;
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    if (!m.clusters[c].alive) continue;
    for (int p : m.clusters[c].rotation)
      flags.base[{static_cast<int>(c), p}] = base_literal(m, static_cast<int>(c), p);
  }
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    if (!m.pipes[p].alive) continue;
    flags.safe[static_cast<int>(p)] = flags.base.at({m.pipes[p].u, static_cast<int>(p)}) &&
                                      flags.base.at({m.pipes[p].v, static_cast<int>(p)});
  }
  return flags;
}

SafetyFlags update_safety(const CombInstance& m, SafetyFlags flags,
                          const std::vector<int>& touched_clusters) {
  for (int c : touched_clusters) {
    if (!m.clusters[c].alive) continue;
    for (int p : m.clusters[c].rotation) flags.base[{c, p}] = base_literal(m, c, p);
  }
  for (int c : touched_clusters) {
    if (!m.clusters[c].alive) continue;
    for (int p : m.clusters[c].rotation)
      flags.safe[p] =
          flags.base.at({m.pipes[p].u, p}) && flags.base.at({m.pipes[p].v, p});
  }
  return flags;
}

void cluster_expansion_inplace(CombInstance& m, int cluster, std::vector<int>* touched) {
  if (cluster < 0 || cluster >= static_cast<int>(m.clusters.size()) ||
      !m.clusters[cluster].alive)
    throw DataError("cluster expansion target is not a cluster");

  const std::vector<int> rot = m.clusters[cluster].rotation;
  const int d = static_cast<int>(rot.size());
  std::map<int, int> rot_index;
  for (int i = 0; i < d; ++i) rot_index[rot[i]] = i;

  // Boundary clusters; the old pipes become their outer stubs.
  std::vector<int> bdry(d);
  for (int i = 0; i < d; ++i) {
    bdry[i] = fresh_cluster(m);
    rotation_remove(m, cluster, rot[i]);
    replace_pipe_end(m, rot[i], cluster, bdry[i]);
  }

  std::map<std::pair<int, int>, int> chord_pipe;
  const std::vector<int> bag = m.clusters[cluster].bag;
  for (int g : bag) {
    CombVertex& vg = m.vertices[g];
    if (vg.degree() == 0) {
      kill_vertex(m, g);
      continue;
    }
    if (vg.degree() == 1) {
      int e = vg.edges[0] >= 0 ? vg.edges[0] : vg.edges[1];
      bag_move(m, g, bdry[rot_index.at(m.edges[e].pipe)]);
      continue;
    }
    int e0 = vg.edges[0], e1 = vg.edges[1];
    int q0 = m.edges[e0].pipe, q1 = m.edges[e1].pipe;
    if (q0 == q1) throw SpurPresentError({vg.name});
    int i0 = rot_index.at(q0), i1 = rot_index.at(q1);
    bag_move(m, g, bdry[i0]);
    int x = fresh_vertex(m, bdry[i1]);
    auto key = std::minmax(i0, i1);
    auto [it, fresh] = chord_pipe.try_emplace({key.first, key.second}, -1);
    if (fresh) it->second = fresh_pipe(m, bdry[key.first], bdry[key.second]);
    // Chord edge g—x replaces the inner halves; e1 now ends at x.
    replace_edge_end(m, e1, g, x);
    int ce = fresh_edge(m, g, x, it->second);
    set_vertex_edge_slot(m, g, e1, ce);
    m.vertices[x].edges = {ce, e1};
  }
  kill_cluster(m, cluster);

  record_chord_crossings(m, chord_pipe);
  build_boundary_rotations(m, bdry, rot, chord_pipe);

  // Prune dead stubs and the boundary clusters they leave isolated.
  for (int i = 0; i < d; ++i) {
    if (m.pipes[rot[i]].weight() == 0) kill_pipe(m, rot[i]);
    CombCluster& bc = m.clusters[bdry[i]];
    if (bc.bag.empty() && bc.rotation.empty()) kill_cluster(m, bdry[i]);
  }

  if (touched) {
    for (int i = 0; i < d; ++i)
      if (m.pipes[rot[i]].alive) touched->push_back(rot[i]);
    for (const auto& [key, p] : chord_pipe) touched->push_back(p);
  }
}

void pipe_expansion_inplace(CombInstance& m, int pipe, const ExpandOptions& opt,
                            std::vector<int>* touched, SplitStats* stats) {
  if (pipe < 0 || pipe >= static_cast<int>(m.pipes.size()) || !m.pipes[pipe].alive)
    throw DataError("pipe expansion target is not a pipe");
  const int u = m.pipes[pipe].u;
  const int v = m.pipes[pipe].v;
  if (!safe_flag(m, pipe))
    throw DataError("pipe " + m.pipes[pipe].name + " is not safe");

  if (!opt.trusted_cycle) {
    for (int e : m.pipes[pipe].edges) {
      for (int end : m.edges[e].ends) {
        const CombVertex& vv = m.vertices[end];
        if (vv.degree() != 2)
          throw DataError("pipe expansion requires degree-2 preimage endpoints");
        if (m.edges[other_edge(vv, e)].pipe == pipe) throw SpurPresentError({vv.name});
      }
    }
  }

  // Boundary cycle: pipes at u after uv in ccw order, then pipes at v after vu.
  auto side_list = [&](int center, bool align) {
    const auto& rot = m.clusters[center].rotation;
    int deg = static_cast<int>(rot.size());
    int at = 0;
    while (rot[at] != pipe) at++;
    std::vector<int> out;
    if (align) {
      for (int k = 1; k < deg; ++k) out.push_back(rot[(at + k) % deg]);
    } else {
      for (int k = 0; k < deg; ++k)
        if (rot[k] != pipe) out.push_back(rot[k]);
    }
    return out;
  };
  std::vector<int> stubs = side_list(u, true);
  const int s = static_cast<int>(stubs.size());
  {
    std::vector<int> far = side_list(v, true);
    if (m.mutation == EngineMutation::EllipseSeamMisaligned)
      std::reverse(far.begin(), far.end());
    for (int r : far) stubs.push_back(r);
  }
  const int T = static_cast<int>(stubs.size());
  internal_check(s >= 1 && T - s >= 1, "pipe expansion endpoint of degree 1");
  std::map<int, int> stub_pos;
  for (int i = 0; i < T; ++i)
    internal_check(stub_pos.emplace(stubs[i], i).second,
                   "pipe parallel to the expanded pipe");

  // Group the preimage edges by boundary-position pair.
  struct Grouped {
    std::map<std::pair<int, int>, std::vector<int>> roster;
    int adopt_u_pos = -1, adopt_v_pos = -1;  // heavy mode: group left in place
  } grp;
  auto classify = [&](int e) -> std::pair<int, int> {
    const CombEdge& ee = m.edges[e];
    int gb = m.vertices[ee.ends[0]].cluster == u ? ee.ends[0] : ee.ends[1];
    int gc = ee.ends[0] == gb ? ee.ends[1] : ee.ends[0];
    internal_check(m.vertices[gb].cluster == u && m.vertices[gc].cluster == v,
                   "preimage edge does not span the pipe");
    int ea = other_edge(m.vertices[gb], e);
    int ed = other_edge(m.vertices[gc], e);
    if (ea < 0 || ed < 0) throw DataError("pipe expansion requires degree-2 preimage endpoints");
    if (m.edges[ea].pipe == pipe) throw SpurPresentError({m.vertices[gb].name});
    if (m.edges[ed].pipe == pipe) throw SpurPresentError({m.vertices[gc].name});
    return {stub_pos.at(m.edges[ea].pipe), stub_pos.at(m.edges[ed].pipe)};
  };

  long long w_old = m.pipes[pipe].weight();
  if (stats) stats->charged = 0;

  if (!opt.heavy_path_split) {
    for (int e : m.pipes[pipe].edges) grp.roster[classify(e)].push_back(e);
    if (stats) stats->charged = w_old;
  } else {
    // Round-robin streams over the u-side stubs; stop as soon as all
    // remaining preimage edges provably lie in one group, which then keeps
    // the containers of u, v and the pipe itself.
    std::vector<long long> unseen_u(s), unseen_v(T - s);
    std::vector<std::size_t> cursor(s, 0);
    int nz_u = 0, nz_v = 0;
    for (int i = 0; i < s; ++i) {
      unseen_u[i] = m.pipes[stubs[i]].weight();
      if (unseen_u[i] > 0) nz_u++;
    }
    for (int j = s; j < T; ++j) {
      unseen_v[j - s] = m.pipes[stubs[j]].weight();
      if (unseen_v[j - s] > 0) nz_v++;
    }
    int i = 0;
    while (!(nz_u == 1 && nz_v == 1)) {
      while (unseen_u[i] == 0) i = (i + 1) % s;
      const CombPipe& st = m.pipes[stubs[i]];
      // Next stub edge; its endpoint at u leads to the preimage edge.
      const CombEdge& f = m.edges[st.edges[cursor[i]++]];
      int gb = m.vertices[f.ends[0]].cluster == u ? f.ends[0] : f.ends[1];
      int e = other_edge(m.vertices[gb], st.edges[cursor[i] - 1]);
      internal_check(e >= 0 && m.edges[e].pipe == pipe, "safety broken in split stream");
      auto key = classify(e);
      grp.roster[key].push_back(e);
      if (--unseen_u[key.first] == 0) nz_u--;
      if (--unseen_v[key.second - s] == 0) nz_v--;
      if (stats) stats->charged++;
      i = (i + 1) % s;
    }
    for (int k = 0; k < s; ++k)
      if (unseen_u[k] > 0) grp.adopt_u_pos = k;
    for (int k = s; k < T; ++k)
      if (unseen_v[k - s] > 0) grp.adopt_v_pos = k;
    // Drop roster entries that belong to the adopted group: they stay put.
    grp.roster.erase({grp.adopt_u_pos, grp.adopt_v_pos});
  }

  const bool adopting = grp.adopt_u_pos >= 0;

  // Boundary clusters. In heavy mode u and v are re-purposed as the adopted
  // group's boundary clusters, so ids stay valid for untouched elements.
  std::vector<int> bdry(T);
  m.clusters[u].rotation.clear();
  m.clusters[v].rotation.clear();
  for (int i = 0; i < T; ++i) {
    int from = i < s ? u : v;
    if (adopting && (i == grp.adopt_u_pos || i == grp.adopt_v_pos)) {
      bdry[i] = from;
      m.clusters[from].rotation.push_back(stubs[i]);  // endpoint already correct
    } else {
      bdry[i] = fresh_cluster(m);
      replace_pipe_end(m, stubs[i], from, bdry[i]);
    }
  }

  // Chord pipes: the adopted group re-purposes the expanded pipe itself.
  std::map<std::pair<int, int>, int> chord_pipe;
  if (adopting)
    chord_pipe[{grp.adopt_u_pos, grp.adopt_v_pos}] = pipe;
  for (const auto& [key, elist] : grp.roster) {
    int cp = fresh_pipe(m, bdry[key.first], bdry[key.second]);
    chord_pipe[key] = cp;
    for (int e : elist) {
      const CombEdge& ee = m.edges[e];
      int gb = m.vertices[ee.ends[0]].cluster == u ? ee.ends[0] : ee.ends[1];
      int gc = ee.ends[0] == gb ? ee.ends[1] : ee.ends[0];
      bag_move(m, gb, bdry[key.first]);
      bag_move(m, gc, bdry[key.second]);
      pipe_edges_remove(m, e);
      pipe_edges_add(m, e, cp);
    }
  }
  if (stats) {
    stats->groups = static_cast<long long>(chord_pipe.size());
    stats->max_group = 0;
    for (const auto& [key, cp] : chord_pipe)
      stats->max_group = std::max(stats->max_group, m.pipes[cp].weight());
  }

  // Ledger: every pipe that crossed the expanded pipe crosses all chords with
  // the same multiplicity. The expanded pipe's weight dropped by dw, and the
  // chords carry exactly dw between them, so cr2 and the partners' W are net
  // unchanged here.
  {
    long long w_new = m.pipes[pipe].weight();
    long long dw = w_old - w_new;
    std::vector<std::pair<int, long long>> partners(m.pipes[pipe].crossings.begin(),
                                                    m.pipes[pipe].crossings.end());
    for (const auto& [f, mult] : partners) {
      m.pipes[f].wsum -= mult * dw;
      m.cr2 -= mult * m.pipes[f].weight() * dw;
      for (const auto& [key, cp] : chord_pipe)
        if (cp != pipe) add_crossing(m, f, cp, mult);
    }
  }

  record_chord_crossings(m, chord_pipe);
  build_boundary_rotations(m, bdry, stubs, chord_pipe);

  if (!adopting) {
    internal_check(m.pipes[pipe].weight() == 0, "expanded pipe still has preimage edges");
    internal_check(m.clusters[u].bag.empty() && m.clusters[v].bag.empty(),
                   "expanded pipe endpoints keep preimage vertices");
    // Weight is zero now, so dropping the residual pair entries leaves the
    // partners' W and cr2 untouched. The rebuilt rotations no longer hold it.
    for (const auto& [f, mult] : m.pipes[pipe].crossings)
      m.pipes[f].crossings.erase(pipe);
    m.pipes[pipe].crossings.clear();
    m.pipes[pipe].wsum = 0;
    m.pipes[pipe].alive = false;
    m.alive_pipes--;
    kill_cluster(m, u);
    kill_cluster(m, v);
  }

  if (touched) {
    for (int i = 0; i < T; ++i) touched->push_back(stubs[i]);
    for (const auto& [key, cp] : chord_pipe) touched->push_back(cp);
  }
}

CombInstance cluster_expansion(const CombInstance& m, int cluster) {
  CombInstance out = m;
  cluster_expansion_inplace(out, cluster);
  return out;
}

CombInstance pipe_expansion(const CombInstance& m, int pipe, const ExpandOptions& opt) {
  CombInstance out = m;
  pipe_expansion_inplace(out, pipe, opt);
  return out;
}

}  // namespace crossmin
