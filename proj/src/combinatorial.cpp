#include "crossmin/combinatorial.hpp"

#include <algorithm>

#include "crossmin/errors.hpp"

namespace crossmin {

int CombInstance::find_cluster(const std::string& name) const {
  for (std::size_t i = 0; i < clusters.size(); ++i)
    if (clusters[i].alive && clusters[i].name == name) return static_cast<int>(i);
  return -1;
}
int CombInstance::find_pipe(const std::string& name) const {
  for (std::size_t i = 0; i < pipes.size(); ++i)
    if (pipes[i].alive && pipes[i].name == name) return static_cast<int>(i);
  return -1;
}
int CombInstance::find_vertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].alive && vertices[i].name == name) return static_cast<int>(i);
  return -1;
}
int CombInstance::find_edge(const std::string& name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].alive && edges[i].name == name) return static_cast<int>(i);
  return -1;
}

CombInstance attach(const Instance& inst, CrossingMethod method) {
  return attach(inst, rotation_at(inst.host), crossing_ledger(inst, method));
}

CombInstance attach(const Instance& inst, const RotationSystem& rot,
                    const CrossingLedger& ledger) {
  CombInstance m;
  std::map<std::string, int> cid, pid, vid, eid;
  for (const auto& c : inst.host.clusters) {
    cid[c.id] = static_cast<int>(m.clusters.size());
    CombCluster cc;
    cc.alive = true;
    cc.name = c.id;
    m.clusters.push_back(std::move(cc));
  }
  for (const auto& p : inst.host.pipes) {
    pid[p.id] = static_cast<int>(m.pipes.size());
    CombPipe pp;
    pp.u = cid.at(p.u);
    pp.v = cid.at(p.v);
    pp.alive = true;
    pp.name = p.id;
    m.pipes.push_back(std::move(pp));
  }
  for (const auto& v : inst.guest.vertices) {
    vid[v] = static_cast<int>(m.vertices.size());
    CombVertex vv;
    vv.alive = true;
    vv.name = v;
    vv.cluster = cid.at(inst.map.vertex_map.at(v));
    CombCluster& cc = m.clusters[vv.cluster];
    vv.pos_in_bag = static_cast<int>(cc.bag.size());
    cc.bag.push_back(static_cast<int>(m.vertices.size()));
    m.vertices.push_back(std::move(vv));
  }
  for (const auto& e : inst.guest.edges) {
    eid[e.id] = static_cast<int>(m.edges.size());
    CombEdge ee;
    ee.alive = true;
    ee.name = e.id;
    ee.ends = {vid.at(e.a), vid.at(e.b)};
    ee.pipe = pid.at(inst.map.edge_map.at(e.id));
    CombPipe& pp = m.pipes[ee.pipe];
    ee.pos_in_pipe = static_cast<int>(pp.edges.size());
    pp.edges.push_back(static_cast<int>(m.edges.size()));
    for (int end : ee.ends) {
      CombVertex& vv = m.vertices[end];
      if (vv.edges[0] < 0)
        vv.edges[0] = static_cast<int>(m.edges.size());
      else if (vv.edges[1] < 0)
        vv.edges[1] = static_cast<int>(m.edges.size());
      else
        throw DataError("guest vertex " + vv.name + " has degree > 2");
    }
    m.edges.push_back(std::move(ee));
  }
  for (const auto& [c, order] : rot.at) {
    CombCluster& cc = m.clusters[cid.at(c)];
    for (const auto& p : order) cc.rotation.push_back(pid.at(p));
  }
  for (const auto& [pair, mult] : ledger.crossing_pairs) {
    int a = pid.at(pair.first), b = pid.at(pair.second);
    m.pipes[a].crossings[b] += mult;
    m.pipes[b].crossings[a] += mult;
  }
  for (auto& p : m.pipes) {
    p.wsum = 0;
    for (const auto& [q, mult] : p.crossings) p.wsum += mult * m.pipes[q].weight();
  }
  m.cr2 = ledger.cr2;
  m.alive_clusters = static_cast<long long>(m.clusters.size());
  m.alive_pipes = static_cast<long long>(m.pipes.size());
  m.alive_guest_edges = static_cast<long long>(m.edges.size());
  return m;
}

void prune_inplace(CombInstance& m) {
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    CombPipe& pp = m.pipes[p];
    if (!pp.alive || pp.weight() > 0) continue;
    // A zero-weight partner contributed nothing to W, so wsum is untouched.
    for (auto& [q, mult] : pp.crossings) m.pipes[q].crossings.erase(static_cast<int>(p));
    pp.crossings.clear();
    for (int c : {pp.u, pp.v}) {
      auto& rotv = m.clusters[c].rotation;
      rotv.erase(std::remove(rotv.begin(), rotv.end(), static_cast<int>(p)), rotv.end());
    }
    pp.alive = false;
    m.alive_pipes--;
  }
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    CombCluster& cc = m.clusters[c];
    if (!cc.alive || !cc.bag.empty()) continue;
    internal_check(cc.rotation.empty(), "empty cluster still has live pipes");
    cc.alive = false;
    m.alive_clusters--;
  }
}

CrossingLedger export_ledger(const CombInstance& m) {
  CrossingLedger lg;
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    const CombPipe& pp = m.pipes[p];
    if (!pp.alive) continue;
    lg.w[pp.name] = pp.weight();
    lg.W[pp.name] = pp.wsum;
    for (const auto& [q, mult] : pp.crossings) {
      if (static_cast<int>(p) < q) {
        auto key = std::minmax(pp.name, m.pipes[q].name);
        lg.crossing_pairs[{key.first, key.second}] = mult;
      }
    }
  }
  lg.cr2 = m.cr2;
  return lg;
}

RotationSystem export_rotations(const CombInstance& m) {
  RotationSystem rot;
  for (const auto& c : m.clusters) {
    if (!c.alive) continue;
    auto& order = rot.at[c.name];
    for (int p : c.rotation) order.push_back(m.pipes[p].name);
  }
  return rot;
}

IntOrders import_orders(const CombInstance& m, const PipeOrderSet& orders) {
  IntOrders out;
  for (const auto& [pname, elist] : orders.order) {
    int p = m.find_pipe(pname);
    if (p < 0) throw DataError("order references unknown pipe " + pname);
    std::vector<int> ids;
    for (const auto& ename : elist) {
      int e = m.find_edge(ename);
      if (e < 0) throw DataError("order for pipe " + pname + " references unknown edge " + ename);
      ids.push_back(e);
    }
    // File orientation is canonical by cluster NAME; flip if the int-canonical
    // tail is the other endpoint.
    const CombPipe& pp = m.pipes[p];
    bool name_tail_is_u = m.clusters[pp.u].name < m.clusters[pp.v].name;
    bool int_tail_is_u = pp.u < pp.v;
    if (name_tail_is_u != int_tail_is_u) std::reverse(ids.begin(), ids.end());
    out[p] = std::move(ids);
  }
  return out;
}

PipeOrderSet export_orders(const CombInstance& m, const IntOrders& orders) {
  PipeOrderSet out;
  for (const auto& [p, elist] : orders) {
    const CombPipe& pp = m.pipes[p];
    std::vector<std::string> names;
    for (int e : elist) names.push_back(m.edges[e].name);
    bool name_tail_is_u = m.clusters[pp.u].name < m.clusters[pp.v].name;
    bool int_tail_is_u = pp.u < pp.v;
    if (name_tail_is_u != int_tail_is_u) std::reverse(names.begin(), names.end());
    out.order[pp.name] = std::move(names);
  }
  return out;
}

std::vector<int> comb_spurs(const CombInstance& m) {
  std::vector<int> out;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const CombVertex& vv = m.vertices[v];
    if (!vv.alive || vv.degree() != 2) continue;
    if (m.edges[vv.edges[0]].pipe == m.edges[vv.edges[1]].pipe)
      out.push_back(static_cast<int>(v));
  }
  return out;
}

void comb_check(const CombInstance& m) {
  long long ne = 0, np = 0, nc = 0;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const CombVertex& vv = m.vertices[v];
    if (!vv.alive) continue;
    internal_check(vv.cluster >= 0 && m.clusters[vv.cluster].alive, "vertex in dead cluster");
    internal_check(vv.pos_in_bag >= 0 &&
                       vv.pos_in_bag < static_cast<int>(m.clusters[vv.cluster].bag.size()) &&
                       m.clusters[vv.cluster].bag[vv.pos_in_bag] == static_cast<int>(v),
                   "bag position broken");
    for (int e : vv.edges)
      if (e >= 0) {
        internal_check(m.edges[e].alive, "vertex references dead edge");
        internal_check(m.edges[e].ends[0] == static_cast<int>(v) ||
                           m.edges[e].ends[1] == static_cast<int>(v),
                       "edge does not reference vertex back");
      }
  }
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const CombEdge& ee = m.edges[e];
    if (!ee.alive) continue;
    ne++;
    internal_check(ee.pipe >= 0 && m.pipes[ee.pipe].alive, "edge on dead pipe");
    const CombPipe& pp = m.pipes[ee.pipe];
    internal_check(ee.pos_in_pipe >= 0 && ee.pos_in_pipe < static_cast<int>(pp.edges.size()) &&
                       pp.edges[ee.pos_in_pipe] == static_cast<int>(e),
                   "pipe position broken");
    int ca = m.vertices[ee.ends[0]].cluster, cb = m.vertices[ee.ends[1]].cluster;
    internal_check((ca == pp.u && cb == pp.v) || (ca == pp.v && cb == pp.u),
                   "edge endpoints not on pipe endpoints");
  }
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    const CombPipe& pp = m.pipes[p];
    if (!pp.alive) continue;
    np++;
    internal_check(m.clusters[pp.u].alive && m.clusters[pp.v].alive, "pipe on dead cluster");
    internal_check(pp.u != pp.v, "pipe loop");
    long long wsum = 0;
    for (const auto& [q, mult] : pp.crossings) {
      internal_check(m.pipes[q].alive, "crossing partner dead");
      auto it = m.pipes[q].crossings.find(static_cast<int>(p));
      internal_check(it != m.pipes[q].crossings.end() && it->second == mult,
                     "crossing map asymmetric");
      wsum += mult * m.pipes[q].weight();
    }
    internal_check(wsum == pp.wsum, "W out of date");
    for (int c : {pp.u, pp.v}) {
      const auto& rotv = m.clusters[c].rotation;
      internal_check(std::count(rotv.begin(), rotv.end(), static_cast<int>(p)) == 1,
                     "pipe not exactly once in endpoint rotation");
    }
  }
  long long cr2 = 0;
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    if (!m.pipes[p].alive) continue;
    cr2 += m.pipes[p].weight() * m.pipes[p].wsum;
  }
  internal_check(cr2 % 2 == 0 && cr2 / 2 == m.cr2, "cr2 identity broken");
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    const CombCluster& cc = m.clusters[c];
    if (!cc.alive) continue;
    nc++;
    for (int p : cc.rotation) {
      internal_check(m.pipes[p].alive, "rotation references dead pipe");
      internal_check(m.pipes[p].u == static_cast<int>(c) || m.pipes[p].v == static_cast<int>(c),
                     "rotation references non-incident pipe");
    }
    for (int v : cc.bag)
      internal_check(m.vertices[v].alive && m.vertices[v].cluster == static_cast<int>(c),
                     "bag references wrong vertex");
  }
  internal_check(ne == m.alive_guest_edges, "edge count out of date");
  internal_check(np == m.alive_pipes, "pipe count out of date");
  internal_check(nc == m.alive_clusters, "cluster count out of date");
}

}  // namespace crossmin
