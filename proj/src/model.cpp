#include "crossmin/model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crossmin/errors.hpp"
#include "crossmin/geometry.hpp"

namespace crossmin {

GuestShape guest_shape(const GuestGraph& g) {
  std::map<std::string, int> deg;
  for (const auto& v : g.vertices) deg[v] = 0;
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : g.edges) {
    deg[e.a]++;
    deg[e.b]++;
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  bool all_deg2 = !g.vertices.empty();
  bool all_le2 = true;
  for (const auto& [v, d] : deg) {
    if (d != 2) all_deg2 = false;
    if (d > 2) all_le2 = false;
  }
  if (!all_le2) return GuestShape::General;

  // Connectivity / acyclicity via traversal.
  std::set<std::string> seen;
  std::size_t comp_edges_total = 0;
  bool any_cycle_comp = false;
  std::size_t comps = 0;
  for (const auto& start : g.vertices) {
    if (seen.count(start)) continue;
    comps++;
    std::vector<std::string> stack{start};
    seen.insert(start);
    std::size_t nverts = 0, ndegsum = 0;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      nverts++;
      ndegsum += deg[v];
      for (const auto& w : adj[v]) {
        if (!seen.count(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    std::size_t nedges = ndegsum / 2;
    comp_edges_total += nedges;
    if (nedges >= nverts) any_cycle_comp = true;
  }
  (void)comp_edges_total;
  if (all_deg2 && comps == 1) return GuestShape::Cycle;
  if (!any_cycle_comp) return GuestShape::DisjointPaths;
  return GuestShape::General;
}

const char* guest_shape_name(GuestShape s) {
  switch (s) {
    case GuestShape::Cycle: return "cycle";
    case GuestShape::DisjointPaths: return "disjoint-paths";
    default: return "general";
  }
}

const Cluster* HostGraph::find_cluster(const std::string& id) const {
  for (const auto& c : clusters)
    if (c.id == id) return &c;
  return nullptr;
}

const HostPipe* HostGraph::find_pipe(const std::string& id) const {
  for (const auto& p : pipes)
    if (p.id == id) return &p;
  return nullptr;
}

static bool id_ok(const std::string& id) {
  if (id.empty() || id == ":") return false;
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c)) || c == '#') return false;
  return true;
}

// Is q in the relative interior of segment [a,b]?
static bool strictly_inside_segment(const Point& q, const Point& a, const Point& b) {
  if (q == a || q == b) return false;
  if (orient(a, b, q) != 0) return false;
  Rat lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
  Rat lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
  return q.x >= lo_x && q.x <= hi_x && q.y >= lo_y && q.y <= hi_y;
}

ValidationReport validate(const Instance& inst) {
  ValidationReport rep;
  auto add = [&](const std::string& code, const std::string& detail) {
    rep.violations.push_back({code, detail});
  };

  std::map<std::string, const Cluster*> clusters;
  std::map<std::string, const HostPipe*> pipes;
  std::map<std::string, int> vdeg;
  std::map<std::string, const GuestEdge*> edges;

  for (const auto& c : inst.host.clusters) {
    if (!id_ok(c.id)) add("bad-id", "cluster id '" + c.id + "'");
    if (clusters.count(c.id)) add("duplicate-id", "cluster " + c.id);
    clusters[c.id] = &c;
  }
  {
    std::map<Point, std::string> at;
    for (const auto& c : inst.host.clusters) {
      auto [it, fresh] = at.emplace(c.pos, c.id);
      if (!fresh) add("coincident-clusters", c.id + " and " + it->second + " share a position");
    }
  }
  std::set<std::pair<std::string, std::string>> pipe_pairs;
  for (const auto& p : inst.host.pipes) {
    if (!id_ok(p.id)) add("bad-id", "pipe id '" + p.id + "'");
    if (pipes.count(p.id)) add("duplicate-id", "pipe " + p.id);
    pipes[p.id] = &p;
    auto cu = clusters.find(p.u), cv = clusters.find(p.v);
    if (cu == clusters.end()) add("dangling-reference", "pipe " + p.id + " endpoint " + p.u);
    if (cv == clusters.end()) add("dangling-reference", "pipe " + p.id + " endpoint " + p.v);
    if (p.u == p.v) add("pipe-loop", p.id);
    auto key = std::minmax(p.u, p.v);
    if (!pipe_pairs.insert({key.first, key.second}).second)
      add("parallel-pipes", p.id + " duplicates endpoint pair {" + p.u + "," + p.v + "}");
    if (p.polyline.size() < 2) {
      add("bad-polyline", p.id + " has fewer than two points");
      continue;
    }
    if (cu != clusters.end() && p.polyline.front() != cu->second->pos)
      add("bad-polyline", p.id + " does not start at position of " + p.u);
    if (cv != clusters.end() && p.polyline.back() != cv->second->pos)
      add("bad-polyline", p.id + " does not end at position of " + p.v);
    for (std::size_t i = 0; i + 1 < p.polyline.size(); ++i)
      if (p.polyline[i] == p.polyline[i + 1])
        add("bad-polyline", p.id + " has a zero-length segment");
  }

  // No pipe may pass through the position of a cluster other than its ends.
  // Candidates are narrowed through an x-sorted position index.
  std::vector<std::pair<std::string, std::string>> through;  // (pipe, cluster)
  {
    std::vector<const Cluster*> by_x;
    for (const auto& c : inst.host.clusters) by_x.push_back(&c);
    std::sort(by_x.begin(), by_x.end(),
              [](const Cluster* a, const Cluster* b) { return a->pos.x < b->pos.x; });
    std::vector<Rat> xs;
    for (const Cluster* c : by_x) xs.push_back(c->pos.x);
    for (const auto& p : inst.host.pipes) {
      std::set<std::string> hits;
      for (std::size_t i = 0; i + 1 < p.polyline.size(); ++i) {
        const Point& a = p.polyline[i];
        const Point& b = p.polyline[i + 1];
        Rat lo = std::min(a.x, b.x), hi = std::max(a.x, b.x);
        auto first = std::lower_bound(xs.begin(), xs.end(), lo);
        auto last = std::upper_bound(xs.begin(), xs.end(), hi);
        for (auto it = first; it != last; ++it) {
          const Cluster* c = by_x[static_cast<std::size_t>(it - xs.begin())];
          if (c->id == p.u || c->id == p.v) continue;
          bool interior_node = i + 1 < p.polyline.size() - 1 && c->pos == b;
          if (interior_node || strictly_inside_segment(c->pos, a, b)) hits.insert(c->id);
        }
      }
      for (const auto& cid : hits) {
        add("pipe-through-cluster", p.id + " passes through " + cid);
        through.push_back({p.id, cid});
      }
    }
  }

  std::set<std::string> vset;
  for (const auto& v : inst.guest.vertices) {
    if (!id_ok(v)) add("bad-id", "vertex id '" + v + "'");
    if (!vset.insert(v).second) add("duplicate-id", "vertex " + v);
    vdeg[v] = 0;
  }
  std::set<std::pair<std::string, std::string>> edge_pairs;
  for (const auto& e : inst.guest.edges) {
    if (!id_ok(e.id)) add("bad-id", "edge id '" + e.id + "'");
    if (edges.count(e.id)) add("duplicate-id", "edge " + e.id);
    edges[e.id] = &e;
    if (!vset.count(e.a)) add("dangling-reference", "edge " + e.id + " endpoint " + e.a);
    if (!vset.count(e.b)) add("dangling-reference", "edge " + e.id + " endpoint " + e.b);
    if (e.a == e.b) add("edge-loop", e.id);
    auto key = std::minmax(e.a, e.b);
    if (!edge_pairs.insert({key.first, key.second}).second)
      add("parallel-edges", e.id + " duplicates endpoint pair {" + e.a + "," + e.b + "}");
    vdeg[e.a]++;
    vdeg[e.b]++;
  }

  // Simplicial map checks.
  for (const auto& v : inst.guest.vertices) {
    auto it = inst.map.vertex_map.find(v);
    if (it == inst.map.vertex_map.end())
      add("unmapped-vertex", v);
    else if (!clusters.count(it->second))
      add("dangling-reference", "mapv " + v + " -> " + it->second);
  }
  for (const auto& [v, c] : inst.map.vertex_map)
    if (!vset.count(v)) add("dangling-reference", "mapv of unknown vertex " + v);
  for (const auto& [eid, pid] : inst.map.edge_map)
    if (!edges.count(eid)) add("dangling-reference", "mape of unknown edge " + eid);
  for (const auto& e : inst.guest.edges) {
    auto it = inst.map.edge_map.find(e.id);
    if (it == inst.map.edge_map.end()) {
      add("unmapped-edge", e.id);
      continue;
    }
    auto va = inst.map.vertex_map.find(e.a);
    auto vb = inst.map.vertex_map.find(e.b);
    if (va == inst.map.vertex_map.end() || vb == inst.map.vertex_map.end()) continue;
    if (va->second == vb->second) {
      add("edge-maps-to-no-pipe",
          "edge " + e.id + ": both endpoints map to cluster " + va->second);
      continue;
    }
    auto pit = pipes.find(it->second);
    if (pit == pipes.end()) {
      add("dangling-reference", "mape " + e.id + " -> " + it->second);
      continue;
    }
    const HostPipe* p = pit->second;
    std::set<std::string> want{va->second, vb->second}, got{p->u, p->v};
    if (want != got)
      add("incidence-broken",
          "edge " + e.id + " maps to pipe " + p->id + " not spanning its endpoint clusters");
  }

  // Slot conservation at each cluster (only meaningful once the map checks
  // pass; it catches internally inconsistent constructions).
  if (rep.violations.empty()) {
    std::map<std::string, long long> slots, want;
    for (const auto& c : inst.host.clusters) slots[c.id] = want[c.id] = 0;
    for (const auto& e : inst.guest.edges) {
      const HostPipe* p = pipes[inst.map.edge_map.at(e.id)];
      slots[p->u]++;
      slots[p->v]++;
    }
    for (const auto& v : inst.guest.vertices)
      want[inst.map.vertex_map.at(v)] += vdeg[v];
    for (const auto& c : inst.host.clusters)
      if (slots[c.id] != want[c.id])
        add("slot-conservation",
            c.id + ": " + std::to_string(slots[c.id]) + " pipe slots vs " +
                std::to_string(want[c.id]) + " vertex slots");
  }

  // Informational findings: spurs, and forks derived from the
  // pipe-through-cluster offenses.
  if (rep.violations.empty()) {
    std::map<std::string, std::vector<std::string>> pipes_at_vertex;
    for (const auto& e : inst.guest.edges) {
      const std::string& pid = inst.map.edge_map.at(e.id);
      pipes_at_vertex[e.a].push_back(pid);
      pipes_at_vertex[e.b].push_back(pid);
    }
    for (const auto& v : inst.guest.vertices) {
      auto& ps = pipes_at_vertex[v];
      std::sort(ps.begin(), ps.end());
      if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) rep.spurs.push_back(v);
    }
  }
  if (!through.empty()) {
    std::set<std::string> offending;
    for (const auto& [pid, cid] : through) offending.insert(cid);
    for (const auto& v : inst.guest.vertices) {
      auto it = inst.map.vertex_map.find(v);
      if (it != inst.map.vertex_map.end() && offending.count(it->second))
        rep.forks.push_back(v);
    }
  }
  return rep;
}

void require_valid(const Instance& inst) {
  auto rep = validate(inst);
  if (!rep.admissible()) {
    std::string msg = "invalid instance:";
    for (const auto& v : rep.violations) msg += "\n  [" + v.code + "] " + v.detail;
    throw DataError(msg);
  }
}

std::map<std::string, long long> pipe_weights(const Instance& inst) {
  std::map<std::string, long long> w;
  for (const auto& p : inst.host.pipes) w[p.id] = 0;
  for (const auto& [eid, pid] : inst.map.edge_map) w[pid]++;
  return w;
}

Instance prune(const Instance& inst) {
  auto w = pipe_weights(inst);
  std::map<std::string, long long> preimage;
  for (const auto& c : inst.host.clusters) preimage[c.id] = 0;
  for (const auto& [vid, cid] : inst.map.vertex_map) preimage[cid]++;

  Instance out;
  out.guest = inst.guest;
  out.map = inst.map;
  for (const auto& c : inst.host.clusters)
    if (preimage[c.id] > 0) out.host.clusters.push_back(c);
  for (const auto& p : inst.host.pipes)
    if (w[p.id] > 0) out.host.pipes.push_back(p);
  return out;
}

}  // namespace crossmin
