#include "corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "crossmin/errors.hpp"
#include "crossmin/model.hpp"
#include "crossmin/oracle.hpp"

namespace crossmin::testsupport {

namespace {

std::vector<Point> polygon_points(int k) {
  switch (k) {
    case 3: return {{0, 0}, {4, 0}, {2, 4}};
    case 4: return {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    case 5: return {{0, 0}, {4, 0}, {6, 3}, {3, 6}, {-1, 3}};
    case 6: return {{0, 0}, {4, 0}, {6, 3}, {4, 6}, {0, 6}, {-2, 3}};
    default: throw DataError("polygon host supports k in 3..6");
  }
}

// Host description: clusters with positions, pipes as cluster index pairs.
struct HostTemplate {
  std::vector<Point> pos;
  std::vector<std::pair<int, int>> pipes;
};

Instance walk_instance(const HostTemplate& ht, const std::vector<int>& walk_pipes,
                       const std::vector<int>& walk_clusters) {
  Instance inst;
  for (std::size_t c = 0; c < ht.pos.size(); ++c)
    inst.host.clusters.push_back({"c" + std::to_string(c), ht.pos[c]});
  for (std::size_t p = 0; p < ht.pipes.size(); ++p)
    inst.host.pipes.push_back({"p" + std::to_string(p),
                               "c" + std::to_string(ht.pipes[p].first),
                               "c" + std::to_string(ht.pipes[p].second),
                               {ht.pos[ht.pipes[p].first], ht.pos[ht.pipes[p].second]}});
  std::size_t n = walk_pipes.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::string v = "g" + std::to_string(i);
    inst.guest.vertices.push_back(v);
    inst.map.vertex_map[v] = "c" + std::to_string(walk_clusters[i]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string e = "e" + std::to_string(i);
    inst.guest.edges.push_back({e, "g" + std::to_string(i), "g" + std::to_string((i + 1) % n)});
    inst.map.edge_map[e] = "p" + std::to_string(walk_pipes[i]);
  }
  return inst;
}

}  // namespace

Instance wound_cycle(int n, int k) {
  internal_check(k >= 3 && n % k == 0 && n >= k, "wound_cycle needs k | n");
  HostTemplate ht;
  ht.pos = polygon_points(k);
  for (int i = 0; i < k; ++i) ht.pipes.push_back({i, (i + 1) % k});
  std::vector<int> wp(n), wc(n);
  for (int i = 0; i < n; ++i) {
    wc[i] = i % k;
    wp[i] = i % k;
  }
  return walk_instance(ht, wp, wc);
}

Instance tri6() {
  Instance inst = wound_cycle(6, 3);
  const char* cl[] = {"A", "B", "C"};
  std::map<std::string, std::string> cmap;
  for (int i = 0; i < 3; ++i) cmap["c" + std::to_string(i)] = cl[i];
  for (auto& c : inst.host.clusters) c.id = cmap.at(c.id);
  std::map<std::string, std::string> pmap{{"p0", "AB"}, {"p1", "BC"}, {"p2", "CA"}};
  for (auto& p : inst.host.pipes) {
    p.id = pmap.at(p.id);
    p.u = cmap.at(p.u);
    p.v = cmap.at(p.v);
  }
  std::map<std::string, std::string> vm, em;
  for (auto& [v, c] : inst.map.vertex_map) vm[v] = cmap.at(c);
  for (auto& [e, p] : inst.map.edge_map) em[e] = pmap.at(p);
  inst.map.vertex_map = vm;
  inst.map.edge_map = em;
  return inst;
}

Instance identity_cycle(int k) { return wound_cycle(k, k); }

Instance theta_cycle() {
  HostTemplate ht;
  ht.pos = {{0, 0}, {6, 0}, {3, 3}, {3, 0}, {3, -3}};  // A B T M U
  ht.pipes = {{0, 2}, {2, 1}, {1, 3}, {3, 0}, {0, 4}, {4, 1}};
  // A T B M A U B M A
  std::vector<int> wc = {0, 2, 1, 3, 0, 4, 1, 3};
  std::vector<int> wp = {0, 1, 2, 3, 4, 5, 2, 3};
  return walk_instance(ht, wp, wc);
}

Instance crossed_square_cycle() {
  HostTemplate ht;
  ht.pos = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  ht.pipes = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
  // Walk around the square, then both diagonals: 0 1 2 3 0 2 1 3 (close to 0)
  std::vector<int> wc = {0, 1, 2, 3, 0, 2, 1, 3};
  std::vector<int> wp = {0, 1, 2, 3, 4, 1, 5, 3};
  return walk_instance(ht, wp, wc);
}

Instance dumbbell(int path_len) {
  internal_check(path_len >= 1, "dumbbell needs a path");
  const int L = path_len;
  HostTemplate ht;
  // 0:A 1:B 2:C | 3..2+L: P1..PL | D E F
  ht.pos = {{-2, 1}, {-2, -1}, {0, 0}};
  for (int i = 1; i <= L; ++i) ht.pos.push_back({i, 0});
  const int D = 3 + L, E = D + 1, F = D + 2;
  ht.pos.push_back({L + 1, 0});
  ht.pos.push_back({L + 3, 1});
  ht.pos.push_back({L + 3, -1});
  ht.pipes = {{2, 0}, {0, 1}, {1, 2}};         // 0:C-A 1:A-B 2:B-C
  for (int i = 0; i <= L; ++i)                 // 3..3+L: C-P1, P1-P2, ..., PL-D
    ht.pipes.push_back({i == 0 ? 2 : 2 + i, i == L ? D : 3 + i});
  ht.pipes.push_back({D, E});                  // 3+L+1
  ht.pipes.push_back({E, F});                  // 3+L+2
  ht.pipes.push_back({F, D});                  // 3+L+3

  // C A B C P1..PL D F E D PL..P1, closing back to C. Both end loops run
  // counterclockwise, so the curve is the outline of a thickened dumbbell.
  std::vector<int> wc = {2, 0, 1, 2};
  std::vector<int> wp = {0, 1, 2};
  for (int i = 1; i <= L; ++i) {
    wc.push_back(2 + i);
    wp.push_back(3 + i - 1);
  }
  wc.push_back(D);
  wp.push_back(3 + L);
  wc.push_back(F);
  wp.push_back(3 + L + 3);
  wc.push_back(E);
  wp.push_back(3 + L + 2);
  wc.push_back(D);
  wp.push_back(3 + L + 1);
  for (int i = L; i >= 1; --i) {
    wc.push_back(2 + i);
    wp.push_back(3 + i);
  }
  wp.push_back(3);  // P1 -> C closes the cycle
  internal_check(wc.size() == wp.size(), "dumbbell walk malformed");
  return walk_instance(ht, wp, wc);
}

namespace {

HostTemplate host_template(int which) {
  HostTemplate ht;
  switch (which) {
    case 0:
    case 1:
    case 2: {
      int k = 3 + which;
      ht.pos = polygon_points(k);
      for (int i = 0; i < k; ++i) ht.pipes.push_back({i, (i + 1) % k});
      return ht;
    }
    case 3:  // theta
      ht.pos = {{0, 0}, {6, 0}, {3, 3}, {3, 0}, {3, -3}};
      ht.pipes = {{0, 2}, {2, 1}, {1, 3}, {3, 0}, {0, 4}, {4, 1}};
      return ht;
    case 4:  // square with crossing diagonals
      ht.pos = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
      ht.pipes = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}};
      return ht;
    default:  // bowtie
      ht.pos = {{0, 0}, {4, 2}, {4, -2}, {-4, 2}, {-4, -2}};
      ht.pipes = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}};
      return ht;
  }
}

}  // namespace

Instance random_cycle_instance(Rng& rng, long long max_space) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    HostTemplate ht = host_template(static_cast<int>(rng.below(6)));
    std::size_t nc = ht.pos.size();
    std::vector<std::vector<std::pair<int, int>>> adj(nc);  // (pipe, other)
    for (std::size_t p = 0; p < ht.pipes.size(); ++p) {
      adj[ht.pipes[p].first].push_back({static_cast<int>(p), ht.pipes[p].second});
      adj[ht.pipes[p].second].push_back({static_cast<int>(p), ht.pipes[p].first});
    }
    int L = 4 + static_cast<int>(rng.below(7));
    int start = static_cast<int>(rng.below(nc));
    std::vector<int> wc{start}, wp;
    int cur = start, prev_pipe = -1;
    bool ok = true;
    for (int step = 0; step < L - 1; ++step) {
      std::vector<std::pair<int, int>> options;
      for (auto& [p, other] : adj[cur])
        if (p != prev_pipe) options.push_back({p, other});
      if (options.empty()) {
        ok = false;
        break;
      }
      auto [p, other] = options[rng.below(options.size())];
      wp.push_back(p);
      wc.push_back(other);
      prev_pipe = p;
      cur = other;
    }
    if (!ok) continue;
    // closing edge back to the start
    int close = -1;
    for (auto& [p, other] : adj[cur])
      if (other == start && p != prev_pipe && p != wp.front()) close = p;
    if (close < 0) continue;
    wp.push_back(close);
    Instance inst = walk_instance(ht, wp, wc);
    CombInstance m = attach(prune(inst));
    if (oracle_search_space(m) > max_space) continue;
    return inst;
  }
  throw InternalError("random cycle instance generation exhausted its attempts");
}

Instance relabeled(const Instance& inst, Rng& rng) {
  auto perm_names = [&](std::size_t n, const std::string& prefix) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    for (std::size_t i = n; i > 1; --i) std::swap(names[i - 1], names[rng.below(i)]);
    return names;
  };
  Instance out = inst;
  std::map<std::string, std::string> cm, pm, vm, em;
  auto cn = perm_names(inst.host.clusters.size(), "K");
  auto pn = perm_names(inst.host.pipes.size(), "Q");
  auto vn = perm_names(inst.guest.vertices.size(), "V");
  auto en = perm_names(inst.guest.edges.size(), "E");
  for (std::size_t i = 0; i < inst.host.clusters.size(); ++i) cm[inst.host.clusters[i].id] = cn[i];
  for (std::size_t i = 0; i < inst.host.pipes.size(); ++i) pm[inst.host.pipes[i].id] = pn[i];
  for (std::size_t i = 0; i < inst.guest.vertices.size(); ++i) vm[inst.guest.vertices[i]] = vn[i];
  for (std::size_t i = 0; i < inst.guest.edges.size(); ++i) em[inst.guest.edges[i].id] = en[i];
  for (auto& c : out.host.clusters) c.id = cm.at(c.id);
  for (auto& p : out.host.pipes) {
    p.id = pm.at(p.id);
    p.u = cm.at(p.u);
    p.v = cm.at(p.v);
  }
  for (auto& v : out.guest.vertices) v = vm.at(v);
  for (auto& e : out.guest.edges) {
    e.id = em.at(e.id);
    e.a = vm.at(e.a);
    e.b = vm.at(e.b);
  }
  out.map.vertex_map.clear();
  out.map.edge_map.clear();
  for (auto& [v, c] : inst.map.vertex_map) out.map.vertex_map[vm.at(v)] = cm.at(c);
  for (auto& [e, p] : inst.map.edge_map) out.map.edge_map[em.at(e)] = pm.at(p);
  return out;
}

Instance subdivide_pipe(const Instance& inst, const std::string& pipe_id) {
  Instance out = inst;
  HostPipe* target = nullptr;
  for (auto& p : out.host.pipes)
    if (p.id == pipe_id) target = &p;
  internal_check(target && target->polyline.size() == 2, "subdivide expects a straight pipe");
  Point mid{(target->polyline[0].x + target->polyline[1].x) / 2,
            (target->polyline[0].y + target->polyline[1].y) / 2};
  std::string wc = pipe_id + "_mid";
  out.host.clusters.push_back({wc, mid});
  std::string half1 = pipe_id + "_h1", half2 = pipe_id + "_h2";
  std::string u = target->u, v = target->v;
  Point pu = target->polyline[0], pv = target->polyline[1];
  // replace the pipe
  out.host.pipes.erase(std::remove_if(out.host.pipes.begin(), out.host.pipes.end(),
                                      [&](const HostPipe& p) { return p.id == pipe_id; }),
                       out.host.pipes.end());
  out.host.pipes.push_back({half1, u, wc, {pu, mid}});
  out.host.pipes.push_back({half2, wc, v, {mid, pv}});

  int k = 0;
  std::vector<GuestEdge> new_edges;
  for (const auto& e : out.guest.edges) {
    if (out.map.edge_map.at(e.id) != pipe_id) {
      new_edges.push_back(e);
      continue;
    }
    // split e at a new vertex mapped to the midpoint cluster; the half
    // incident to the endpoint mapped at u rides half1
    std::string nv = pipe_id + "_sv" + std::to_string(k);
    std::string e1 = e.id + "_s0", e2 = e.id + "_s1";
    k++;
    out.guest.vertices.push_back(nv);
    out.map.vertex_map[nv] = wc;
    bool a_at_u = out.map.vertex_map.at(e.a) == u;
    new_edges.push_back({e1, e.a, nv});
    new_edges.push_back({e2, nv, e.b});
    out.map.edge_map.erase(e.id);
    out.map.edge_map[e1] = a_at_u ? half1 : half2;
    out.map.edge_map[e2] = a_at_u ? half2 : half1;
  }
  out.guest.edges = new_edges;
  return out;
}

}  // namespace crossmin::testsupport

namespace crossmin::testsupport {

std::pair<Cnf, Assignment> random_sat_cnf(Rng& rng, int num_vars, int num_clauses) {
  internal_check(num_vars >= 3, "need at least three variables");
  Assignment tau;
  for (int v = 1; v <= num_vars; ++v) tau.value[v] = rng.flip();
  Cnf cnf;
  cnf.num_vars = num_vars;
  for (int i = 0; i < num_clauses; ++i) {
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < 3)
      vars.insert(1 + static_cast<int>(rng.below(num_vars)));
    std::vector<int> clause;
    for (int v : vars) clause.push_back(rng.flip() ? v : -v);
    bool sat = false;
    for (int l : clause) sat |= tau.value.at(std::abs(l)) == (l > 0);
    if (!sat) {
      int k = static_cast<int>(rng.below(3));
      clause[k] = -clause[k];
    }
    cnf.clauses.push_back(clause);
  }
  return {cnf, tau};
}

}  // namespace crossmin::testsupport
