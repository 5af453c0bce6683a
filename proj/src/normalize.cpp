#include "crossmin/normalize.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "crossmin/errors.hpp"
#include "crossmin/geometry.hpp"

namespace crossmin {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

Rat coord(const std::string& tok, int line) {
  Rat r;
  if (!try_parse_rat(tok, r)) throw ParseError(line, "bad coordinate '" + tok + "'");
  return r;
}

bool strictly_inside(const Point& q, const Point& a, const Point& b) {
  if (q == a || q == b) return false;
  if (orient(a, b, q) != 0) return false;
  Rat lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
  Rat lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
  return q.x >= lo_x && q.x <= hi_x && q.y >= lo_y && q.y <= hi_y;
}

bool point_in_polyline_interior(const Point& q, const std::vector<Point>& poly) {
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    if (poly[i] == q) return true;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i)
    if (strictly_inside(q, poly[i], poly[i + 1])) return true;
  return false;
}

}  // namespace

RawDrawing parse_raw_drawing(const std::string& text) {
  RawDrawing raw;
  std::map<std::string, Point> vpos;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  struct PendingEdge {
    std::string a, b;
    std::vector<Point> bends;
    int line;
  };
  std::vector<PendingEdge> pending;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] == "vertex") {
      if (toks.size() != 4) throw ParseError(lineno, "expected: vertex <id> <x> <y>");
      if (vpos.count(toks[1])) throw ParseError(lineno, "duplicate vertex id " + toks[1]);
      Point p{coord(toks[2], lineno), coord(toks[3], lineno)};
      vpos[toks[1]] = p;
      raw.vertices.push_back({toks[1], p});
    } else if (toks[0] == "edge") {
      if (toks.size() < 3) throw ParseError(lineno, "expected: edge <a> <b> [: bends]");
      PendingEdge pe{toks[1], toks[2], {}, lineno};
      if (toks.size() > 3) {
        if (toks[3] != ":") throw ParseError(lineno, "expected ':' before bend points");
        if ((toks.size() - 4) % 2 != 0) throw ParseError(lineno, "odd bend coordinate count");
        for (std::size_t i = 4; i + 1 < toks.size(); i += 2)
          pe.bends.push_back({coord(toks[i], lineno), coord(toks[i + 1], lineno)});
      }
      pending.push_back(std::move(pe));
    } else {
      throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
    }
  }
  for (auto& pe : pending) {
    auto ita = vpos.find(pe.a), itb = vpos.find(pe.b);
    if (ita == vpos.end()) throw ParseError(pe.line, "edge references undefined vertex " + pe.a);
    if (itb == vpos.end()) throw ParseError(pe.line, "edge references undefined vertex " + pe.b);
    RawEdge e{pe.a, pe.b, {}};
    e.polyline.push_back(ita->second);
    for (auto& b : pe.bends) e.polyline.push_back(b);
    e.polyline.push_back(itb->second);
    raw.edges.push_back(std::move(e));
  }
  return raw;
}

std::string serialize_raw_drawing(const RawDrawing& raw) {
  std::ostringstream out;
  for (const auto& v : raw.vertices)
    out << "vertex " << v.id << " " << rat_to_string(v.pos.x) << " " << rat_to_string(v.pos.y)
        << "\n";
  for (const auto& e : raw.edges) {
    out << "edge " << e.a << " " << e.b;
    if (e.polyline.size() > 2) {
      out << " :";
      for (std::size_t i = 1; i + 1 < e.polyline.size(); ++i)
        out << " " << rat_to_string(e.polyline[i].x) << " " << rat_to_string(e.polyline[i].y);
    }
    out << "\n";
  }
  return out.str();
}

static void check_raw(const RawDrawing& raw) {
  std::map<std::string, Point> vpos;
  for (const auto& v : raw.vertices)
    if (!vpos.emplace(v.id, v.pos).second) throw DataError("duplicate vertex id " + v.id);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& e : raw.edges) {
    if (!vpos.count(e.a) || !vpos.count(e.b))
      throw DataError("edge " + e.a + "~" + e.b + " references an undefined vertex");
    if (e.a == e.b) throw DataError("loop edge at " + e.a);
    auto key = std::minmax(e.a, e.b);
    if (!seen.insert({key.first, key.second}).second)
      throw DataError("parallel edges between " + e.a + " and " + e.b);
    if (e.polyline.size() < 2 || e.polyline.front() != vpos.at(e.a) ||
        e.polyline.back() != vpos.at(e.b))
      throw DataError("edge " + e.a + "~" + e.b + " polyline does not join its endpoints");
    for (std::size_t i = 0; i + 1 < e.polyline.size(); ++i)
      if (e.polyline[i] == e.polyline[i + 1])
        throw DataError("edge " + e.a + "~" + e.b + " has a zero-length segment");
  }
}

Instance normalize(const RawDrawing& raw) {
  check_raw(raw);

  // Clusters: distinct points among vertex images and bend points.
  std::set<Point> pts;
  for (const auto& v : raw.vertices) pts.insert(v.pos);
  for (const auto& e : raw.edges)
    for (std::size_t i = 1; i + 1 < e.polyline.size(); ++i) pts.insert(e.polyline[i]);

  std::map<Point, std::string> cluster_of;
  Instance inst;
  {
    int k = 0;
    for (const auto& p : pts) {
      std::string id = "c" + std::to_string(k++);
      cluster_of[p] = id;
      inst.host.clusters.push_back({id, p});
    }
  }

  // Split every edge segment at each cluster point in its relative interior;
  // this also realizes overlap identification, since overlapping collinear
  // portions decompose into identical atomic segments.
  std::vector<std::vector<Point>> chains(raw.edges.size());
  std::set<std::pair<Point, Point>> seg_keys;
  for (std::size_t ei = 0; ei < raw.edges.size(); ++ei) {
    const auto& poly = raw.edges[ei].polyline;
    auto& chain = chains[ei];
    chain.push_back(poly.front());
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      const Point& a = poly[i];
      const Point& b = poly[i + 1];
      std::vector<Point> splits;
      for (const auto& p : pts)
        if (strictly_inside(p, a, b)) splits.push_back(p);
      bool use_x = a.x != b.x;
      std::sort(splits.begin(), splits.end(), [&](const Point& p, const Point& q) {
        if (use_x) return (a.x < b.x) ? p.x < q.x : p.x > q.x;
        return (a.y < b.y) ? p.y < q.y : p.y > q.y;
      });
      for (const auto& p : splits) chain.push_back(p);
      chain.push_back(b);
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto key = std::minmax(chain[i], chain[i + 1]);
      seg_keys.insert({key.first, key.second});
    }
  }

  std::map<std::pair<Point, Point>, std::string> pipe_of;
  {
    int k = 0;
    for (const auto& key : seg_keys) {
      std::string id = "p" + std::to_string(k++);
      pipe_of[key] = id;
      inst.host.pipes.push_back(
          {id, cluster_of.at(key.first), cluster_of.at(key.second), {key.first, key.second}});
    }
  }

  // Guest: original vertices keep their ids; subdivision vertices get a
  // collision-free generated prefix.
  std::set<std::string> original_ids;
  for (const auto& v : raw.vertices) original_ids.insert(v.id);
  std::string prefix = "s";
  {
    auto taken = [&](const std::string& pre) {
      for (const auto& id : original_ids) {
        if (id.size() <= pre.size() || id.compare(0, pre.size(), pre) != 0) continue;
        if (std::all_of(id.begin() + pre.size(), id.end(),
                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          return true;
      }
      return false;
    };
    while (taken(prefix)) prefix += "s";
  }

  for (const auto& v : raw.vertices) {
    inst.guest.vertices.push_back(v.id);
    inst.map.vertex_map[v.id] = cluster_of.at(v.pos);
  }
  int svk = 0;
  for (std::size_t ei = 0; ei < raw.edges.size(); ++ei) {
    const auto& chain = chains[ei];
    std::vector<std::string> nodes;
    nodes.push_back(raw.edges[ei].a);
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
      std::string sid = prefix + std::to_string(svk++);
      inst.guest.vertices.push_back(sid);
      inst.map.vertex_map[sid] = cluster_of.at(chain[i]);
      nodes.push_back(sid);
    }
    nodes.push_back(raw.edges[ei].b);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      std::string eid = "g" + std::to_string(ei) + "_" + std::to_string(i);
      inst.guest.edges.push_back({eid, nodes[i], nodes[i + 1]});
      auto key = std::minmax(chain[i], chain[i + 1]);
      inst.map.edge_map[eid] = pipe_of.at({key.first, key.second});
    }
  }

  auto rep = validate(inst);
  internal_check(rep.admissible(), "normalization produced an inadmissible instance");
  return inst;
}

std::vector<std::string> detect_spurs(const Instance& inst) {
  std::map<std::string, std::vector<std::string>> pipes_at;
  for (const auto& e : inst.guest.edges) {
    auto it = inst.map.edge_map.find(e.id);
    if (it == inst.map.edge_map.end()) continue;
    pipes_at[e.a].push_back(it->second);
    pipes_at[e.b].push_back(it->second);
  }
  std::vector<std::string> out;
  for (const auto& v : inst.guest.vertices) {
    auto& ps = pipes_at[v];
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end()) out.push_back(v);
  }
  return out;
}

std::vector<ForkFinding> detect_forks(const RawDrawing& raw) {
  std::vector<ForkFinding> out;
  for (const auto& v : raw.vertices) {
    for (const auto& e : raw.edges) {
      if (e.a == v.id || e.b == v.id) continue;
      if (point_in_polyline_interior(v.pos, e.polyline))
        out.push_back({v.id, e.a + "~" + e.b});
    }
  }
  return out;
}

std::vector<ForkFinding> detect_forks(const Instance& inst) {
  std::vector<ForkFinding> out;
  for (const auto& v : inst.guest.vertices) {
    auto it = inst.map.vertex_map.find(v);
    if (it == inst.map.vertex_map.end()) continue;
    const Cluster* c = inst.host.find_cluster(it->second);
    if (!c) continue;
    for (const auto& p : inst.host.pipes) {
      if (p.u == c->id || p.v == c->id) continue;
      if (point_in_polyline_interior(c->pos, p.polyline)) out.push_back({v, p.id});
    }
  }
  return out;
}

}  // namespace crossmin
