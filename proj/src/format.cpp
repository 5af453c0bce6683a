#include "crossmin/format.hpp"

#include <set>
#include <sstream>

#include "crossmin/errors.hpp"

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

Rat parse_coord(const std::string& tok, int line) {
  Rat r;
  if (!try_parse_rat(tok, r)) throw ParseError(line, "bad coordinate '" + tok + "'");
  return r;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  Instance inst;
  std::set<std::string> cluster_ids, pipe_ids, vertex_ids, edge_ids;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "cluster") {
      if (toks.size() != 4) throw ParseError(lineno, "expected: cluster <id> <x> <y>");
      if (!cluster_ids.insert(toks[1]).second)
        throw ParseError(lineno, "duplicate cluster id " + toks[1]);
      inst.host.clusters.push_back(
          {toks[1], {parse_coord(toks[2], lineno), parse_coord(toks[3], lineno)}});
    } else if (kw == "pipe") {
      if (toks.size() < 4) throw ParseError(lineno, "expected: pipe <id> <u> <v> [: bends]");
      if (!pipe_ids.insert(toks[1]).second)
        throw ParseError(lineno, "duplicate pipe id " + toks[1]);
      HostPipe p;
      p.id = toks[1];
      p.u = toks[2];
      p.v = toks[3];
      if (toks.size() > 4) {
        if (toks[4] != ":") throw ParseError(lineno, "expected ':' before bend points");
        if ((toks.size() - 5) % 2 != 0) throw ParseError(lineno, "odd bend coordinate count");
        for (std::size_t i = 5; i + 1 < toks.size(); i += 2)
          p.polyline.push_back({parse_coord(toks[i], lineno), parse_coord(toks[i + 1], lineno)});
      }
      inst.host.pipes.push_back(std::move(p));
    } else if (kw == "vertex") {
      if (toks.size() != 2) throw ParseError(lineno, "expected: vertex <id>");
      if (!vertex_ids.insert(toks[1]).second)
        throw ParseError(lineno, "duplicate vertex id " + toks[1]);
      inst.guest.vertices.push_back(toks[1]);
    } else if (kw == "edge") {
      if (toks.size() != 4) throw ParseError(lineno, "expected: edge <id> <a> <b>");
      if (!edge_ids.insert(toks[1]).second)
        throw ParseError(lineno, "duplicate edge id " + toks[1]);
      inst.guest.edges.push_back({toks[1], toks[2], toks[3]});
    } else if (kw == "mapv") {
      if (toks.size() != 3) throw ParseError(lineno, "expected: mapv <vertex> <cluster>");
      if (!inst.map.vertex_map.emplace(toks[1], toks[2]).second)
        throw ParseError(lineno, "duplicate mapv for " + toks[1]);
    } else if (kw == "mape") {
      if (toks.size() != 3) throw ParseError(lineno, "expected: mape <edge> <pipe>");
      if (!inst.map.edge_map.emplace(toks[1], toks[2]).second)
        throw ParseError(lineno, "duplicate mape for " + toks[1]);
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }

  // Resolve references needed to fill in pipe polylines; the rest of the
  // reference checking is validate()'s job, but dangling endpoints make the
  // polylines unrepresentable, so they are parse errors.
  for (auto& p : inst.host.pipes) {
    const Cluster* cu = inst.host.find_cluster(p.u);
    const Cluster* cv = inst.host.find_cluster(p.v);
    if (!cu) throw DataError("pipe " + p.id + " references undefined cluster " + p.u);
    if (!cv) throw DataError("pipe " + p.id + " references undefined cluster " + p.v);
    p.polyline.insert(p.polyline.begin(), cu->pos);
    p.polyline.push_back(cv->pos);
  }
  for (const auto& [v, c] : inst.map.vertex_map)
    if (!cluster_ids.count(c)) throw DataError("mapv " + v + " references undefined cluster " + c);
  for (const auto& [e, p] : inst.map.edge_map)
    if (!pipe_ids.count(p)) throw DataError("mape " + e + " references undefined pipe " + p);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  for (const auto& c : inst.host.clusters)
    out << "cluster " << c.id << " " << rat_to_string(c.pos.x) << " " << rat_to_string(c.pos.y)
        << "\n";
  for (const auto& p : inst.host.pipes) {
    out << "pipe " << p.id << " " << p.u << " " << p.v;
    if (p.polyline.size() > 2) {
      out << " :";
      for (std::size_t i = 1; i + 1 < p.polyline.size(); ++i)
        out << " " << rat_to_string(p.polyline[i].x) << " " << rat_to_string(p.polyline[i].y);
    }
    out << "\n";
  }
  for (const auto& v : inst.guest.vertices) out << "vertex " << v << "\n";
  for (const auto& e : inst.guest.edges)
    out << "edge " << e.id << " " << e.a << " " << e.b << "\n";
  for (const auto& [v, c] : inst.map.vertex_map) out << "mapv " << v << " " << c << "\n";
  for (const auto& [e, p] : inst.map.edge_map) out << "mape " << e << " " << p << "\n";
  return out.str();
}

PipeOrderSet parse_orders(const std::string& text) {
  PipeOrderSet orders;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] != "order") throw ParseError(lineno, "expected: order <pipe> : <edges...>");
    if (toks.size() < 3 || toks[2] != ":")
      throw ParseError(lineno, "expected ':' after pipe id");
    auto [it, fresh] = orders.order.emplace(toks[1], std::vector<std::string>{});
    if (!fresh) throw ParseError(lineno, "duplicate order for pipe " + toks[1]);
    for (std::size_t i = 3; i < toks.size(); ++i) it->second.push_back(toks[i]);
  }
  return orders;
}

std::string serialize_orders(const PipeOrderSet& orders) {
  std::ostringstream out;
  for (const auto& [pipe, edges] : orders.order) {
    out << "order " << pipe << " :";
    for (const auto& e : edges) out << " " << e;
    out << "\n";
  }
  return out.str();
}

}  // namespace crossmin
