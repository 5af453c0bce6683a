#include "crossmin/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "crossmin/geometry.hpp"

namespace crossmin {

namespace {

double dbl(const Rat& r) {
  return rat_num(r).convert_to<double>() / rat_den(r).convert_to<double>();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kStrandColors[] = {"#c0392b", "#2471a3", "#1e8449", "#b7950b",
                               "#7d3c98", "#ca6f1e", "#117a65", "#884ea0"};

}  // namespace

std::string render_svg(const Instance& inst, const std::optional<PipeOrderSet>& orders) {
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  bool first = true;
  for (const auto& p : inst.host.pipes)
    for (const auto& pt : p.polyline) {
      double x = dbl(pt.x), y = dbl(pt.y);
      if (first) {
        minx = maxx = x;
        miny = maxy = y;
        first = false;
      }
      minx = std::min(minx, x);
      maxx = std::max(maxx, x);
      miny = std::min(miny, y);
      maxy = std::max(maxy, y);
    }
  for (const auto& c : inst.host.clusters) {
    double x = dbl(c.pos.x), y = dbl(c.pos.y);
    if (first) {
      minx = maxx = x;
      miny = maxy = y;
      first = false;
    }
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  double span = std::max(maxx - minx, maxy - miny);
  if (span <= 0) span = 1;
  double scale = 640.0 / span;
  double margin = 40.0;
  auto X = [&](const Rat& r) { return margin + (dbl(r) - minx) * scale; };
  // SVG y grows downward; flip so the drawing reads like the plane.
  auto Y = [&](const Rat& r) { return margin + (maxy - dbl(r)) * scale; };
  double W = margin * 2 + (maxx - minx) * scale;
  double H = margin * 2 + (maxy - miny) * scale;

  auto w = pipe_weights(inst);

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(W) << "\" height=\""
      << num(H) << "\" viewBox=\"0 0 " << num(W) << " " << num(H) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& p : inst.host.pipes) {
    out << "<polyline fill=\"none\" stroke=\"#555555\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < p.polyline.size(); ++i) {
      if (i) out << " ";
      out << num(X(p.polyline[i].x)) << "," << num(Y(p.polyline[i].y));
    }
    out << "\"><title>" << esc(p.id) << " w=" << w[p.id] << "</title></polyline>\n";
    // weight label at the midpoint of the middle segment
    std::size_t mid = (p.polyline.size() - 1) / 2;
    double lx = (X(p.polyline[mid].x) + X(p.polyline[mid + 1].x)) / 2;
    double ly = (Y(p.polyline[mid].y) + Y(p.polyline[mid + 1].y)) / 2;
    out << "<text x=\"" << num(lx + 4) << "\" y=\"" << num(ly - 4)
        << "\" font-size=\"11\" fill=\"#888888\">" << w[p.id] << "</text>\n";
  }

  // Schematic strands inside pipes: offset copies in order position.
  if (orders) {
    for (const auto& p : inst.host.pipes) {
      auto it = orders->order.find(p.id);
      if (it == orders->order.end()) continue;
      const auto& pi = it->second;
      long long k = static_cast<long long>(pi.size());
      for (long long s = 0; s < k; ++s) {
        double off = (static_cast<double>(s) - (k - 1) / 2.0) * 3.0;
        out << "<polyline fill=\"none\" stroke=\"" << kStrandColors[s % 8]
            << "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i + 1 < p.polyline.size(); ++i) {
          double x1 = X(p.polyline[i].x), y1 = Y(p.polyline[i].y);
          double x2 = X(p.polyline[i + 1].x), y2 = Y(p.polyline[i + 1].y);
          double dx = x2 - x1, dy = y2 - y1;
          double len = std::hypot(dx, dy);
          if (len == 0) len = 1;
          double nx = -dy / len * off, ny = dx / len * off;
          if (i == 0) out << num(x1 + nx) << "," << num(y1 + ny) << " ";
          out << num(x2 + nx) << "," << num(y2 + ny);
          if (i + 2 < p.polyline.size()) out << " ";
        }
        out << "\"><title>" << esc(pi[static_cast<std::size_t>(s)]) << "</title></polyline>\n";
      }
    }
  }

  // Transversal crossings between pipe polylines.
  {
    std::vector<Point> marks;
    const auto& pipes = inst.host.pipes;
    for (std::size_t a = 0; a < pipes.size(); ++a)
      for (std::size_t b = a + 1; b < pipes.size(); ++b)
        for (std::size_t i = 0; i + 1 < pipes[a].polyline.size(); ++i)
          for (std::size_t j = 0; j + 1 < pipes[b].polyline.size(); ++j) {
            auto rel = segment_relation(pipes[a].polyline[i], pipes[a].polyline[i + 1],
                                        pipes[b].polyline[j], pipes[b].polyline[j + 1]);
            if (rel.tag == SegRel::ProperCrossing) marks.push_back(*rel.point);
          }
    for (const auto& pt : marks)
      out << "<circle cx=\"" << num(X(pt.x)) << "\" cy=\"" << num(Y(pt.y))
          << "\" r=\"4\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  }

  for (const auto& c : inst.host.clusters) {
    out << "<circle cx=\"" << num(X(c.pos.x)) << "\" cy=\"" << num(Y(c.pos.y))
        << "\" r=\"3\" fill=\"#222222\"/>\n";
    out << "<text x=\"" << num(X(c.pos.x) + 5) << "\" y=\"" << num(Y(c.pos.y) - 5)
        << "\" font-size=\"11\" fill=\"#222222\">" << esc(c.id) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace crossmin
