#include "crossmin/geometry.hpp"

#include <algorithm>
#include <set>

#include "crossmin/errors.hpp"

namespace crossmin {

int orient(const Point& p, const Point& q, const Point& r) {
  Rat cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  if (cross > 0) return 1;
  if (cross < 0) return -1;
  return 0;
}

static bool on_segment_collinear(const Point& q, const Point& a, const Point& b) {
  Rat lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
  Rat lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
  return q.x >= lo_x && q.x <= hi_x && q.y >= lo_y && q.y <= hi_y;
}

SegmentRelation segment_relation(const Point& a, const Point& b, const Point& c,
                                 const Point& d) {
  SegmentRelation rel;
  int d1 = orient(c, d, a);
  int d2 = orient(c, d, b);
  int d3 = orient(a, b, c);
  int d4 = orient(a, b, d);

  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    rel.tag = SegRel::ProperCrossing;
    Rat rx = b.x - a.x, ry = b.y - a.y;
    Rat sx = d.x - c.x, sy = d.y - c.y;
    Rat denom = rx * sy - ry * sx;
    Rat t = ((c.x - a.x) * sy - (c.y - a.y) * sx) / denom;
    rel.point = Point{a.x + t * rx, a.y + t * ry};
    return rel;
  }

  if (d1 == 0 && d2 == 0 && d3 == 0 && d4 == 0) {
    // Collinear: compare 1-D parameters along the dominant axis.
    bool use_x = a.x != b.x;
    auto key = [&](const Point& p) { return use_x ? p.x : p.y; };
    Rat a1 = std::min(key(a), key(b)), a2 = std::max(key(a), key(b));
    Rat b1 = std::min(key(c), key(d)), b2 = std::max(key(c), key(d));
    Rat lo = std::max(a1, b1), hi = std::min(a2, b2);
    if (lo > hi) return rel;  // disjoint
    auto at = [&](const Rat& t) {
      for (const Point* p : {&a, &b, &c, &d})
        if (key(*p) == t) return *p;
      return a;  // unreachable
    };
    if (lo == hi) {
      rel.tag = SegRel::Touching;
      rel.point = at(lo);
    } else {
      rel.tag = SegRel::CollinearOverlap;
      rel.overlap = {at(lo), at(hi)};
    }
    return rel;
  }

  // Non-collinear contact: some endpoint lies on the other segment.
  if (d1 == 0 && on_segment_collinear(a, c, d)) {
    rel.tag = SegRel::Touching;
    rel.point = a;
  } else if (d2 == 0 && on_segment_collinear(b, c, d)) {
    rel.tag = SegRel::Touching;
    rel.point = b;
  } else if (d3 == 0 && on_segment_collinear(c, a, b)) {
    rel.tag = SegRel::Touching;
    rel.point = c;
  } else if (d4 == 0 && on_segment_collinear(d, a, b)) {
    rel.tag = SegRel::Touching;
    rel.point = d;
  }
  return rel;
}

namespace {

struct Dir {
  Rat x, y;
};

// 0 for the upper half plane including the positive x-axis, 1 below.
int half_of(const Dir& d) {
  if (d.y > 0 || (d.y == 0 && d.x > 0)) return 0;
  return 1;
}

// -1 / 0 / +1: a before / same direction as / after b in ccw order from east.
int ccw_compare(const Dir& a, const Dir& b) {
  int ha = half_of(a), hb = half_of(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  Rat cross = a.x * b.y - a.y * b.x;
  if (cross > 0) return -1;
  if (cross < 0) return 1;
  return 0;
}

}  // namespace

RotationSystem rotation_at(const HostGraph& host) {
  RotationSystem rot;
  struct Inc {
    std::string pipe;
    Dir dir;
  };
  std::map<std::string, std::vector<Inc>> at;
  for (const auto& c : host.clusters) at[c.id];
  for (const auto& p : host.pipes) {
    const auto& poly = p.polyline;
    internal_check(poly.size() >= 2, "pipe polyline too short");
    at[p.u].push_back({p.id, {poly[1].x - poly[0].x, poly[1].y - poly[0].y}});
    std::size_t k = poly.size();
    at[p.v].push_back({p.id, {poly[k - 2].x - poly[k - 1].x, poly[k - 2].y - poly[k - 1].y}});
  }
  for (auto& [cid, incs] : at) {
    std::sort(incs.begin(), incs.end(), [&](const Inc& a, const Inc& b) {
      int c = ccw_compare(a.dir, b.dir);
      if (c == 0)
        throw DegenerateRotationError("pipes " + a.pipe + " and " + b.pipe +
                                      " leave cluster " + cid + " in the same direction");
      return c < 0;
    });
    auto& order = rot.at[cid];
    for (const auto& inc : incs) order.push_back(inc.pipe);
  }
  return rot;
}

namespace {

struct Seg {
  std::size_t pipe;  // index into host.pipes
  std::size_t idx;   // segment index within the polyline
  Point a, b;        // endpoints
  Rat xmin, xmax;
};

struct PairAccum {
  const Instance& inst;
  const std::map<std::string, Point>& cluster_pos;
  std::map<std::pair<std::string, std::string>, long long>& pairs;

  void test(const Seg& s, const Seg& t) {
    const auto& pipes = inst.host.pipes;
    if (s.pipe == t.pipe) {
      bool adjacent = (s.idx + 1 == t.idx) || (t.idx + 1 == s.idx);
      auto rel = segment_relation(s.a, s.b, t.a, t.b);
      if (adjacent) {
        if (rel.tag == SegRel::Touching) return;  // shared bend only
        if (rel.tag == SegRel::Disjoint) return;
        throw DegenerateDrawingError("pipe " + pipes[s.pipe].id +
                                     " doubles back on itself");
      }
      if (rel.tag != SegRel::Disjoint)
        throw DegenerateDrawingError("pipe " + pipes[s.pipe].id + " self-intersects");
      return;
    }
    const HostPipe& P = pipes[s.pipe];
    const HostPipe& Q = pipes[t.pipe];
    auto rel = segment_relation(s.a, s.b, t.a, t.b);
    switch (rel.tag) {
      case SegRel::Disjoint:
        return;
      case SegRel::ProperCrossing: {
        auto key = std::minmax(P.id, Q.id);
        pairs[{key.first, key.second}]++;
        return;
      }
      case SegRel::Touching: {
        // Endpoint contact is legal only at a cluster that both pipes share.
        for (const std::string* cid : {&P.u, &P.v}) {
          if (*cid != Q.u && *cid != Q.v) continue;
          auto it = cluster_pos.find(*cid);
          if (it != cluster_pos.end() && rel.point && *rel.point == it->second) return;
        }
        throw DegenerateDrawingError("pipes " + P.id + " and " + Q.id +
                                     " touch without crossing");
      }
      case SegRel::CollinearOverlap:
        throw DegenerateDrawingError("pipes " + P.id + " and " + Q.id + " overlap");
    }
  }
};

}  // namespace

CrossingLedger crossing_ledger(const Instance& inst, CrossingMethod method) {
  std::vector<Seg> segs;
  for (std::size_t pi = 0; pi < inst.host.pipes.size(); ++pi) {
    const auto& poly = inst.host.pipes[pi].polyline;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      Seg s{pi, i, poly[i], poly[i + 1], {}, {}};
      s.xmin = std::min(s.a.x, s.b.x);
      s.xmax = std::max(s.a.x, s.b.x);
      segs.push_back(std::move(s));
    }
  }

  std::map<std::string, Point> cluster_pos;
  for (const auto& c : inst.host.clusters) cluster_pos[c.id] = c.pos;

  CrossingLedger ledger;
  PairAccum accum{inst, cluster_pos, ledger.crossing_pairs};

  if (method == CrossingMethod::AllPairs) {
    for (std::size_t i = 0; i < segs.size(); ++i)
      for (std::size_t j = i + 1; j < segs.size(); ++j) accum.test(segs[i], segs[j]);
  } else {
    // Sweep over x: only segments whose x-extents overlap are tested.
    std::vector<std::size_t> order(segs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      if (segs[i].xmin != segs[j].xmin) return segs[i].xmin < segs[j].xmin;
      return i < j;
    });
    auto by_xmax = [&](std::size_t i, std::size_t j) {
      if (segs[i].xmax != segs[j].xmax) return segs[i].xmax < segs[j].xmax;
      return i < j;
    };
    std::set<std::size_t, decltype(by_xmax)> active(by_xmax);
    for (std::size_t i : order) {
      while (!active.empty() && segs[*active.begin()].xmax < segs[i].xmin)
        active.erase(active.begin());
      for (std::size_t j : active) accum.test(segs[i], segs[j]);
      active.insert(i);
    }
  }

  auto w = pipe_weights(inst);
  ledger.w = w;
  for (const auto& p : inst.host.pipes) ledger.W[p.id] = 0;
  ledger.cr2 = 0;
  for (const auto& [pair, mult] : ledger.crossing_pairs) {
    ledger.W[pair.first] += mult * w.at(pair.second);
    ledger.W[pair.second] += mult * w.at(pair.first);
    ledger.cr2 += mult * w.at(pair.first) * w.at(pair.second);
  }
  return ledger;
}

}  // namespace crossmin
