#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossmin/model.hpp"

namespace crossmin {

// Sign of the cross product (q - p) x (r - p). Exact.
int orient(const Point& p, const Point& q, const Point& r);

enum class SegRel { Disjoint, ProperCrossing, Touching, CollinearOverlap };

struct SegmentRelation {
  SegRel tag = SegRel::Disjoint;
  std::optional<Point> point;                      // crossing / touch witness
  std::optional<std::pair<Point, Point>> overlap;  // collinear overlap range
};

// Exact classification of two nondegenerate segments [a,b] and [c,d].
SegmentRelation segment_relation(const Point& a, const Point& b, const Point& c,
                                 const Point& d);

// Per cluster: the counterclockwise cyclic order of incident pipe ids, by the
// initial direction of each pipe's polyline. No trigonometry; exact.
struct RotationSystem {
  std::map<std::string, std::vector<std::string>> at;
};

RotationSystem rotation_at(const HostGraph& host);

enum class CrossingMethod { AllPairs, Sweep };

// Enumerates transversal crossings between pipe polylines and assembles the
// ledger: per-pair multiplicities, weights w, crossing-weight sums W, and
// cr2 = sum of multiplicity * w(e1) * w(e2). Touching or overlap between
// distinct pipes (other than shared cluster endpoints) is a degeneracy error.
CrossingLedger crossing_ledger(const Instance& inst,
                               CrossingMethod method = CrossingMethod::Sweep);

}  // namespace crossmin
