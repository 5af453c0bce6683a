#pragma once

#include <map>
#include <vector>

#include "crossmin/combinatorial.hpp"
#include "crossmin/detail/interleave.hpp"

namespace crossmin {

struct EvalOptions {
  bool mutate_head_slots_unreversed = false;  // test-only slot corruption
};

struct EvalResult {
  long long total = 0;  // cr2 + disk crossings
  long long disk_crossings = 0;
  std::map<int, long long> per_cluster;
};

// Crossing count of the perturbation induced by the given pipe orders: cr2
// plus, per cluster disk, the number of strictly interleaving chord pairs.
// Each degree-2 preimage vertex contributes the chord joining its two edge
// slots; degree-1 vertices contribute none. Spur chords (both slots on one
// pipe arc) are ordinary chords. Guest degrees must be <= 2; spurs allowed.
EvalResult evaluate(const CombInstance& m, const IntOrders& orders,
                    const EvalOptions& opt = {});
EvalResult evaluate(const Instance& inst, const PipeOrderSet& orders);

bool check_certificate(const CombInstance& m, const IntOrders& orders, long long K);
bool check_certificate(const Instance& inst, const PipeOrderSet& orders, long long K);

// Explicit crossing chord pairs, attributed to the preimage vertices that
// own the chords. For gadget-level assertions.
struct DiskCrossing {
  int cluster;
  int vertex1, vertex2;
};
std::vector<DiskCrossing> evaluate_pairs(const CombInstance& m, const IntOrders& orders,
                                         const std::vector<int>* only_clusters = nullptr,
                                         const EvalOptions& opt = {});

namespace detail {
// Chords of one disk under the given orders; payloads are vertex ids.
std::vector<Chord> disk_chords(const CombInstance& m, int cluster, const IntOrders& orders,
                               const EvalOptions& opt);
}  // namespace detail

}  // namespace crossmin
