#include "crossmin/evaluate.hpp"

#include <algorithm>
#include <unordered_map>

#include "crossmin/errors.hpp"

namespace crossmin {

static void check_orders(const CombInstance& m, const IntOrders& orders) {
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    const CombPipe& pp = m.pipes[p];
    if (!pp.alive || pp.weight() == 0) continue;
    auto it = orders.find(static_cast<int>(p));
    if (it == orders.end())
      throw DataError("missing order for pipe " + pp.name);
    if (it->second.size() != pp.edges.size())
      throw DataError("order for pipe " + pp.name + " has wrong length");
    std::vector<int> a = it->second, b = pp.edges;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw DataError("order for pipe " + pp.name + " is not a permutation of its preimage");
  }
}

namespace detail {

std::vector<Chord> disk_chords(const CombInstance& m, int cluster, const IntOrders& orders,
                               const EvalOptions& opt) {
  const CombCluster& cc = m.clusters[cluster];
  std::unordered_map<int, int> pos;
  int slot = 0;
  for (int p : cc.rotation) {
    const CombPipe& pp = m.pipes[p];
    if (pp.weight() == 0) continue;
    auto oit = orders.find(p);
    if (oit == orders.end())
      throw DataError("missing order for pipe " + pp.name + " at cluster " + cc.name);
    const auto& pi = oit->second;
    bool forward = m.tail_is(p, cluster) || opt.mutate_head_slots_unreversed;
    if (forward)
      for (auto it = pi.begin(); it != pi.end(); ++it) pos[*it] = slot++;
    else
      for (auto it = pi.rbegin(); it != pi.rend(); ++it) pos[*it] = slot++;
  }
  std::vector<Chord> chords;
  chords.reserve(cc.bag.size());
  for (int g : cc.bag) {
    const CombVertex& vg = m.vertices[g];
    if (vg.degree() != 2) continue;
    auto i0 = pos.find(vg.edges[0]);
    auto i1 = pos.find(vg.edges[1]);
    if (i0 == pos.end() || i1 == pos.end())
      throw DataError("orders inconsistent with the map at cluster " + cc.name);
    chords.push_back({i0->second, i1->second, g});
  }
  return chords;
}

}  // namespace detail

static long long disk_count(const CombInstance& m, int cluster, const IntOrders& orders,
                            const EvalOptions& opt) {
  auto chords = detail::disk_chords(m, cluster, orders, opt);
  if (chords.size() <= 48) return detail::count_interleavings_quadratic(chords);
  return detail::count_interleavings(std::move(chords));
}

EvalResult evaluate(const CombInstance& m, const IntOrders& orders, const EvalOptions& opt) {
  check_orders(m, orders);
  EvalResult res;
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    if (!m.clusters[c].alive) continue;
    long long k = disk_count(m, static_cast<int>(c), orders, opt);
    res.per_cluster[static_cast<int>(c)] = k;
    res.disk_crossings += k;
  }
  res.total = m.cr2 + res.disk_crossings;
  return res;
}

EvalResult evaluate(const Instance& inst, const PipeOrderSet& orders) {
  CombInstance m = attach(inst);
  return evaluate(m, import_orders(m, orders));
}

bool check_certificate(const CombInstance& m, const IntOrders& orders, long long K) {
  return evaluate(m, orders).total <= K;
}

bool check_certificate(const Instance& inst, const PipeOrderSet& orders, long long K) {
  return evaluate(inst, orders).total <= K;
}

std::vector<DiskCrossing> evaluate_pairs(const CombInstance& m, const IntOrders& orders,
                                         const std::vector<int>* only_clusters,
                                         const EvalOptions& opt) {
  // Restricted calls only need orders for the pipes at the given clusters;
  // disk_chords reports anything missing.
  if (!only_clusters) check_orders(m, orders);
  std::vector<int> clusters;
  if (only_clusters) {
    clusters = *only_clusters;
  } else {
    for (std::size_t c = 0; c < m.clusters.size(); ++c)
      if (m.clusters[c].alive) clusters.push_back(static_cast<int>(c));
  }
  std::vector<DiskCrossing> out;
  for (int c : clusters) {
    auto chords = detail::disk_chords(m, c, orders, opt);
    detail::for_each_interleaving(std::move(chords), [&](int v1, int v2) {
      out.push_back({c, v1, v2});
    });
  }
  return out;
}

}  // namespace crossmin
