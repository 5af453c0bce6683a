#include "crossmin/oracle.hpp"

#include <algorithm>
#include <set>

#include "crossmin/errors.hpp"

namespace crossmin {

BigInt oracle_search_space(const CombInstance& m) {
  BigInt product = 1;
  for (const auto& p : m.pipes) {
    if (!p.alive) continue;
    for (long long k = 2; k <= p.weight(); ++k) product *= k;
  }
  return product;
}

OracleResult oracle(const CombInstance& m, const OracleOptions& opt) {
  BigInt space = oracle_search_space(m);
  if (space > opt.budget)
    throw BudgetExceededError("oracle search space " + space.str() + " exceeds budget " +
                              opt.budget.str());
  for (const auto& v : m.vertices)
    if (v.alive && v.degree() > 2)
      throw DataError("oracle requires guest degrees <= 2");

  IntOrders orders;
  std::vector<int> free_pipes;  // pipes with more than one order
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    const CombPipe& pp = m.pipes[p];
    if (!pp.alive || pp.weight() == 0) continue;
    std::vector<int> pi = pp.edges;
    std::sort(pi.begin(), pi.end());
    if (pi.size() > 1) free_pipes.push_back(static_cast<int>(p));
    orders[static_cast<int>(p)] = std::move(pi);
  }

  // Per-cluster counts, updated incrementally as the odometer advances.
  std::map<int, long long> counts;
  long long disk_total = 0;
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    if (!m.clusters[c].alive) continue;
    auto chords = detail::disk_chords(m, static_cast<int>(c), orders, opt.eval);
    long long k = chords.size() <= 48 ? detail::count_interleavings_quadratic(chords)
                                      : detail::count_interleavings(std::move(chords));
    counts[static_cast<int>(c)] = k;
    disk_total += k;
  }

  OracleResult best;
  best.min = m.cr2 + disk_total;
  best.argmin = orders;

  while (true) {
    // Advance the odometer: most significant pipe first in the tuple order,
    // so the last pipe varies fastest. next_permutation leaves a wrapped
    // order sorted, which is exactly the reset we need.
    int k = static_cast<int>(free_pipes.size()) - 1;
    std::set<int> touched;
    while (k >= 0) {
      int p = free_pipes[k];
      touched.insert(m.pipes[p].u);
      touched.insert(m.pipes[p].v);
      if (std::next_permutation(orders[p].begin(), orders[p].end())) break;
      k--;
    }
    if (k < 0) break;
    for (int c : touched) {
      auto chords = detail::disk_chords(m, c, orders, opt.eval);
      long long nk = chords.size() <= 48 ? detail::count_interleavings_quadratic(chords)
                                         : detail::count_interleavings(std::move(chords));
      disk_total += nk - counts[c];
      counts[c] = nk;
    }
    long long total = m.cr2 + disk_total;
    if (total < best.min) {
      best.min = total;
      best.argmin = orders;
    }
  }
  return best;
}

GeomOracleResult oracle(const Instance& inst, const OracleOptions& opt) {
  CombInstance m = attach(inst);
  OracleResult r = oracle(m, opt);
  return {r.min, export_orders(m, r.argmin)};
}

bool oracle_invariance_check(const CombInstance& before, const CombInstance& after,
                             const OracleOptions& opt) {
  return oracle(before, opt).min == oracle(after, opt).min;
}

}  // namespace crossmin
