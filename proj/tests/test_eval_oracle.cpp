#include <doctest.h>

#include <algorithm>

#include "crossmin/errors.hpp"
#include "crossmin/evaluate.hpp"
#include "crossmin/oracle.hpp"
#include "support/corpus.hpp"

using namespace crossmin;
namespace ts = crossmin::testsupport;

namespace {

// All order sets of an instance, by brute force over next_permutation; used
// to cross-check the oracle's own enumeration on tiny cases.
std::vector<IntOrders> all_order_sets(const CombInstance& m) {
  std::vector<int> pipes;
  IntOrders base;
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    if (!m.pipes[p].alive || m.pipes[p].weight() == 0) continue;
    auto pi = m.pipes[p].edges;
    std::sort(pi.begin(), pi.end());
    base[static_cast<int>(p)] = pi;
    pipes.push_back(static_cast<int>(p));
  }
  std::vector<IntOrders> out;
  std::vector<IntOrders> frontier{base};
  out.push_back(base);
  for (int p : pipes) {
    std::vector<IntOrders> next;
    for (auto& st : out) {
      auto pi = st.at(p);
      std::sort(pi.begin(), pi.end());
      do {
        IntOrders copy = st;
        copy[p] = pi;
        next.push_back(std::move(copy));
      } while (std::next_permutation(pi.begin(), pi.end()));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("tri6 evaluates to 1 at its minimum over all 8 order sets") {
  CombInstance m = attach(ts::tri6());
  auto sets = all_order_sets(m);
  CHECK(sets.size() == 8);
  long long best = 1 << 30;
  for (const auto& s : sets) best = std::min(best, evaluate(m, s).total);
  CHECK(best == 1);
  auto r = oracle(m);
  CHECK(r.min == 1);
  CHECK(evaluate(m, r.argmin).total == 1);
}

TEST_CASE("oracle on the standard fixtures") {
  CHECK(oracle(attach(ts::identity_cycle(3))).min == 0);
  CHECK(oracle(attach(ts::wound_cycle(8, 4))).min == 1);
  CHECK(oracle(attach(ts::wound_cycle(12, 4))).min == 2);
}

TEST_CASE("oracle budget is a hard precondition") {
  CombInstance m = attach(ts::wound_cycle(24, 3));  // (8!)^3 orderings
  OracleOptions opt;
  opt.budget = 1000;
  CHECK_THROWS_AS(oracle(m, opt), BudgetExceededError);
}

TEST_CASE("evaluate is bounded below by cr2 and certificates respect it") {
  ts::Rng rng(101);
  for (int t = 0; t < 25; ++t) {
    Instance inst = ts::random_cycle_instance(rng, 2000);
    CombInstance m = attach(prune(inst));
    auto r = oracle(m);
    CHECK(r.min >= m.cr2);
    CHECK(check_certificate(m, r.argmin, r.min));
    CHECK_FALSE(check_certificate(m, r.argmin, r.min - 1));
  }
  // named cases
  CombInstance tri = attach(ts::tri6());
  auto r = oracle(tri);
  CHECK(check_certificate(tri, r.argmin, 1));
  CHECK_FALSE(check_certificate(tri, r.argmin, 0));
}

TEST_CASE("weight-1 instances have a single order set equal to the oracle") {
  CombInstance m = attach(ts::identity_cycle(4));
  auto sets = all_order_sets(m);
  REQUIRE(sets.size() == 1);
  auto r = oracle(m);
  CHECK(evaluate(m, sets[0]).total == r.min);
  CHECK(r.min == 0);
}

TEST_CASE("mirror symmetry: reversing all rotations and orders preserves totals") {
  ts::Rng rng(55);
  for (int t = 0; t < 20; ++t) {
    Instance inst = ts::random_cycle_instance(rng, 2000);
    CombInstance m = attach(prune(inst));
    auto r = oracle(m);
    CombInstance rm = m;
    for (auto& c : rm.clusters) std::reverse(c.rotation.begin(), c.rotation.end());
    IntOrders rev = r.argmin;
    for (auto& [p, pi] : rev) std::reverse(pi.begin(), pi.end());
    CHECK(evaluate(rm, rev).total == evaluate(m, r.argmin).total);
    CHECK(oracle(rm).min == r.min);
  }
}

TEST_CASE("chord count equals the number of degree-2 vertices per cluster") {
  CombInstance m = attach(ts::theta_cycle());
  IntOrders base;
  for (std::size_t p = 0; p < m.pipes.size(); ++p) {
    if (!m.pipes[p].alive || m.pipes[p].weight() == 0) continue;
    auto pi = m.pipes[p].edges;
    std::sort(pi.begin(), pi.end());
    base[static_cast<int>(p)] = pi;
  }
  for (std::size_t c = 0; c < m.clusters.size(); ++c) {
    if (!m.clusters[c].alive) continue;
    auto chords = detail::disk_chords(m, static_cast<int>(c), base, {});
    long long deg2 = 0;
    for (int v : m.clusters[c].bag)
      if (m.vertices[v].degree() == 2) deg2++;
    CHECK(static_cast<long long>(chords.size()) == deg2);
  }
}

TEST_CASE("oracle minimum is invariant under relabeling") {
  ts::Rng rng(77);
  for (int t = 0; t < 12; ++t) {
    Instance inst = ts::random_cycle_instance(rng, 2000);
    long long a = oracle(attach(prune(inst))).min;
    Instance rl = ts::relabeled(inst, rng);
    long long b = oracle(attach(prune(rl))).min;
    CHECK(a == b);
  }
}

TEST_CASE("interleaving counters agree with the quadratic reference") {
  ts::Rng rng(313);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + static_cast<int>(rng.below(40));
    std::vector<detail::Chord> chords;
    std::vector<int> pool;
    for (int i = 0; i < 2 * n; ++i) pool.push_back(i);
    for (std::size_t i = pool.size(); i > 1; --i)
      std::swap(pool[i - 1], pool[rng.below(i)]);
    for (int i = 0; i < n; ++i) chords.push_back({pool[2 * i], pool[2 * i + 1], i});
    long long q = detail::count_interleavings_quadratic(chords);
    CHECK(detail::count_interleavings(chords) == q);
    long long via_pairs = 0;
    detail::for_each_interleaving(chords, [&](int, int) { via_pairs++; });
    CHECK(via_pairs == q);
  }
}

TEST_CASE("orders must be permutations of the preimage") {
  CombInstance m = attach(ts::tri6());
  auto r = oracle(m);
  IntOrders bad = r.argmin;
  bad.begin()->second.pop_back();
  CHECK_THROWS_AS(evaluate(m, bad), DataError);
}

TEST_CASE("dropping the head-slot reversal changes minima") {
  // Without the reversal, both ends of a pipe read the strand order the same
  // way around their disks: the band is effectively glued with a half twist,
  // and forced crossings can vanish. The corrupted evaluator therefore
  // disagrees with the solver on real instances; the convention is
  // load-bearing, not cosmetic.
  ts::Rng rng(2718);
  bool min_differs = false;
  for (int t = 0; t < 20; ++t) {
    Instance inst = ts::random_cycle_instance(rng, 2000);
    CombInstance m = attach(prune(inst));
    OracleOptions mut;
    mut.eval.mutate_head_slots_unreversed = true;
    long long good = oracle(m).min;
    long long bad = oracle(m, mut).min;
    if (good != bad) min_differs = true;
  }
  CHECK(min_differs);
}
