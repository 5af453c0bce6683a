#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crossmin/model.hpp"

namespace crossmin::testsupport {

// Deterministic xorshift generator so test corpora are reproducible.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool flip() { return next() & 1; }
};

// C_n wound n/k times around a convex crossing-free k-gon host (3 <= k <= 6,
// k divides n).
Instance wound_cycle(int n, int k);

// The standard small fixture: C_6 wound twice around a triangle with
// clusters A, B, C, vertices g0..g5 and edges e0..e5.
Instance tri6();

// Identity map of C_k onto a k-gon.
Instance identity_cycle(int k);

// A spur-free C_8 over a theta-shaped host (two degree-3 clusters).
Instance theta_cycle();

// A spur-free cycle over a square host with both diagonals drawn (one
// transversal crossing in the drawing, so cr2 > 0).
Instance crossed_square_cycle();

// Two triangles joined by a path of `path_len` clusters, with the guest
// cycle traversing the path in both directions. Crossing-free and spur-free;
// |E(G)| = 2 * path_len + 8.
Instance dumbbell(int path_len);

// Random spur-free cycle instance over a small host template; the oracle
// search space is capped by `max_space`.
Instance random_cycle_instance(Rng& rng, long long max_space = 100000);

// Same instance with all ids consistently renamed.
Instance relabeled(const Instance& inst, Rng& rng);

// Subdivides one pipe (and all its preimage edges) at the segment midpoint.
Instance subdivide_pipe(const Instance& inst, const std::string& pipe_id);

}  // namespace crossmin::testsupport

#include "crossmin/reduce.hpp"

namespace crossmin::testsupport {
// Random satisfiable 3CNF with a planted assignment; every clause has three
// distinct variables.
std::pair<Cnf, Assignment> random_sat_cnf(Rng& rng, int num_vars, int num_clauses);
}  // namespace crossmin::testsupport
