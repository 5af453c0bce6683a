#pragma once

#include "crossmin/combinatorial.hpp"
#include "crossmin/evaluate.hpp"

namespace crossmin {

struct OracleOptions {
  BigInt budget = 1000000;  // hard cap on the product of per-pipe factorials
  EvalOptions eval;
};

struct OracleResult {
  long long min = 0;
  IntOrders argmin;
};

// Exact minimum of evaluate over the full product of per-pipe total orders,
// with one lexicographically-first witness. Enumeration is lexicographic over
// pipes sorted by id. The budget is a hard precondition, never a truncation.
OracleResult oracle(const CombInstance& m, const OracleOptions& opt = {});

struct GeomOracleResult {
  long long min = 0;
  PipeOrderSet argmin;
};
GeomOracleResult oracle(const Instance& inst, const OracleOptions& opt = {});

// Do the two instances have the same exact minimum? The executable check
// behind expansion invariance.
bool oracle_invariance_check(const CombInstance& before, const CombInstance& after,
                             const OracleOptions& opt = {});

// The product of per-pipe factorials (enumeration size).
BigInt oracle_search_space(const CombInstance& m);

}  // namespace crossmin
