#pragma once

// Chord interleaving helpers. Two chords of a disk cross exactly when their
// boundary endpoints strictly alternate around the boundary circle; chords
// sharing a boundary position never cross.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace crossmin::detail {

struct Chord {
  int a, b;      // boundary positions, a < b after normalization
  int payload;   // caller-defined id
};

inline void normalize_chords(std::vector<Chord>& chords) {
  for (auto& c : chords)
    if (c.a > c.b) std::swap(c.a, c.b);
  std::sort(chords.begin(), chords.end(),
            [](const Chord& x, const Chord& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
}

// Calls f(payload_i, payload_j) for every strictly interleaving pair.
// Output-sensitive: O(C log C + pairs).
template <typename F>
void for_each_interleaving(std::vector<Chord> chords, F&& f) {
  normalize_chords(chords);
  // Chord j crosses an earlier chord i (a_i < a_j) iff b_i is strictly
  // inside (a_j, b_j).
  std::multimap<int, int> open_by_b;  // b -> payload, for chords already begun
  std::size_t k = 0;
  while (k < chords.size()) {
    std::size_t group_end = k;
    while (group_end < chords.size() && chords[group_end].a == chords[k].a) group_end++;
    for (std::size_t j = k; j < group_end; ++j) {
      auto lo = open_by_b.upper_bound(chords[j].a);
      auto hi = open_by_b.lower_bound(chords[j].b);
      for (auto it = lo; it != hi; ++it) f(it->second, chords[j].payload);
    }
    for (std::size_t j = k; j < group_end; ++j)
      open_by_b.emplace(chords[j].b, chords[j].payload);
    k = group_end;
  }
}

// Fenwick-backed count of strictly interleaving pairs. O(C log C).
inline long long count_interleavings(std::vector<Chord> chords) {
  normalize_chords(chords);
  if (chords.empty()) return 0;
  int maxb = 0;
  for (const auto& c : chords) maxb = std::max(maxb, c.b);
  std::vector<int> fen(static_cast<std::size_t>(maxb) + 2, 0);
  auto add = [&](int i) {
    for (i++; i < static_cast<int>(fen.size()); i += i & -i) fen[i]++;
  };
  auto prefix = [&](int i) {  // count of values <= i
    long long s = 0;
    for (i++; i > 0; i -= i & -i) s += fen[i];
    return s;
  };
  long long total = 0;
  std::size_t k = 0;
  while (k < chords.size()) {
    std::size_t group_end = k;
    while (group_end < chords.size() && chords[group_end].a == chords[k].a) group_end++;
    for (std::size_t j = k; j < group_end; ++j)
      total += prefix(chords[j].b - 1) - prefix(chords[j].a);
    for (std::size_t j = k; j < group_end; ++j) add(chords[j].b);
    k = group_end;
  }
  return total;
}

// Reference quadratic count over cyclic positions (no normalization needed);
// used to cross-check the fast paths.
inline long long count_interleavings_quadratic(const std::vector<Chord>& chords) {
  auto interleave = [](const Chord& x, const Chord& y) {
    int a = std::min(x.a, x.b), b = std::max(x.a, x.b);
    auto inside = [&](int p) { return p > a && p < b; };
    if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) return false;
    return inside(y.a) != inside(y.b);
  };
  long long total = 0;
  for (std::size_t i = 0; i < chords.size(); ++i)
    for (std::size_t j = i + 1; j < chords.size(); ++j)
      if (interleave(chords[i], chords[j])) total++;
  return total;
}

}  // namespace crossmin::detail
