#pragma once

// Exhaustive reference for the bound procedure: enumerate every admissible
// set of positioned outlets and take the best total. Written without the
// engine's enforced/permitted/wedge helpers.

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cartwheel/axle.hpp"

namespace oracle {

struct PlacedOutlet {
  int value = 1;
  std::vector<std::array<int, 3>> entries;  // (position, lo, hi) before shifting
  int x = 1;
};

// Position p moved x-1 steps along its band, wrapping within the band.
inline int rotate_in_band(int p, int x, int d) {
  const int band = (p - 1) / d;
  const int offset = (p - 1) % d;
  return band * d + (offset + x - 1) % d + 1;
}

struct Intervals {
  std::vector<int> lo, hi;
};

inline Intervals intervals_of(const cartwheel::Axle& a) {
  Intervals out;
  for (int i = 0; i <= a.positions(); ++i) {
    out.lo.push_back(a.lo(i));
    out.hi.push_back(a.hi(i));
  }
  return out;
}

inline bool contains(const Intervals& a, const PlacedOutlet& t, int d) {
  for (const auto& e : t.entries) {
    const int p = rotate_in_band(e[0], t.x, d);
    if (!(e[1] <= a.lo[p] && a.hi[p] <= e[2])) return false;
  }
  return true;
}

inline bool overlaps(const Intervals& a, const PlacedOutlet& t, int d) {
  for (const auto& e : t.entries) {
    const int p = rotate_in_band(e[0], t.x, d);
    if (e[2] < a.lo[p] || a.hi[p] < e[1]) return false;
  }
  return true;
}

// Max over admissible S of the total value enforced after intersecting A with
// every member of S. Sets whose intersection is reducible are skipped;
// nullopt when all of them are.
inline std::optional<int> brute_force_bound(const cartwheel::Axle& a, const std::vector<PlacedOutlet>& list,
                                            const std::function<bool(const cartwheel::Axle&)>& reducible) {
  const int n = static_cast<int>(list.size());
  if (n > 20) throw std::invalid_argument("brute_force_bound: too many outlets");
  const int d = a.degree();
  const Intervals base = intervals_of(a);
  std::vector<char> forced(n), allowed(n);
  for (int i = 0; i < n; ++i) {
    forced[i] = contains(base, list[i], d);
    allowed[i] = overlaps(base, list[i], d);
  }
  std::optional<int> best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const bool in = (mask >> i) & 1u;
      if (forced[i] && !in) ok = false;
      if (in && !allowed[i]) ok = false;
      if (in && !forced[i] && list[i].value <= 0) ok = false;
    }
    if (!ok) continue;
    Intervals cur = base;
    for (int i = 0; i < n && ok; ++i) {
      if (!((mask >> i) & 1u)) continue;
      for (const auto& e : list[i].entries) {
        const int p = rotate_in_band(e[0], list[i].x, d);
        if (e[1] > cur.lo[p]) cur.lo[p] = e[1];
        if (e[2] < cur.hi[p]) cur.hi[p] = e[2];
        if (cur.lo[p] > cur.hi[p]) ok = false;
      }
    }
    if (!ok) continue;
    auto wedged = cartwheel::Axle::trivial(d);
    for (int i = 1; i <= 5 * d; ++i) wedged.set(i, {cur.lo[i], cur.hi[i]});
    if (reducible && reducible(wedged)) continue;
    int total = 0;
    for (int j = 0; j < n; ++j) {
      if (contains(cur, list[j], d)) total += list[j].value;
    }
    if (!best || total > *best) best = total;
  }
  return best;
}

}  // namespace oracle
