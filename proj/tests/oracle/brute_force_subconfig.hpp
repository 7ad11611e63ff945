#pragma once

// Exhaustive reference for finding a configuration inside a skeleton: every
// injective map that keeps gamma, adjacency and non-adjacency, and maps each
// clockwise triangle to a clockwise (or, for mirror images, anticlockwise)
// triangle. Uses only the raw rotation lists.

#include <functional>
#include <stdexcept>
#include <vector>

#include "cartwheel/configuration.hpp"

namespace oracle {

struct SubconfigMatch {
  std::vector<int> image;  // skeleton vertex of each configuration vertex
  bool mirrored = false;
  bool well_positioned = false;
};

// (a, b, c) is a clockwise triangle of g: c directly follows b around a.
inline bool clockwise(const cartwheel::Configuration& g, int a, int b, int c) {
  const auto& r = g.rotation(a);
  const int n = static_cast<int>(r.size());
  for (int j = 0; j < n; ++j) {
    if (r[j].neighbor == b) return !r[j].gap_after && r[(j + 1) % n].neighbor == c && n > 1;
  }
  return false;
}

inline bool linked(const cartwheel::Configuration& g, int a, int b) {
  for (const auto& c : g.rotation(a)) {
    if (c.neighbor == b) return true;
  }
  return false;
}

// Positions are the skeleton's vertex labels; d is the hub degree.
inline bool positioned_well(const cartwheel::Configuration& k, int d, const std::vector<int>& image) {
  std::vector<char> in(5 * d + 1, 0);
  for (int v : image) in[k.label(v)] = 1;
  for (int i = 1; i <= d; ++i) {
    const int before = i == 1 ? 2 * d : d + i - 1;
    const int after = d + i;
    if (!in[i] && in[before] && in[after]) return false;
  }
  return true;
}

inline std::vector<SubconfigMatch> brute_force_subconfig(const cartwheel::Configuration& l,
                                                         const cartwheel::Configuration& k, int d) {
  const int n = l.size();
  if (n > 9) throw std::invalid_argument("brute_force_subconfig: configuration too large");
  // clockwise triangles of l, found from its rotation lists
  std::vector<std::array<int, 3>> tris;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (a != b && b != c && a != c && clockwise(l, a, b, c)) tris.push_back({a, b, c});
      }
    }
  }
  std::vector<SubconfigMatch> out;
  std::vector<int> image(n, -1);
  std::vector<char> used(k.size(), 0);
  std::function<void(int)> extend = [&](int v) {
    if (v == n) {
      for (bool mirrored : {false, true}) {
        bool ok = true;
        for (const auto& t : tris) {
          const int a = image[t[0]], b = image[t[1]], c = image[t[2]];
          ok = ok && (mirrored ? clockwise(k, b, a, c) : clockwise(k, a, b, c));
        }
        if (ok) out.push_back({image, mirrored, positioned_well(k, d, image)});
      }
      return;
    }
    for (int w = 0; w < k.size(); ++w) {
      if (used[w] || k.gamma(w) != l.gamma(v)) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = linked(l, u, v) == linked(k, image[u], w);
      if (!ok) continue;
      used[w] = 1;
      image[v] = w;
      extend(v + 1);
      used[w] = 0;
      image[v] = -1;
    }
  };
  extend(0);
  return out;
}

}  // namespace oracle
