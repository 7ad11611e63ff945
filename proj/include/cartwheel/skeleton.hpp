#pragma once

// The skeleton of an axle: the cartwheel drawing the axle pins down, with
// every vertex labelled by its position and carrying its upper bound as gamma.
// Spokes whose upper bound is at most 8 are treated as fixed at that bound;
// they become interior vertices surrounded by their fans.

#include <vector>

#include "cartwheel/axle.hpp"
#include "cartwheel/configuration.hpp"
#include "cartwheel/rules.hpp"

namespace cartwheel {

struct Skeleton {
  Axle pinned;  // the axle with low spokes fixed at their upper bound
  Configuration graph;

  int degree() const { return pinned.degree(); }
  int position(int v) const { return graph.label(v); }
  int vertex_at(int position) const { return graph.index_of(position); }
};

inline Axle pin_low_spokes(const Axle& a) {
  Axle b = a;
  for (int i = 1; i <= a.degree(); ++i) {
    if (a.hi(i) <= 8) b.set(i, {a.hi(i), a.hi(i)});
  }
  return b;
}

inline Skeleton skeleton_of(const Axle& a) {
  const int d = a.degree();
  Axle b = pin_low_spokes(a);
  std::vector<int> spoke_degree(d + 1, 0);
  for (int i = 1; i <= d; ++i) {
    if (b.lo(i) == b.hi(i)) spoke_degree[i] = b.hi(i);
  }
  const CartwheelFrame frame(d, spoke_degree);

  std::vector<int> positions;
  for (int p = 0; p <= 2 * d; ++p) positions.push_back(p);
  for (int j = 2; j <= 4; ++j) {
    for (int i = 1; i <= d; ++i) {
      if (spoke_degree[i] >= j + 4) positions.push_back(j * d + i);
    }
  }
  std::vector<int> index(5 * d + 1, -1);
  for (int k = 0; k < static_cast<int>(positions.size()); ++k) index[positions[k]] = k;

  std::vector<int> gamma;
  std::vector<std::vector<Corner>> rotation;
  for (int p : positions) {
    gamma.push_back(b.hi(p));
    const auto [list, cyclic] = frame.rotation(p);
    std::vector<Corner> r;
    for (std::size_t j = 0; j < list.size(); ++j) {
      CARTWHEEL_CHECK(index[list[j]] >= 0);
      r.push_back({index[list[j]], !cyclic && j + 1 == list.size()});
    }
    rotation.push_back(std::move(r));
  }
  Skeleton s{b, Configuration("skeleton", positions, std::move(gamma), std::move(rotation))};
  CARTWHEEL_CHECK(near_triangulation_problems(s.graph).empty());
  CARTWHEEL_CHECK(s.graph.degree(0) == d && s.graph.is_interior(0));
  return s;
}

// For every spoke outside the image, at least one of its two hats is outside
// the image too. `image` lists skeleton vertices.
inline bool well_positioned(const Skeleton& k, const std::vector<int>& image) {
  const int d = k.degree();
  std::vector<char> hit(5 * d + 1, 0);
  for (int v : image) hit[k.position(v)] = 1;
  for (int i = 1; i <= d; ++i) {
    if (hit[i]) continue;
    if (hit[hat_before(i, d)] && hit[hat_after(i, d)]) return false;
  }
  return true;
}

}  // namespace cartwheel
