#pragma once

// Questions: a search plan for finding a good configuration inside a
// skeleton. The configuration is first enhanced to a 2-connected drawing J;
// a question then orders the vertices of J so that each one after the first
// two closes a clockwise triangle on two earlier ones. Answering it in a
// skeleton is a deterministic walk along the skeleton's rotation system.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cartwheel/configuration.hpp"
#include "cartwheel/errors.hpp"
#include "cartwheel/skeleton.hpp"

namespace cartwheel {

// The enhancement keeps the configuration's vertices at indices 0..n-1 and,
// when needed, appends one ring vertex (gamma 0) at index n.
inline Configuration enhance(const Configuration& l) {
  const int n = l.size();
  if (n >= 2 && is_two_connected(l)) return l;
  const auto cuts = cut_vertices(l);
  if (cuts.size() > 1) throw std::invalid_argument("configuration " + l.name() + " has several cut vertices");
  const Completion l0 = free_completion(l);
  const Configuration& g = l0.drawing;
  int ring_vertex = -1;
  if (n == 1) {
    ring_vertex = g.rotation(0).front().neighbor;
  } else {
    const int v = cuts.front();
    // components of L - v
    std::vector<int> comp(n, -1);
    int count = 0;
    for (int s = 0; s < n; ++s) {
      if (s == v || comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = count;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (const auto& c : l.rotation(x)) {
          if (c.neighbor == v || comp[c.neighbor] >= 0) continue;
          comp[c.neighbor] = count;
          stack.push_back(c.neighbor);
        }
      }
      ++count;
    }
    for (const auto& c : g.rotation(v)) {
      const int r = c.neighbor;
      if (r < n) continue;
      std::vector<char> touched(count, 0);
      for (const auto& e : g.rotation(r)) {
        if (e.neighbor < n && e.neighbor != v) touched[comp[e.neighbor]] = 1;
      }
      if (std::all_of(touched.begin(), touched.end(), [](char t) { return t != 0; })) {
        ring_vertex = r;
        break;
      }
    }
    if (ring_vertex < 0) {
      throw std::invalid_argument("configuration " + l.name() + ": no ring vertex joins the pieces at the cut vertex");
    }
  }
  std::vector<int> keep;
  for (int v = 0; v < n; ++v) keep.push_back(v);
  keep.push_back(ring_vertex);
  Configuration j = induced_subdrawing(g, keep);
  const auto problems = near_triangulation_problems(j, false);
  if (!problems.empty() || !is_two_connected(j)) {
    throw std::invalid_argument("configuration " + l.name() + ": enhancement is not a 2-connected near-triangulation");
  }
  return j;
}

struct Query {
  int u = -1;
  int v = -1;
  int z = 0;
  int xi = 0;  // required gamma of z's image; 0 means unconstrained
  friend bool operator==(const Query&, const Query&) = default;
};

struct Question {
  std::vector<Query> queries;
  bool reflected = false;
  friend bool operator==(const Question&, const Question&) = default;
};

// A clockwise triangle (u, v, z) of j through z, with u and v accepted by the filter.
inline std::optional<std::pair<int, int>> triangle_at(const Configuration& j, int z,
                                                     const std::function<bool(int)>& ok) {
  const auto& r = j.rotation(z);
  const int k = static_cast<int>(r.size());
  for (int a = 0; a < k; ++a) {
    if (r[a].gap_after || k < 2) continue;
    const int u = r[a].neighbor, v = r[(a + 1) % k].neighbor;
    if (ok(u) && ok(v)) return std::pair{u, v};
  }
  return std::nullopt;
}

// `l_size` is the number of configuration vertices; later vertices of j are
// enhancement vertices with xi = 0.
inline Question make_question(const Configuration& l, const Configuration& j) {
  const int n = j.size();
  auto xi = [&](int v) { return v < l.size() ? l.gamma(v) : 0; };

  const auto cs = centers(l);
  if (cs.empty()) throw std::invalid_argument("configuration " + l.name() + " has radius above two");
  int z0 = cs.front();
  for (int c : cs) {
    if (l.gamma(c) > l.gamma(z0)) z0 = c;
  }
  int z1 = -1;
  for (const auto& c : j.rotation(z0)) {
    if (z1 < 0 || xi(c.neighbor) > xi(z1) || (xi(c.neighbor) == xi(z1) && c.neighbor < z1)) z1 = c.neighbor;
  }
  if (z1 < 0) throw std::invalid_argument("configuration " + l.name() + ": enhancement has an isolated vertex");

  auto anything = [](int) { return true; };
  Question q;
  auto first = [&](int z) {
    const auto t = triangle_at(j, z, anything);
    q.queries.push_back({t ? t->first : -1, t ? t->second : -1, z, xi(z)});
  };
  first(z0);
  first(z1);

  std::vector<char> visited(n, 0);
  visited[z0] = visited[z1] = 1;
  auto seen = [&](int v) { return visited[v] != 0; };
  for (int step = 2; step < n; ++step) {
    int best = -1;
    std::pair<int, int> best_uv;
    for (int z = 0; z < n; ++z) {
      if (visited[z]) continue;
      if (best >= 0 && xi(z) <= xi(best)) continue;
      if (auto t = triangle_at(j, z, seen)) {
        best = z;
        best_uv = *t;
      }
    }
    if (best < 0) throw std::invalid_argument("configuration " + l.name() + ": question cannot cover every vertex");
    visited[best] = 1;
    q.queries.push_back({best_uv.first, best_uv.second, best, xi(best)});
  }
  return q;
}

inline Question reflect_question(const Question& q) {
  Question out = q;
  for (std::size_t i = 2; i < out.queries.size(); ++i) std::swap(out.queries[i].u, out.queries[i].v);
  out.reflected = !q.reflected;
  return out;
}

// Image of every question vertex (indexed like j). A mirrored embedding maps
// clockwise triangles of the configuration to counter-clockwise ones.
struct Embedding {
  std::vector<int> image;
  bool mirrored = false;
};

// Calls `visit` on every positive answer in a fixed order until it returns
// true. Returns whether some call returned true.
inline bool for_each_positive_answer(const Question& q, const Configuration& k,
                                     const std::function<bool(const Embedding&)>& visit) {
  const auto& qs = q.queries;
  if (qs.size() < 2) throw std::invalid_argument("question needs at least two queries");
  int n = 0;
  for (const auto& query : qs) n = std::max(n, query.z + 1);
  auto fits = [&](const Query& query, int w) { return query.xi == 0 || k.gamma(w) == query.xi; };

  Embedding f;
  f.mirrored = q.reflected;
  f.image.assign(n, -1);
  std::vector<char> used(k.size(), 0);
  for (int a = 0; a < k.size(); ++a) {
    if (!fits(qs[0], a)) continue;
    for (const auto& corner : k.rotation(a)) {
      const int b = corner.neighbor;
      if (!fits(qs[1], b)) continue;
      std::fill(used.begin(), used.end(), 0);
      f.image[qs[0].z] = a;
      f.image[qs[1].z] = b;
      used[a] = used[b] = 1;
      bool ok = true;
      for (std::size_t i = 2; i < qs.size() && ok; ++i) {
        const auto w = k.third(f.image[qs[i].u], f.image[qs[i].v]);
        ok = w && !used[*w] && fits(qs[i], *w);
        if (ok) {
          f.image[qs[i].z] = *w;
          used[*w] = 1;
        }
      }
      if (ok && visit(f)) return true;
    }
  }
  return false;
}

inline std::optional<Embedding> find_positive_answer(const Question& q, const Configuration& k) {
  std::optional<Embedding> out;
  for_each_positive_answer(q, k, [&](const Embedding& f) {
    out = f;
    return true;
  });
  return out;
}

// Independent check that the first l.size() entries of the image give an
// isomorphism of l onto an induced subconfiguration of k (a mirror image when
// f.mirrored is set).
inline bool check_iso(const Embedding& f, const Configuration& l, const Configuration& k) {
  const int n = l.size();
  if (static_cast<int>(f.image.size()) < n) return false;
  std::vector<int> seen;
  for (int v = 0; v < n; ++v) {
    const int w = f.image[v];
    if (w < 0 || w >= k.size()) return false;
    seen.push_back(w);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (int v = 0; v < n; ++v) {
    if (l.gamma(v) != k.gamma(f.image[v])) return false;
    for (int u = 0; u < n; ++u) {
      if (u != v && l.adjacent(u, v) != k.adjacent(f.image[u], f.image[v])) return false;
    }
  }
  for (const auto& t : l.triangles()) {
    const int a = f.image[t[0]], b = f.image[t[1]], c = f.image[t[2]];
    const auto w = f.mirrored ? k.third(b, a) : k.third(a, b);
    if (w != c) return false;
  }
  return true;
}

}  // namespace cartwheel
