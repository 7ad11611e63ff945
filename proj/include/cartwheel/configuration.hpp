#pragma once

// Configurations: plane drawings with degree labels (gamma), stored as a
// rotation system. Each vertex lists its neighbours in clockwise order; a
// "gap" after a neighbour means the infinite region lies between it and the
// next one. A vertex without gaps is interior and every pair of consecutive
// neighbours closes a finite triangle.
//
// Orientation convention: (u, v, w) is a clockwise triangle when w follows v
// in the rotation at u with no gap in between; third(u, v) returns that w.

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cartwheel/errors.hpp"

namespace cartwheel {

struct Corner {
  int neighbor = 0;
  bool gap_after = false;
  friend bool operator==(const Corner&, const Corner&) = default;
};

using Triangle = std::array<int, 3>;

class Configuration {
 public:
  Configuration() = default;

  Configuration(std::string name, std::vector<int> labels, std::vector<int> gamma,
                std::vector<std::vector<Corner>> rotation)
      : name_(std::move(name)),
        labels_(std::move(labels)),
        gamma_(std::move(gamma)),
        rotation_(std::move(rotation)) {
    if (labels_.size() != gamma_.size() || labels_.size() != rotation_.size()) {
      throw std::invalid_argument("configuration: inconsistent vertex arrays");
    }
    const int n = size();
    adjacency_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int v = 0; v < n; ++v) {
      for (const auto& c : rotation_[v]) {
        if (c.neighbor < 0 || c.neighbor >= n) {
          throw std::invalid_argument("configuration: neighbour index out of range");
        }
        adjacency_[static_cast<std::size_t>(v) * n + c.neighbor] = 1;
      }
    }
    for (int v = 0; v < n; ++v) by_label_[labels_[v]] = v;
    if (static_cast<int>(by_label_.size()) != n) {
      throw std::invalid_argument("configuration: duplicate vertex labels");
    }
  }

  // Rebuild a rotation system from its clockwise triangles. Vertices whose
  // triangles do not close up get one gap per maximal chain.
  static Configuration from_triangles(std::string name, std::vector<int> labels,
                                      std::vector<int> gamma, const std::vector<Triangle>& tris) {
    const int n = static_cast<int>(labels.size());
    std::vector<std::map<int, int>> next(n);
    std::set<Triangle> seen;
    for (const auto& t : tris) {
      // canonical rotation so duplicates collapse
      Triangle c = t;
      std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
      if (!seen.insert(c).second) continue;
      for (int k = 0; k < 3; ++k) {
        const int v = c[k], a = c[(k + 1) % 3], b = c[(k + 2) % 3];
        if (!next[v].emplace(a, b).second) {
          throw std::invalid_argument("triangles overlap at a vertex");
        }
      }
    }
    std::vector<std::vector<Corner>> rotation(n);
    for (int v = 0; v < n; ++v) {
      std::set<int> has_pred;
      for (const auto& [a, b] : next[v]) has_pred.insert(b);
      std::set<int> done;
      auto walk = [&](int start, bool cyclic) {
        int cur = start;
        while (true) {
          done.insert(cur);
          auto it = next[v].find(cur);
          if (it == next[v].end()) {
            rotation[v].push_back({cur, true});
            return;
          }
          rotation[v].push_back({cur, false});
          cur = it->second;
          if (cyclic && cur == start) return;
          if (done.count(cur)) throw std::invalid_argument("inconsistent rotation");
        }
      };
      for (const auto& [a, b] : next[v]) {
        if (!has_pred.count(a)) walk(a, false);
      }
      if (done.empty() && !next[v].empty()) walk(next[v].begin()->first, true);
      std::set<int> all(has_pred);
      for (const auto& [a, b] : next[v]) all.insert(a);
      if (done.size() != all.size()) {
        throw std::invalid_argument("vertex rotation splits into a cycle and chains");
      }
    }
    return Configuration(std::move(name), std::move(labels), std::move(gamma), std::move(rotation));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& name() const { return name_; }
  int label(int v) const { return labels_[v]; }
  const std::vector<int>& labels() const { return labels_; }
  int gamma(int v) const { return gamma_[v]; }
  int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
  const std::vector<Corner>& rotation(int v) const { return rotation_[v]; }

  int index_of(int label) const {
    auto it = by_label_.find(label);
    return it == by_label_.end() ? -1 : it->second;
  }

  bool adjacent(int u, int v) const {
    return adjacency_[static_cast<std::size_t>(u) * size() + v] != 0;
  }

  bool is_interior(int v) const {
    const auto& r = rotation_[v];
    return !r.empty() && std::none_of(r.begin(), r.end(), [](const Corner& c) { return c.gap_after; });
  }

  std::optional<int> third(int u, int v) const {
    const auto& r = rotation_[u];
    const int k = static_cast<int>(r.size());
    for (int j = 0; j < k; ++j) {
      if (r[j].neighbor != v) continue;
      if (r[j].gap_after) return std::nullopt;
      return r[(j + 1) % k].neighbor;
    }
    return std::nullopt;
  }

  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    for (const auto& c : rotation_[v]) out.push_back(c.neighbor);
    return out;
  }

  // Finite triangles, each once, rotated so the smallest index comes first.
  std::vector<Triangle> triangles() const {
    std::set<Triangle> out;
    for (int v = 0; v < size(); ++v) {
      const auto& r = rotation_[v];
      const int k = static_cast<int>(r.size());
      for (int j = 0; j < k; ++j) {
        if (r[j].gap_after || k < 2) continue;
        Triangle t{v, r[j].neighbor, r[(j + 1) % k].neighbor};
        std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
        out.insert(t);
      }
    }
    return {out.begin(), out.end()};
  }

  int edge_count() const {
    int twice = 0;
    for (const auto& r : rotation_) twice += static_cast<int>(r.size());
    return twice / 2;
  }

 private:
  std::string name_;
  std::vector<int> labels_;
  std::vector<int> gamma_;
  std::vector<std::vector<Corner>> rotation_;
  std::vector<char> adjacency_;
  std::map<int, int> by_label_;
};

// ---------------------------------------------------------------------------
// Structural checks

inline bool is_connected(const Configuration& c, int removed = -1) {
  const int n = c.size();
  int start = -1, alive = 0;
  for (int v = 0; v < n; ++v) {
    if (v == removed) continue;
    ++alive;
    if (start < 0) start = v;
  }
  if (alive == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& corner : c.rotation(v)) {
      const int w = corner.neighbor;
      if (w == removed || seen[w]) continue;
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == alive;
}

inline std::vector<int> cut_vertices(const Configuration& c) {
  std::vector<int> out;
  if (c.size() < 3) return out;
  for (int v = 0; v < c.size(); ++v) {
    if (!is_connected(c, v)) out.push_back(v);
  }
  return out;
}

// K2 counts as 2-connected; a single vertex does not.
inline bool is_two_connected(const Configuration& c) {
  if (c.size() < 2) return false;
  return is_connected(c) && cut_vertices(c).empty();
}

namespace detail {

inline int position_in_rotation(const Configuration& c, int v, int neighbor) {
  const auto& r = c.rotation(v);
  for (int j = 0; j < static_cast<int>(r.size()); ++j) {
    if (r[j].neighbor == neighbor) return j;
  }
  return -1;
}

}  // namespace detail

// Empty when the drawing is a near-triangulation: symmetric simple adjacency,
// consistent triangles, connected, a single infinite region, and Euler's
// formula. With check_gamma, also gamma >= degree with equality exactly for
// interior vertices (vertices with gamma 0 are unconstrained).
inline std::vector<std::string> near_triangulation_problems(const Configuration& c,
                                                            bool check_gamma = true) {
  std::vector<std::string> out;
  const int n = c.size();
  auto name = [&](int v) { return std::to_string(c.label(v)); };
  for (int v = 0; v < n; ++v) {
    const auto& r = c.rotation(v);
    std::set<int> distinct;
    for (const auto& corner : r) {
      const int w = corner.neighbor;
      if (w == v) out.push_back("vertex " + name(v) + " is its own neighbour");
      if (!distinct.insert(w).second) out.push_back("vertex " + name(v) + " repeats neighbour " + name(w));
      if (w != v && detail::position_in_rotation(c, w, v) < 0) {
        out.push_back("edge " + name(v) + "-" + name(w) + " is not listed at " + name(w));
      }
    }
  }
  if (!out.empty()) return out;

  for (int v = 0; v < n; ++v) {
    const auto& r = c.rotation(v);
    const int k = static_cast<int>(r.size());
    for (int j = 0; j < k; ++j) {
      if (r[j].gap_after) continue;
      const int a = r[j].neighbor, b = r[(j + 1) % k].neighbor;
      if (k < 2 || a == b || !c.adjacent(a, b) || c.third(a, b) != v || c.third(b, v) != a) {
        out.push_back("region at vertex " + name(v) + " between " + name(a) + " and " + name(b) +
                      " is not a triangle");
      }
    }
  }
  if (!out.empty()) return out;

  if (!is_connected(c)) {
    out.push_back("drawing is disconnected");
    return out;
  }

  if (n >= 2) {
    // Face tracing: dart u->v continues as v->w with w clockwise-before u at v.
    std::set<std::pair<int, int>> visited;
    int finite = 0, outer = 0;
    for (int u = 0; u < n; ++u) {
      for (const auto& corner : c.rotation(u)) {
        std::pair<int, int> dart{u, corner.neighbor};
        if (visited.count(dart)) continue;
        int length = 0, gaps = 0;
        auto cur = dart;
        do {
          visited.insert(cur);
          const auto [from, at] = cur;
          const auto& r = c.rotation(at);
          const int k = static_cast<int>(r.size());
          const int j = detail::position_in_rotation(c, at, from);
          const int before = (j - 1 + k) % k;
          if (r[before].gap_after) ++gaps;
          cur = {at, r[before].neighbor};
          ++length;
        } while (cur != dart);
        if (gaps == 0 && length == 3) {
          ++finite;
        } else if (gaps == length) {
          ++outer;
        } else {
          out.push_back("a finite region is not a triangle");
        }
      }
    }
    if (outer != 1) out.push_back("drawing has " + std::to_string(outer) + " infinite regions");
    if (n - c.edge_count() + finite + outer != 2) out.push_back("drawing is not planar");
  }

  if (check_gamma) {
    for (int v = 0; v < n; ++v) {
      if (c.gamma(v) == 0) continue;
      if (c.gamma(v) < c.degree(v)) {
        out.push_back("vertex " + name(v) + " has gamma below its degree");
      } else if (c.is_interior(v) != (c.gamma(v) == c.degree(v))) {
        out.push_back("vertex " + name(v) + (c.is_interior(v) ? " is interior but gamma exceeds its degree"
                                                            : " is on the boundary but gamma equals its degree"));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distances

inline std::vector<int> distances_from(const Configuration& c, int source) {
  std::vector<int> dist(c.size(), -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& corner : c.rotation(v)) {
      if (dist[corner.neighbor] >= 0) continue;
      dist[corner.neighbor] = dist[v] + 1;
      q.push(corner.neighbor);
    }
  }
  return dist;
}

inline std::vector<int> centers(const Configuration& c) {
  std::vector<int> out;
  for (int v = 0; v < c.size(); ++v) {
    const auto dist = distances_from(c, v);
    if (std::all_of(dist.begin(), dist.end(), [](int x) { return x >= 0 && x <= 2; })) out.push_back(v);
  }
  return out;
}

// A vertex within distance two of every vertex, if there is one.
inline std::optional<int> radius_at_most_two(const Configuration& c) {
  const auto cs = centers(c);
  if (cs.empty()) return std::nullopt;
  return cs.front();
}

// ---------------------------------------------------------------------------
// Sub-drawings and the free completion

// The sub-drawing induced by `keep`, in that vertex order. A corner stays
// closed only when its triangle survives.
inline Configuration induced_subdrawing(const Configuration& c, const std::vector<int>& keep,
                                        std::string name = {}) {
  std::vector<int> index(c.size(), -1);
  for (int k = 0; k < static_cast<int>(keep.size()); ++k) index[keep[k]] = k;
  std::vector<int> labels, gamma;
  std::vector<std::vector<Corner>> rotation;
  for (int v : keep) {
    labels.push_back(c.label(v));
    gamma.push_back(c.gamma(v));
    std::vector<int> kept;
    for (const auto& corner : c.rotation(v)) {
      if (index[corner.neighbor] >= 0) kept.push_back(corner.neighbor);
    }
    std::vector<Corner> r;
    const int k = static_cast<int>(kept.size());
    for (int j = 0; j < k; ++j) {
      const int a = kept[j], b = kept[(j + 1) % k];
      const bool closed = k >= 2 && a != b && c.third(v, a) == b;
      r.push_back({index[a], !closed});
    }
    rotation.push_back(std::move(r));
  }
  return Configuration(name.empty() ? c.name() : std::move(name), std::move(labels), std::move(gamma),
                       std::move(rotation));
}

struct OuterStep {
  int vertex = 0;
  int from = 0;  // previous vertex on the boundary walk
  int to = 0;    // next vertex on the boundary walk
};

// Walk around the infinite region, one step per boundary corner.
inline std::vector<OuterStep> outer_walk(const Configuration& c) {
  std::vector<OuterStep> out;
  int start = -1, start_j = -1;
  for (int v = 0; v < c.size() && start < 0; ++v) {
    const auto& r = c.rotation(v);
    for (int j = 0; j < static_cast<int>(r.size()); ++j) {
      if (r[j].gap_after) {
        start = v;
        start_j = j;
        break;
      }
    }
  }
  if (start < 0) return out;
  const auto& r0 = c.rotation(start);
  OuterStep step{start, r0[(start_j + 1) % r0.size()].neighbor, r0[start_j].neighbor};
  const OuterStep first = step;
  do {
    out.push_back(step);
    const int at = step.to;
    const auto& r = c.rotation(at);
    const int k = static_cast<int>(r.size());
    const int j = detail::position_in_rotation(c, at, step.vertex);
    const int before = (j - 1 + k) % k;
    if (!r[before].gap_after) throw std::invalid_argument("boundary walk left the infinite region");
    step = {at, step.vertex, r[before].neighbor};
    if (out.size() > static_cast<std::size_t>(4 * c.edge_count() + 4)) {
      throw std::invalid_argument("boundary walk does not close");
    }
  } while (!(step.vertex == first.vertex && step.from == first.from && step.to == first.to));
  return out;
}

struct Completion {
  Configuration drawing;  // vertices 0..n-1 are the configuration's, then the ring
  int ring_begin = 0;
  int ring_size = 0;
};

// Surround the configuration with a ring so every configuration vertex gets
// exactly gamma neighbours. At a vertex met several times on the boundary
// walk, every visit but the last receives one ring neighbour.
inline Completion free_completion(const Configuration& c) {
  const int n = c.size();
  if (n == 0) throw std::invalid_argument("free completion of an empty configuration");
  int next_label = 0;
  for (int v = 0; v < n; ++v) next_label = std::max(next_label, c.label(v) + 1);

  std::vector<Triangle> tris = c.triangles();
  int ring = 0;
  if (n == 1) {
    ring = c.gamma(0);
    if (ring < 3) throw std::invalid_argument("free completion: ring too short");
    for (int j = 0; j < ring; ++j) tris.push_back({0, 1 + j, 1 + (j + 1) % ring});
  } else {
    const auto walk = outer_walk(c);
    const int m = static_cast<int>(walk.size());
    std::vector<int> visits(n, 0);
    for (const auto& s : walk) ++visits[s.vertex];
    std::vector<int> seen(n, 0);
    std::vector<int> count(m);
    for (int k = 0; k < m; ++k) {
      const int v = walk[k].vertex;
      const int extra = c.gamma(v) - c.degree(v);
      if (extra < visits[v]) {
        throw std::invalid_argument("free completion: vertex " + std::to_string(c.label(v)) +
                                    " has too few missing neighbours");
      }
      ++seen[v];
      count[k] = seen[v] == visits[v] ? extra - (visits[v] - 1) : 1;
    }
    std::vector<int> offset(m + 1, 0);
    for (int k = 0; k < m; ++k) offset[k + 1] = offset[k] + count[k] - 1;
    ring = offset[m];
    if (ring < 3) throw std::invalid_argument("free completion: ring too short");
    auto ring_vertex = [&](int k, int j) { return n + ((offset[k] + count[k] - j) % ring + ring) % ring; };
    for (int k = 0; k < m; ++k) {
      const auto& s = walk[k];
      tris.push_back({s.vertex, s.to, ring_vertex(k, 1)});
      for (int j = 1; j < count[k]; ++j) tris.push_back({s.vertex, ring_vertex(k, j), ring_vertex(k, j + 1)});
      tris.push_back({s.vertex, ring_vertex(k, count[k]), s.from});
    }
  }

  std::vector<int> labels(c.labels()), gamma;
  for (int v = 0; v < n; ++v) gamma.push_back(c.gamma(v));
  for (int j = 0; j < ring; ++j) {
    labels.push_back(next_label + j);
    gamma.push_back(0);
  }
  Completion out{Configuration::from_triangles(c.name(), std::move(labels), std::move(gamma), tris), n, ring};

  auto problems = near_triangulation_problems(out.drawing);
  for (int v = 0; v < n; ++v) {
    if (!out.drawing.is_interior(v) || out.drawing.degree(v) != c.gamma(v)) {
      problems.push_back("vertex " + std::to_string(c.label(v)) + " does not reach its degree");
    }
  }
  for (int r = n; r < n + ring; ++r) {
    int ring_neighbours = 0;
    for (const auto& corner : out.drawing.rotation(r)) ring_neighbours += corner.neighbor >= n;
    if (ring_neighbours != 2 || out.drawing.is_interior(r)) problems.push_back("ring is not a circuit");
  }
  if (!problems.empty()) throw std::invalid_argument("free completion: " + problems.front());
  return out;
}

// ---------------------------------------------------------------------------
// Text format
//
//   config <name> <nVertices>
//   v <id> <gamma> : <clockwise neighbour ids>
//   end
//
// A vertex whose gamma exceeds its listed degree lies on the boundary; the
// infinite region follows its last listed neighbour. A '|' inside the list
// marks a further boundary gap (needed at cut vertices).

namespace detail {

inline std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline int parse_int(const std::string& word, int line) {
  int value = 0;
  const char* first = word.data();
  const char* last = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line, "expected an integer, got '" + word + "'");
  return value;
}

}  // namespace detail

struct ConfigurationRecord {
  Configuration configuration;
  int line = 0;  // line of the "config" header
};

inline std::vector<ConfigurationRecord> parse_configurations(std::string_view text) {
  std::vector<ConfigurationRecord> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;

  struct Pending {
    int id, gamma, line;
    std::vector<int> neighbours;
    std::vector<bool> gap_after;
  };
  bool open = false;
  std::string name;
  int header_line = 0, expected = 0;
  std::vector<Pending> verts;

  auto finish = [&]() {
    if (static_cast<int>(verts.size()) != expected) {
      throw ParseError(header_line, "configuration " + name + " declares " + std::to_string(expected) +
                                        " vertices but lists " + std::to_string(verts.size()));
    }
    std::map<int, int> index;
    for (int k = 0; k < expected; ++k) {
      if (!index.emplace(verts[k].id, k).second) {
        throw ParseError(verts[k].line, "duplicate vertex id " + std::to_string(verts[k].id));
      }
    }
    std::vector<int> labels, gamma;
    std::vector<std::vector<Corner>> rotation;
    for (auto& p : verts) {
      labels.push_back(p.id);
      gamma.push_back(p.gamma);
      std::vector<Corner> r;
      const int deg = static_cast<int>(p.neighbours.size());
      const bool boundary = p.gamma > deg;
      bool any_gap = false;
      for (int j = 0; j < deg; ++j) {
        auto it = index.find(p.neighbours[j]);
        if (it == index.end()) {
          throw ParseError(p.line, "unknown neighbour id " + std::to_string(p.neighbours[j]));
        }
        bool gap = p.gap_after[j] || (boundary && j == deg - 1);
        any_gap = any_gap || gap;
        r.push_back({it->second, gap});
      }
      if (p.gamma < deg) throw ParseError(p.line, "gamma below the vertex's degree");
      if (!boundary && any_gap) throw ParseError(p.line, "interior vertex with a boundary gap");
      rotation.push_back(std::move(r));
    }
    Configuration c(name, std::move(labels), std::move(gamma), std::move(rotation));
    auto problems = near_triangulation_problems(c);
    if (!problems.empty()) throw ParseError(header_line, "configuration " + name + ": " + problems.front());
    out.push_back({std::move(c), header_line});
    verts.clear();
    open = false;
  };

  while (std::getline(in, raw)) {
    ++line;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) continue;
    if (words[0] == "config") {
      if (open) throw ParseError(line, "missing 'end' before new configuration");
      if (words.size() != 3) throw ParseError(line, "expected: config <name> <nVertices>");
      name = words[1];
      expected = detail::parse_int(words[2], line);
      if (expected < 1) throw ParseError(line, "configuration needs at least one vertex");
      header_line = line;
      open = true;
    } else if (words[0] == "v") {
      if (!open) throw ParseError(line, "vertex line outside a configuration");
      if (words.size() < 4 || words[3] != ":") throw ParseError(line, "expected: v <id> <gamma> : <neighbours>");
      Pending p{detail::parse_int(words[1], line), detail::parse_int(words[2], line), line, {}, {}};
      if (p.gamma < 5 || p.gamma > 11) {
        throw ParseError(line, "gamma " + std::to_string(p.gamma) + " outside 5..11");
      }
      for (std::size_t k = 4; k < words.size(); ++k) {
        if (words[k] == "|") {
          if (p.neighbours.empty() || p.gap_after.back()) throw ParseError(line, "misplaced '|'");
          p.gap_after.back() = true;
          continue;
        }
        p.neighbours.push_back(detail::parse_int(words[k], line));
        p.gap_after.push_back(false);
      }
      verts.push_back(std::move(p));
    } else if (words[0] == "end") {
      if (!open) throw ParseError(line, "'end' without a configuration");
      finish();
    } else {
      throw ParseError(line, "unknown record '" + words[0] + "'");
    }
  }
  if (open) throw ParseError(header_line, "configuration " + name + " is missing 'end'");
  return out;
}

}  // namespace cartwheel
