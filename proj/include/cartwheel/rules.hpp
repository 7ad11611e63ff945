#pragma once

// Discharging rules and their outlets.
//
// A rule is given by degree bounds on the vertices v0..v16 of a fixed
// template; v0 = s sends charge to v1 = t and every other vertex is the
// clockwise third vertex of a triangle on two earlier ones. For each hub
// degree d a rule yields up to two outlets: T (value +1, the hub plays t) and
// T' (value -1, the hub plays s). They are obtained by laying the template
// out on the cartwheel around the hub.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cartwheel/axle.hpp"
#include "cartwheel/configuration.hpp"
#include "cartwheel/errors.hpp"
#include "cartwheel/outlet.hpp"

namespace cartwheel {

inline constexpr int kTemplateSize = 17;

// parent[i] = (a, b): v_i = T(v_a, v_b). Rows 0 and 1 are unused.
inline constexpr std::array<std::array<int, 2>, kTemplateSize> kTemplateParents{{
    {-1, -1}, {-1, -1}, {0, 1}, {1, 0}, {0, 2}, {3, 0}, {2, 1}, {1, 3}, {4, 2},
    {3, 5}, {8, 2}, {3, 9}, {0, 4}, {0, 12}, {5, 0}, {6, 1}, {15, 1},
}};

struct RuleBound {
  int beta = 5;
  int delta = 12;
  friend bool operator==(const RuleBound&, const RuleBound&) = default;
};

struct RuleSpec {
  // bound[i] is set exactly for the template vertices present in the rule.
  std::array<std::optional<RuleBound>, kTemplateSize> bound{};
  int line = 0;

  bool has(int i) const { return bound[i].has_value(); }
  friend bool operator==(const RuleSpec& a, const RuleSpec& b) { return a.bound == b.bound; }
};

inline std::vector<RuleSpec> parse_rules(std::string_view text) {
  std::vector<RuleSpec> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) continue;
    if (words[0] != "rule") throw ParseError(line, "expected 'rule', got '" + words[0] + "'");
    if (words.size() < 5 || (words.size() - 5) % 3 != 0) {
      throw ParseError(line, "expected: rule b0 d0 b1 d1 [i bi di]*");
    }
    RuleSpec spec;
    spec.line = line;
    auto bound = [&](std::size_t k) {
      RuleBound b{detail::parse_int(words[k], line), detail::parse_int(words[k + 1], line)};
      if (b.beta < 5 || b.delta > 12 || b.beta > b.delta) {
        throw ParseError(line, "degree bounds [" + words[k] + "," + words[k + 1] + "] outside 5..12");
      }
      return b;
    };
    spec.bound[0] = bound(1);
    spec.bound[1] = bound(3);
    for (std::size_t k = 5; k < words.size(); k += 3) {
      const int i = detail::parse_int(words[k], line);
      if (i < 2 || i >= kTemplateSize) throw ParseError(line, "template index " + words[k] + " outside 2..16");
      if (spec.has(i)) throw ParseError(line, "template index " + words[k] + " listed twice");
      spec.bound[i] = bound(k + 1);
    }
    for (int i = 2; i < kTemplateSize; ++i) {
      if (!spec.has(i)) continue;
      for (int p : kTemplateParents[i]) {
        if (!spec.has(p)) {
          throw ParseError(line, "template vertex " + std::to_string(i) + " needs vertex " + std::to_string(p));
        }
      }
    }
    out.push_back(spec);
  }
  return out;
}

// The rule's plane graph on its present template vertices.
struct RuleGraph {
  std::vector<int> vertices;                 // present template indices, ascending
  std::vector<std::pair<int, int>> edges;    // (a, b) with a < b
  std::vector<Triangle> triangles;           // clockwise (parentA, parentB, child)
  std::array<std::optional<RuleBound>, kTemplateSize> bound{};
};

inline RuleGraph reconstruct_rule_graph(const RuleSpec& spec) {
  RuleGraph g;
  g.bound = spec.bound;
  std::set<std::pair<int, int>> edges{{0, 1}};
  for (int i = 0; i < kTemplateSize; ++i) {
    if (!spec.has(i)) continue;
    g.vertices.push_back(i);
    if (i < 2) continue;
    const auto [a, b] = kTemplateParents[i];
    g.triangles.push_back({a, b, i});
    for (auto [x, y] : {std::pair{a, b}, std::pair{a, i}, std::pair{b, i}}) {
      edges.insert({std::min(x, y), std::max(x, y)});
    }
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

// ---------------------------------------------------------------------------
// Cartwheel frame: the clockwise neighbourhood of each position, as far as it
// is determined by the hub degree and the spoke degrees known so far.

class CartwheelFrame {
 public:
  // spoke_degree[i] for i in 1..d: 5..8 when known, 0 otherwise.
  CartwheelFrame(int d, std::vector<int> spoke_degree) : d_(d), k_(std::move(spoke_degree)) {}

  int degree() const { return d_; }

  // Clockwise third vertex of the triangle on (u, v), if the frame knows it.
  std::optional<int> third(int u, int v) const {
    const auto [list, cyclic] = rotation(u);
    const int n = static_cast<int>(list.size());
    for (int j = 0; j < n; ++j) {
      if (list[j] != v) continue;
      if (j + 1 < n) return list[j + 1];
      if (cyclic) return list[0];
      return std::nullopt;
    }
    return std::nullopt;
  }

  // Clockwise neighbour list of position u; `cyclic` when it closes up.
  std::pair<std::vector<int>, bool> rotation(int u) const {
    const int d = d_;
    if (u == 0) {
      std::vector<int> r{1};
      for (int i = d; i >= 2; --i) r.push_back(i);
      return {r, true};
    }
    switch (band_of(u, d)) {
      case Band::Spoke: {
        const int i = u;
        const int prev = i == 1 ? d : i - 1;
        const int next = i == d ? 1 : i + 1;
        if (known(i)) {
          std::vector<int> r{0, next};
          for (int x : fan_sequence(i)) r.push_back(x);
          r.push_back(prev);
          return {r, true};
        }
        return {{hat_before(i, d), prev, 0, next, hat_after(i, d)}, false};
      }
      case Band::Hat: {
        const int i = u - d;
        const int next = i == d ? 1 : i + 1;
        std::vector<int> r;
        if (known(i)) {
          const auto s = fan_sequence(i);
          r.push_back(s[1]);
        }
        r.push_back(i);
        r.push_back(next);
        if (known(next)) {
          const auto s = fan_sequence(next);
          r.push_back(s[s.size() - 2]);
        }
        return {r, false};
      }
      case Band::Fan: {
        const int i = spoke_of(u, d);
        if (!known(i)) return {{}, false};
        const auto s = fan_sequence(i);
        const int a = static_cast<int>(std::find(s.begin(), s.end(), u) - s.begin());
        if (a <= 0 || a + 1 >= static_cast<int>(s.size())) return {{}, false};
        return {{s[a + 1], i, s[a - 1]}, false};
      }
      case Band::Hub:
        break;
    }
    return {{}, false};
  }

 private:
  bool known(int i) const { return k_[i] >= 5 && k_[i] <= 8; }

  // Clockwise neighbours of spoke i strictly after its successor spoke:
  // hat_after, fans from the outermost in, hat_before.
  std::vector<int> fan_sequence(int i) const {
    std::vector<int> s{hat_after(i, d_)};
    for (int j = k_[i] - 4; j >= 2; --j) s.push_back(j * d_ + i);
    s.push_back(hat_before(i, d_));
    return s;
  }

  int d_;
  std::vector<int> k_;
};

enum class OutletKind { Target, Source };  // T (+1) and T' (-1)

inline const char* kind_name(OutletKind k) { return k == OutletKind::Target ? "T" : "T'"; }

struct OutletRow {
  int rule = 0;  // 0-based index into the rules file
  OutletKind kind = OutletKind::Target;
  Outlet outlet;
  friend bool operator==(const OutletRow&, const OutletRow&) = default;
};

using OutletTable = std::vector<OutletRow>;

class EmbeddingError : public std::runtime_error {
 public:
  EmbeddingError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Lay the rule out with `hub_vertex` (0 or 1) at the hub and the other
// endpoint at spoke 1. Returns nullopt when d is outside the hub vertex's
// bounds; throws EmbeddingError when the rule cannot be placed.
inline std::optional<Outlet> embed_rule(const RuleSpec& spec, int d, OutletKind kind) {
  require_degree(d);
  const int hub_vertex = kind == OutletKind::Target ? 1 : 0;
  const RuleBound hub = *spec.bound[hub_vertex];
  if (d < hub.beta || d > hub.delta) return std::nullopt;

  std::array<int, kTemplateSize> pos;
  pos.fill(-1);
  pos[hub_vertex] = 0;
  pos[1 - hub_vertex] = 1;
  std::vector<int> spoke_degree(d + 1, 0);
  std::vector<int> owner(5 * d + 1, -1);
  owner[0] = hub_vertex;
  owner[1] = 1 - hub_vertex;
  auto note_spoke = [&](int i) {
    const int p = pos[i];
    const RuleBound b = *spec.bound[i];
    if (p >= 1 && p <= d && b.beta == b.delta && b.beta <= 8) spoke_degree[p] = b.beta;
  };
  note_spoke(1 - hub_vertex);

  for (int i = 2; i < kTemplateSize; ++i) {
    if (!spec.has(i)) continue;
    const auto [a, b] = kTemplateParents[i];
    const CartwheelFrame frame(d, spoke_degree);
    const auto w = frame.third(pos[a], pos[b]);
    if (!w) {
      throw EmbeddingError(spec.line, "template vertex " + std::to_string(i) +
                                          " has no position in the cartwheel of degree " + std::to_string(d));
    }
    if (owner[*w] >= 0) {
      throw EmbeddingError(spec.line, "template vertices " + std::to_string(owner[*w]) + " and " +
                                          std::to_string(i) + " share position " + std::to_string(*w));
    }
    pos[i] = *w;
    owner[*w] = i;
    note_spoke(i);
  }

  Outlet t;
  t.value = kind == OutletKind::Target ? 1 : -1;
  for (int p = 1; p <= 5 * d; ++p) {
    const int i = owner[p];
    if (i < 0) continue;
    const RuleBound b = *spec.bound[i];
    if (b.beta == 5 && b.delta == 12) continue;
    t.entries.push_back({p, b.beta, b.delta});
  }
  for (const auto& v : validate_outlet(t, d)) {
    throw EmbeddingError(spec.line, "derived outlet violates " + v.clause + " at position " +
                                        std::to_string(t.entries[std::max(v.entry, 0)].position));
  }
  return t;
}

inline OutletTable derive_outlets(const std::vector<RuleSpec>& rules, int d) {
  OutletTable out;
  for (int r = 0; r < static_cast<int>(rules.size()); ++r) {
    for (OutletKind kind : {OutletKind::Target, OutletKind::Source}) {
      if (auto t = embed_rule(rules[r], d, kind)) out.push_back({r, kind, std::move(*t)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Golden table text: one "outlet <rule> <T|T'> <value> [p lo hi]*" line per
// outlet, rule numbers counted from 1.

inline std::string format_outlet_table(const OutletTable& table) {
  std::string out;
  for (const auto& row : table) {
    out += "outlet " + std::to_string(row.rule + 1) + " " + kind_name(row.kind) + " " +
           std::to_string(row.outlet.value);
    for (const auto& e : row.outlet.entries) {
      out += " " + std::to_string(e.position) + " " + std::to_string(e.lo) + " " + std::to_string(e.hi);
    }
    out += "\n";
  }
  return out;
}

struct GoldenRow {
  OutletRow row;
  int line = 0;
};

inline std::vector<GoldenRow> parse_outlet_table(std::string_view text) {
  std::vector<GoldenRow> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) continue;
    if (words[0] != "outlet" || words.size() < 4 || (words.size() - 4) % 3 != 0) {
      throw ParseError(line, "expected: outlet <rule> <T|T'> <value> [p lo hi]*");
    }
    GoldenRow g;
    g.line = line;
    g.row.rule = detail::parse_int(words[1], line) - 1;
    if (g.row.rule < 0) throw ParseError(line, "rule numbers start at 1");
    if (words[2] == "T") {
      g.row.kind = OutletKind::Target;
    } else if (words[2] == "T'") {
      g.row.kind = OutletKind::Source;
    } else {
      throw ParseError(line, "outlet kind must be T or T'");
    }
    g.row.outlet.value = detail::parse_int(words[3], line);
    for (std::size_t k = 4; k < words.size(); k += 3) {
      g.row.outlet.entries.push_back({detail::parse_int(words[k], line), detail::parse_int(words[k + 1], line),
                                      detail::parse_int(words[k + 2], line)});
    }
    out.push_back(std::move(g));
  }
  return out;
}

// First difference between a derived table and a golden one, as a message.
inline std::optional<std::string> diff_outlet_tables(const OutletTable& derived,
                                                     const std::vector<GoldenRow>& golden) {
  const std::size_t n = std::min(derived.size(), golden.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (!(derived[k] == golden[k].row)) {
      return "line " + std::to_string(golden[k].line) + ": golden outlet differs from derived outlet " +
             std::to_string(k + 1) + " (rule " + std::to_string(derived[k].rule + 1) + " " +
             kind_name(derived[k].kind) + " " + describe(derived[k].outlet) + ")";
    }
  }
  if (derived.size() > n) {
    return "golden table ends after " + std::to_string(n) + " outlets; derived table has " +
           std::to_string(derived.size());
  }
  if (golden.size() > n) {
    return "line " + std::to_string(golden[n].line) + ": golden table has extra outlets";
  }
  return std::nullopt;
}

}  // namespace cartwheel
