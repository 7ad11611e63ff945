#pragma once

// Reducibility of axles against a database of good configurations.
//
// An axle is semi-reducible when some good configuration sits in its skeleton
// as a well-positioned induced subconfiguration. The reducibility test keeps
// a stack of axles; each semi-reducible axle spawns one child per matched
// vertex whose degree is not yet fixed, with that vertex's upper bound
// lowered by one.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartwheel/axle.hpp"
#include "cartwheel/configuration.hpp"
#include "cartwheel/errors.hpp"
#include "cartwheel/question.hpp"
#include "cartwheel/skeleton.hpp"

namespace cartwheel {

struct GoodConfiguration {
  Configuration configuration;
  Configuration enhancement;
  Question question;
  Question reflected;
  int line = 0;

  const std::string& name() const { return configuration.name(); }
};

inline GoodConfiguration make_good_configuration(Configuration l, int line = 0) {
  for (int v = 0; v < l.size(); ++v) {
    if (l.gamma(v) < 5 || l.gamma(v) > 11) {
      throw ParseError(line, "configuration " + l.name() + ": gamma outside 5..11");
    }
  }
  if (!radius_at_most_two(l)) throw ParseError(line, "configuration " + l.name() + " has radius above two");
  try {
    Configuration j = enhance(l);
    Question q = make_question(l, j);
    Question r = reflect_question(q);
    return {std::move(l), std::move(j), std::move(q), std::move(r), line};
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

using Database = std::vector<GoodConfiguration>;

inline Database load_database(std::string_view text) {
  Database db;
  for (auto& record : parse_configurations(text)) {
    db.push_back(make_good_configuration(std::move(record.configuration), record.line));
  }
  return db;
}

struct Match {
  const GoodConfiguration* configuration = nullptr;
  Embedding embedding;

  // Skeleton vertices hit by the configuration itself (not the enhancement).
  std::vector<int> image() const {
    return {embedding.image.begin(), embedding.image.begin() + configuration->configuration.size()};
  }
};

// First configuration in database order with a well-positioned answer to its
// question or the reflected question.
inline std::optional<Match> semi_reducible(const Skeleton& k, const Database& db) {
  for (const auto& good : db) {
    for (const Question* q : {&good.question, &good.reflected}) {
      std::optional<Match> found;
      for_each_positive_answer(*q, k.graph, [&](const Embedding& f) {
        Match m{&good, f};
        if (!well_positioned(k, m.image())) return false;
        if (!check_iso(f, good.configuration, k.graph)) {
          throw InternalError("configuration " + good.name() +
                              ": positive answer is not an induced subconfiguration");
        }
        found = std::move(m);
        return true;
      });
      if (found) return found;
    }
  }
  return std::nullopt;
}

inline std::optional<Match> semi_reducible(const Axle& a, const Database& db) {
  return semi_reducible(skeleton_of(a), db);
}

struct ReductionStep {
  Axle axle;
  std::string configuration;  // empty when the axle was not semi-reducible
  int lowered = -1;           // position whose upper bound was lowered to reach it, -1 at the root
};

struct ReductionResult {
  bool reducible = true;
  std::vector<ReductionStep> visited;  // every popped axle, in pop order
  std::vector<ReductionStep> trail;    // root to the failing axle, when not reducible

  std::optional<Axle> failing() const {
    if (reducible) return std::nullopt;
    return trail.back().axle;
  }
};

inline ReductionResult reducible(const Axle& a, const Database& db) {
  struct Node {
    ReductionStep step;
    int parent;
  };
  std::vector<Node> nodes{{{a, {}, -1}, -1}};
  std::vector<int> stack{0};
  ReductionResult out;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const Axle b = nodes[id].step.axle;
    const auto match = semi_reducible(b, db);
    if (match) nodes[id].step.configuration = match->configuration->name();
    out.visited.push_back(nodes[id].step);
    if (!match) {
      out.reducible = false;
      for (int n = id; n >= 0; n = nodes[n].parent) out.trail.push_back(nodes[n].step);
      std::reverse(out.trail.begin(), out.trail.end());
      return out;
    }
    const Skeleton k = skeleton_of(b);
    std::vector<int> positions;
    for (int v : match->image()) positions.push_back(k.position(v));
    std::sort(positions.begin(), positions.end());
    for (int p : positions) {
      if (p == 0 || b.lo(p) >= b.hi(p)) continue;
      Axle child = b.with(p, {b.lo(p), b.hi(p) - 1});
      CARTWHEEL_CHECK(is_valid_axle(child));
      nodes.push_back({{child, {}, p}, id});
      stack.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  return out;
}

}  // namespace cartwheel
