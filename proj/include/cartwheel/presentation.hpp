#pragma once

// Presentations: an indented proof script splitting the trivial axle of
// degree d by conditions until every branch is disposed of by a hubcap, a
// reducibility check, or symmetry with an earlier branch.
//
//   degree <d>
//   <level> C <n> <m>            condition
//   <level> R                    reducibility disposition
//   <level> H <x y v>+           hubcap disposition
//   <level> S <k> <eps> <l> <m>  symmetry with the outlet added on line m (level l)
//
// Line numbers are physical file lines, so the first proof line is line 2.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cartwheel/axle.hpp"
#include "cartwheel/errors.hpp"
#include "cartwheel/hubcap.hpp"
#include "cartwheel/outlet.hpp"
#include "cartwheel/reducibility.hpp"
#include "cartwheel/rules.hpp"

namespace cartwheel {

struct ReducibleLine {};

struct SymmetryLine {
  int k = 0;
  int epsilon = 0;
  int level = 0;
  int line = 0;
};

using Payload = std::variant<Condition, ReducibleLine, Hubcap, SymmetryLine>;

struct PresentationLine {
  int line = 0;
  int level = 0;
  Payload payload;

  bool is_condition() const { return std::holds_alternative<Condition>(payload); }
};

struct Presentation {
  int degree = 0;
  std::vector<PresentationLine> lines;
};

// With `issues`, structural problems are collected and parsing continues;
// without it the first problem is thrown.
inline Presentation parse_presentation(std::string_view text, std::vector<ParseError>* issues = nullptr) {
  Presentation out;
  auto report = [&](ParseError e) {
    if (!issues) throw e;
    issues->push_back(std::move(e));
  };
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  bool have_degree = false;
  bool finished = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto words = detail::split_words(detail::strip_comment(raw));
    if (words.empty()) continue;
    try {
      if (!have_degree) {
        if (line != 1 || words.size() != 2 || words[0] != "degree") {
          throw ParseError(line, "first line must be 'degree <d>'");
        }
        out.degree = detail::parse_int(words[1], line);
        if (out.degree < kMinDegree || out.degree > kMaxDegree) {
          throw ParseError(line, "degree " + words[1] + " outside 5..11");
        }
        have_degree = true;
        continue;
      }
      if (finished) report(ParseError(line, "content after the final level-0 disposition"));
      if (words.size() < 2) throw ParseError(line, "expected '<level> <payload>'");
      PresentationLine pl;
      pl.line = line;
      pl.level = detail::parse_int(words[0], line);
      const std::string& tag = words[1];
      auto ints = [&](std::size_t from) {
        std::vector<int> v;
        for (std::size_t k = from; k < words.size(); ++k) v.push_back(detail::parse_int(words[k], line));
        return v;
      };
      const auto args = ints(2);
      if (tag == "C") {
        if (args.size() != 2) throw ParseError(line, "condition needs two integers");
        pl.payload = Condition{args[0], args[1]};
      } else if (tag == "R") {
        if (!args.empty()) throw ParseError(line, "reducibility line takes no arguments");
        pl.payload = ReducibleLine{};
      } else if (tag == "H") {
        if (args.empty() || args.size() % 3 != 0) throw ParseError(line, "hubcap needs triples 'x y v'");
        Hubcap h;
        for (std::size_t k = 0; k < args.size(); k += 3) h.triples.push_back({args[k], args[k + 1], args[k + 2]});
        pl.payload = std::move(h);
      } else if (tag == "S") {
        if (args.size() != 4) throw ParseError(line, "symmetry line needs 'k eps l m'");
        pl.payload = SymmetryLine{args[0], args[1], args[2], args[3]};
      } else {
        throw ParseError(line, "unknown payload '" + tag + "'");
      }

      if (out.lines.empty()) {
        if (pl.level != 0) report(ParseError(line, "the first proof line must have level 0"));
      } else {
        const auto& prev = out.lines.back();
        const int expected = prev.is_condition() ? prev.level + 1 : prev.level - 1;
        if (pl.level != expected) {
          report(ParseError(line, "level " + std::to_string(pl.level) + " where " + std::to_string(expected) +
                                      " is required (consecutive levels differ by exactly 1)"));
        }
      }
      if (!pl.is_condition() && pl.level == 0) finished = true;
      out.lines.push_back(std::move(pl));
    } catch (ParseError& e) {
      if (!issues) throw;
      issues->push_back(e);
      if (!have_degree) return out;
    }
  }
  if (!have_degree) report(ParseError(0, "empty presentation"));
  else if (!finished) report(ParseError(line, "presentation ends before its level-0 disposition"));
  return out;
}

// ---------------------------------------------------------------------------

struct PoolEntry {
  Outlet outlet;
  Axle axle;
  int level = 0;
  int line = 0;
};

// Whether every cartwheel compatible with `a` is compatible with the
// rotated/reflected copy of the fan-free axle `m`.
inline bool symmetric_containment(const Axle& a, const Axle& m, int k, int epsilon) {
  const int d = a.degree();
  for (int j = 1; j <= 2 * d; ++j) {
    const int image = pos_add(epsilon ? reflect_position(j, d) : j, k, d);
    if (m.lo(j) > a.lo(image) || a.hi(image) > m.hi(j)) return false;
  }
  return true;
}

struct PresentationOptions {
  int jobs = 1;
  bool trace = false;
};

struct PresentationResult {
  bool ok = true;
  int line = 0;  // failing line
  std::string message;
  std::vector<Condition> branch;  // conditions leading to the failing line
  std::vector<std::string> trace;
  int hubcaps = 0;
  int reductions = 0;
  int symmetries = 0;
  int conditions = 0;
};

inline PresentationResult run_presentation(const Presentation& pres, const OutletTable& table,
                                           const Database& db, const PresentationOptions& options = {}) {
  const int d = pres.degree;
  PresentationResult out;
  std::vector<Axle> axles{Axle::trivial(d)};
  std::vector<Condition> history{Condition{}};
  std::vector<PoolEntry> pool;
  const Reducer reducer = [&db](const Axle& a) { return reducible(a, db).reducible; };

  auto fail = [&](const PresentationLine& pl, std::string message) {
    out.ok = false;
    out.line = pl.line;
    out.message = std::move(message);
    out.branch.assign(history.begin(), history.begin() + pl.level);
    return out;
  };
  auto record = [&](const PresentationLine& pl, const char* kind, const Axle& a, const std::string& verdict) {
    if (!options.trace) return;
    out.trace.push_back("line " + std::to_string(pl.line) + " level " + std::to_string(pl.level) + " " + kind +
                        " axle=" + axle_digest(a) + " verdict=" + verdict);
  };

  for (const auto& pl : pres.lines) {
    const int l = pl.level;
    CARTWHEEL_CHECK(l + 1 == static_cast<int>(axles.size()));
    const Axle current = axles[l];

    if (const auto* c = std::get_if<Condition>(&pl.payload)) {
      ++out.conditions;
      if (!is_condition(*c, d)) {
        record(pl, "condition", current, "not-a-condition");
        return fail(pl, "(" + std::to_string(c->n) + "," + std::to_string(c->m) + ") is not a condition");
      }
      if (!condition_compatible(current, *c)) {
        record(pl, "condition", current, "incompatible");
        return fail(pl, "condition (" + std::to_string(c->n) + "," + std::to_string(c->m) +
                            ") is not compatible with " + describe(current));
      }
      axles.push_back(wedge(current, *c));
      axles[l] = wedge(current, negate(*c));
      history[l] = *c;
      history.push_back(Condition{});

      Axle branch = Axle::trivial(d);
      for (int i = 0; i <= l; ++i) branch = wedge(branch, history[i]);
      if (is_fan_free(branch)) pool.push_back({outlet_from_axle(branch), branch, l, pl.line});
      record(pl, "condition", current, "split");
      continue;
    }

    std::string kind;
    if (std::holds_alternative<ReducibleLine>(pl.payload)) {
      kind = "reducible";
      ++out.reductions;
      const auto r = reducible(current, db);
      if (!r.reducible) {
        record(pl, "reducible", current, "failed");
        std::string message = "axle is not reducible; failing axle " + describe(*r.failing());
        if (r.trail.size() > 1) {
          message += " reached by lowering positions";
          for (std::size_t k = 1; k < r.trail.size(); ++k) message += " " + std::to_string(r.trail[k].lowered);
        }
        return fail(pl, message);
      }
    } else if (const auto* h = std::get_if<Hubcap>(&pl.payload)) {
      kind = "hubcap";
      ++out.hubcaps;
      Hubcap effective = *h;
      if (auto problem = infer_multiplicities(effective, d)) {
        record(pl, "hubcap", current, "malformed");
        return fail(pl, *problem);
      }
      const auto r = check_hubcap(current, effective, table, reducer, options.jobs);
      if (!r.ok) {
        record(pl, "hubcap", current, "failed");
        return fail(pl, r.message);
      }
    } else {
      const auto& s = std::get<SymmetryLine>(pl.payload);
      kind = "symmetry";
      ++out.symmetries;
      if (s.k < 0 || s.k >= d || (s.epsilon != 0 && s.epsilon != 1)) {
        record(pl, "symmetry", current, "malformed");
        return fail(pl, "symmetry needs 0 <= k < d and eps in {0,1}");
      }
      const PoolEntry* entry = nullptr;
      for (const auto& e : pool) {
        if (e.line == s.line && e.level == s.level) entry = &e;
      }
      if (!entry) {
        record(pl, "symmetry", current, "dangling");
        return fail(pl, "no outlet from line " + std::to_string(s.line) + " at level " + std::to_string(s.level) +
                            " is available");
      }
      const bool holds = symmetric_containment(current, entry->axle, s.k, s.epsilon);
      if (s.epsilon == 0) CARTWHEEL_CHECK(holds == enforced(current, entry->outlet, s.k + 1));
      if (!holds) {
        record(pl, "symmetry", current, "failed");
        return fail(pl, "axle is not contained in the rotated copy of line " + std::to_string(s.line));
      }
    }
    record(pl, kind.c_str(), current, "ok");
    while (!pool.empty() && pool.back().level >= l) pool.pop_back();
    axles.pop_back();
    history.pop_back();
    if (l > 0) history[l - 1] = Condition{};
  }
  CARTWHEEL_CHECK(axles.empty());
  return out;
}

}  // namespace cartwheel
