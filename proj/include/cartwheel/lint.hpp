#pragma once

// Static checks over input files, without running any disposition.
// Each finding is one human-readable line, prefixed with its line number when
// it has one.

#include <string>
#include <string_view>
#include <vector>

#include "cartwheel/errors.hpp"
#include "cartwheel/hubcap.hpp"
#include "cartwheel/presentation.hpp"
#include "cartwheel/reducibility.hpp"
#include "cartwheel/rules.hpp"

namespace cartwheel {

inline std::vector<std::string> lint_rules(std::string_view text) {
  std::vector<std::string> out;
  std::vector<RuleSpec> rules;
  try {
    rules = parse_rules(text);
  } catch (const ParseError& e) {
    out.push_back(e.what());
    return out;
  }
  for (int d = 7; d <= kMaxDegree; ++d) {
    for (const auto& r : rules) {
      for (OutletKind kind : {OutletKind::Target, OutletKind::Source}) {
        try {
          embed_rule(r, d, kind);
        } catch (const EmbeddingError& e) {
          out.push_back(std::string(e.what()) + " (degree " + std::to_string(d) + ", outlet " + kind_name(kind) + ")");
        }
      }
    }
  }
  return out;
}

inline std::vector<std::string> lint_presentation(std::string_view text) {
  std::vector<std::string> out;
  std::vector<ParseError> issues;
  const Presentation p = parse_presentation(text, &issues);
  for (const auto& e : issues) out.push_back(e.what());
  if (p.degree == 0) return out;
  const int d = p.degree;
  std::vector<int> level_of_line;
  for (const auto& pl : p.lines) {
    const std::string at = "line " + std::to_string(pl.line) + ": ";
    if (const auto* c = std::get_if<Condition>(&pl.payload)) {
      if (!is_condition(*c, d)) {
        out.push_back(at + "(" + std::to_string(c->n) + "," + std::to_string(c->m) + ") is not a condition");
      }
    } else if (const auto* h = std::get_if<Hubcap>(&pl.payload)) {
      Hubcap copy = *h;
      if (auto problem = infer_multiplicities(copy, d)) out.push_back(at + *problem);
    } else if (const auto* s = std::get_if<SymmetryLine>(&pl.payload)) {
      if (s->k < 0 || s->k >= d || (s->epsilon != 0 && s->epsilon != 1)) {
        out.push_back(at + "symmetry needs 0 <= k < d and eps in {0,1}");
      }
      bool found = false;
      for (const auto& earlier : p.lines) {
        if (earlier.line >= pl.line) break;
        found = found || (earlier.line == s->line && earlier.level == s->level && earlier.is_condition());
      }
      if (!found) {
        out.push_back(at + "symmetry refers to line " + std::to_string(s->line) +
                      ", which is not an earlier condition line of level " + std::to_string(s->level));
      }
    }
  }
  return out;
}

inline std::vector<std::string> lint_configurations(std::string_view text) {
  std::vector<std::string> out;
  std::vector<ConfigurationRecord> records;
  try {
    records = parse_configurations(text);
  } catch (const ParseError& e) {
    out.push_back(e.what());
    return out;
  }
  for (auto& r : records) {
    try {
      make_good_configuration(std::move(r.configuration), r.line);
    } catch (const ParseError& e) {
      out.push_back(e.what());
    }
  }
  return out;
}

}  // namespace cartwheel
