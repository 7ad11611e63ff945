#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cartwheel/rules.hpp"
#include "test_util.hpp"

using namespace cartwheel;

namespace {

RuleSpec one(const std::string& line) {
  auto rules = parse_rules(line);
  EXPECT_EQ(rules.size(), 1u);
  return rules.at(0);
}

// The same rule drawn in the mirror: left and right children swap.
RuleSpec mirror_rule(const RuleSpec& r) {
  static constexpr int swap_with[kTemplateSize] = {0, 1, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10, 14, -1, 12, -1, -1};
  RuleSpec m;
  m.line = r.line;
  for (int i = 0; i < kTemplateSize; ++i) {
    if (!r.has(i)) continue;
    if (swap_with[i] < 0) throw std::invalid_argument("rule has no mirror in the template");
    m.bound[swap_with[i]] = r.bound[i];
  }
  return m;
}

// Reflection about spoke 1. Fans run from the hat before their spoke to the
// hat after it, so the fans 2..k-4 of a degree-k spoke reverse: j -> k - 2 - j.
Outlet mirror_outlet(const Outlet& t, int d) {
  auto mod = [d](int x) { return ((x - 1) % d + d) % d + 1; };
  auto spoke_degree = [&](int i) {
    for (const auto& e : t.entries) {
      if (e.position == i) return e.lo;
    }
    throw std::logic_error("fan entry without its spoke");
  };
  Outlet m{t.value, {}};
  for (auto e : t.entries) {
    const int band = (e.position - 1) / d;
    const int i = (e.position - 1) % d + 1;
    if (band == 0) {
      e.position = mod(2 - i);
    } else if (band == 1) {
      e.position = d + mod(1 - i);
    } else {
      e.position = (spoke_degree(i) - 2 - band) * d + mod(2 - i);
    }
    m.entries.push_back(e);
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const OutletEntry& a, const OutletEntry& b) { return a.position < b.position; });
  return m;
}

RuleSpec random_mirrorable_rule(std::mt19937_64& rng) {
  static constexpr int order[] = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14};
  auto pick_bound = [&](bool pinned) {
    static constexpr int his[] = {5, 6, 7, 8, 12};
    if (pinned) {
      const int k = 5 + static_cast<int>(rng() % 4);
      return RuleBound{k, k};
    }
    const int hi = his[rng() % 5];
    const int lo = 5 + static_cast<int>(rng() % (std::min(hi, 9) - 4));
    return RuleBound{lo, hi};
  };
  RuleSpec r;
  r.bound[0] = pick_bound(rng() % 2 == 0);
  r.bound[1] = RuleBound{5, 12};
  if (rng() % 2) r.bound[1] = pick_bound(false);
  for (int i : order) {
    const auto [a, b] = kTemplateParents[i];
    if (r.has(a) && r.has(b) && rng() % 3 != 0) r.bound[i] = pick_bound(rng() % 2 == 0);
  }
  return r;
}

}  // namespace

TEST(Rules, ParseExamples) {
  const auto r = one("rule 5 5 5 12");
  EXPECT_EQ(*r.bound[0], (RuleBound{5, 5}));
  EXPECT_EQ(*r.bound[1], (RuleBound{5, 12}));
  for (int i = 2; i < kTemplateSize; ++i) EXPECT_FALSE(r.has(i));
  EXPECT_TRUE(one("rule 5 5 5 12 2 5 12").has(2));
  EXPECT_THROW(parse_rules("rule 5 5 5 12 8 5 12"), ParseError);
}

TEST(Rules, ParseErrorsCarryLineNumbers) {
  try {
    parse_rules("# header\nrule 5 5 5 12\nrule 5 13 5 12\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_rules("rule 5 5 5 12 2 5 12 2 5 12"), ParseError);
  EXPECT_THROW(parse_rules("rule 5 5 5"), ParseError);
  EXPECT_THROW(parse_rules("rule 5 5 5 12 17 5 12"), ParseError);
  EXPECT_THROW(parse_rules("rules 5 5 5 12"), ParseError);
  EXPECT_THROW(parse_rules("rule 6 5 5 12"), ParseError);
  EXPECT_TRUE(parse_rules("# only a comment\n\n").empty());
}

TEST(Rules, ReconstructedGraphs) {
  auto g = reconstruct_rule_graph(one("rule 5 5 5 12"));
  EXPECT_EQ(g.vertices, (std::vector<int>{0, 1}));
  EXPECT_EQ(g.edges, (std::vector<std::pair<int, int>>{{0, 1}}));
  EXPECT_TRUE(g.triangles.empty());

  g = reconstruct_rule_graph(one("rule 5 5 5 12 2 5 12"));
  EXPECT_EQ(g.triangles, (std::vector<Triangle>{{0, 1, 2}}));
  EXPECT_EQ(g.edges, (std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}}));

  g = reconstruct_rule_graph(one("rule 5 5 5 12 2 5 12 3 5 12"));
  EXPECT_EQ(g.triangles, (std::vector<Triangle>{{0, 1, 2}, {1, 0, 3}}));
}

TEST(Rules, DerivedOutletsAtDegreeSeven) {
  const auto table = derive_outlets(parse_rules("rule 5 5 5 12\nrule 5 12 5 5\n"), 7);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].rule, 0);
  EXPECT_EQ(table[0].kind, OutletKind::Target);
  EXPECT_EQ(table[0].outlet, (Outlet{1, {{1, 5, 5}}}));
  EXPECT_EQ(table[1].rule, 1);
  EXPECT_EQ(table[1].kind, OutletKind::Source);
  EXPECT_EQ(table[1].outlet, (Outlet{-1, {{1, 5, 5}}}));
  EXPECT_EQ(format_outlet_table(table), "outlet 1 T 1 1 5 5\noutlet 2 T' -1 1 5 5\n");
}

TEST(Rules, TemplateChildrenLandClockwise) {
  auto t = embed_rule(one("rule 5 12 5 12 2 5 5 3 6 6"), 7, OutletKind::Target);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Outlet{1, {{2, 5, 5}, {7, 6, 6}}}));
  t = embed_rule(one("rule 5 12 5 12 2 5 5"), 7, OutletKind::Source);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Outlet{-1, {{7, 5, 5}}}));
}

TEST(Rules, UnconstrainedRuleGivesEmptyOutlet) {
  const auto t = embed_rule(one("rule 5 12 5 12 2 5 12 3 5 12"), 9, OutletKind::Target);
  ASSERT_TRUE(t);
  EXPECT_TRUE(t->entries.empty());
  EXPECT_TRUE(enforced(Axle::trivial(9), *t, 4));
}

TEST(Rules, HatsAndFansAroundAPinnedSpoke) {
  // v0 is a degree-7 spoke, so v4 sits on the hat after it and v12 on its
  // outermost fan.
  const auto t = embed_rule(one("rule 7 7 5 12 2 5 12 4 6 6 12 5 5"), 7, OutletKind::Target);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Outlet{1, {{1, 7, 7}, {8, 6, 6}, {22, 5, 5}}}));
  EXPECT_TRUE(validate_outlet(*t, 7).empty());
}

TEST(Rules, EmbeddingFailures) {
  // With spoke 1 unpinned, v4 lands on hat 8 and nothing is known beyond it.
  EXPECT_THROW(embed_rule(one("rule 5 12 5 12 2 5 12 4 5 12 12 5 12"), 7, OutletKind::Target), EmbeddingError);
  try {
    derive_outlets(parse_rules("rule 5 5 5 12\nrule 5 12 5 12 2 5 12 4 5 12 12 5 12\n"), 7);
    FAIL();
  } catch (const EmbeddingError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(Rules, HubBoundSelectsDegrees) {
  const auto rules = parse_rules("rule 7 7 5 12 2 5 12 4 6 6\n");
  EXPECT_EQ(derive_outlets(rules, 7).size(), 2u);
  const auto t8 = derive_outlets(rules, 8);
  ASSERT_EQ(t8.size(), 1u);
  EXPECT_EQ(t8[0].kind, OutletKind::Target);
}

TEST(Rules, GoldenTableMatchesHandDerivation) {
  const auto table = derive_outlets(parse_rules(testutil::read_data("rules_sample.txt")), 7);
  const auto golden = parse_outlet_table(testutil::read_data("outlets_sample_d7.txt"));
  EXPECT_EQ(diff_outlet_tables(table, golden), std::nullopt);
}

TEST(Rules, GoldenTableDiffs) {
  const auto table = derive_outlets(parse_rules(testutil::read_data("rules_sample.txt")), 7);
  auto text = format_outlet_table(table);
  EXPECT_EQ(diff_outlet_tables(table, parse_outlet_table(text)), std::nullopt);

  auto altered = text;
  altered.replace(altered.find("8 6 6"), 5, "8 6 7");
  const auto diff = diff_outlet_tables(table, parse_outlet_table(altered));
  ASSERT_TRUE(diff);
  EXPECT_NE(diff->find("line 3"), std::string::npos) << *diff;

  const auto shorter = text.substr(0, text.rfind("outlet"));
  EXPECT_TRUE(diff_outlet_tables(table, parse_outlet_table(shorter)));
  EXPECT_TRUE(diff_outlet_tables(table, parse_outlet_table(text + "outlet 4 T 1\n")));
  EXPECT_THROW(parse_outlet_table("outlet 1 X 1"), ParseError);
  EXPECT_THROW(parse_outlet_table("outlet 0 T 1"), ParseError);
}

TEST(Rules, DerivationIsDeterministic) {
  const auto rules = parse_rules(testutil::read_data("rules_sample.txt"));
  for (int d = 7; d <= 11; ++d) {
    EXPECT_EQ(format_outlet_table(derive_outlets(rules, d)), format_outlet_table(derive_outlets(rules, d)));
  }
}

TEST(Rules, DerivedOutletsValidateAtEveryDegree) {
  const auto rules = parse_rules(testutil::read_data("rules_sample.txt"));
  for (int d = 7; d <= 11; ++d) {
    for (const auto& row : derive_outlets(rules, d)) EXPECT_TRUE(validate_outlet(row.outlet, d).empty());
  }
}

TEST(Rules, MirrorRuleGivesReflectedOutlet) {
  std::mt19937_64 rng(17);
  int compared = 0;
  for (int k = 0; k < 3000; ++k) {
    const RuleSpec r = random_mirrorable_rule(rng);
    const RuleSpec m = mirror_rule(r);
    for (int d = 7; d <= 11; ++d) {
      for (OutletKind kind : {OutletKind::Target, OutletKind::Source}) {
        std::optional<Outlet> a, b;
        bool a_failed = false, b_failed = false;
        try {
          a = embed_rule(r, d, kind);
        } catch (const EmbeddingError&) {
          a_failed = true;
        }
        try {
          b = embed_rule(m, d, kind);
        } catch (const EmbeddingError&) {
          b_failed = true;
        }
        ASSERT_EQ(a_failed, b_failed);
        ASSERT_EQ(a.has_value(), b.has_value());
        if (a) {
          EXPECT_EQ(*b, mirror_outlet(*a, d)) << "degree " << d << ": " << describe(*a) << " mirrored " << describe(*b);
          ++compared;
        }
      }
    }
  }
  EXPECT_GT(compared, 1000);
}

TEST(Rules, FrameNeighbourhoods) {
  const CartwheelFrame open(7, std::vector<int>(8, 0));
  EXPECT_EQ(open.third(0, 1), 7);
  EXPECT_EQ(open.third(1, 0), 2);
  EXPECT_EQ(open.third(1, 2), 8);
  EXPECT_EQ(open.third(2, 1), 0);
  EXPECT_EQ(open.third(8, 1), 2);
  EXPECT_EQ(open.third(1, 8), std::nullopt);

  std::vector<int> k(8, 0);
  k[1] = 5;
  const CartwheelFrame five(7, k);
  EXPECT_EQ(five.third(1, 8), 14);
  EXPECT_EQ(five.third(14, 1), 8);
  EXPECT_EQ(five.third(8, 14), 1);
  EXPECT_EQ(five.rotation(1).first, (std::vector<int>{0, 2, 8, 14, 7}));
  EXPECT_TRUE(five.rotation(1).second);
}
