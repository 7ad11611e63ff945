#include <gtest/gtest.h>

#include <set>

#include "oracle/agreement.hpp"

using namespace cartwheel;

namespace {

oracle::PlacedOutlet placed(int value, std::vector<std::array<int, 3>> entries, int x = 1) {
  return {value, std::move(entries), x};
}

Configuration single_vertex(int gamma) {
  return Configuration("one", {1}, {gamma}, {{}});
}

}  // namespace

TEST(Oracle, BoundExamples) {
  const auto omega = Axle::trivial(7);
  EXPECT_EQ(oracle::brute_force_bound(omega, {}, {}), 0);
  EXPECT_EQ(oracle::brute_force_bound(omega, {placed(1, {{1, 5, 5}}), placed(1, {{1, 6, 8}})}, {}), 1);
  EXPECT_EQ(oracle::brute_force_bound(omega, {placed(-1, {})}, {}), -1);
  EXPECT_EQ(oracle::brute_force_bound(omega, {placed(-1, {}), placed(1, {{1, 5, 5}})}, {}), 0);
  EXPECT_EQ(oracle::brute_force_bound(omega, {placed(1, {{1, 5, 5}}, 3)}, [](const Axle& a) { return a.hi(3) == 5; }),
            0);
  EXPECT_EQ(oracle::brute_force_bound(omega, {placed(1, {})}, [](const Axle&) { return true; }), std::nullopt);
  EXPECT_THROW(oracle::brute_force_bound(omega, std::vector<oracle::PlacedOutlet>(21), {}), std::invalid_argument);
}

TEST(Oracle, BandRotation) {
  for (int d = 5; d <= 11; ++d) {
    for (int p = 1; p <= 5 * d; ++p) {
      for (int x = 1; x <= d; ++x) EXPECT_EQ(oracle::rotate_in_band(p, x, d), pos_add(p, x - 1, d));
    }
  }
}

TEST(Oracle, SingleVertexInTrivialSkeleton) {
  const auto k = skeleton_of(Axle::trivial(7));
  const auto all = oracle::brute_force_subconfig(single_vertex(12), k.graph, 7);
  std::set<int> positions;
  int plain = 0;
  for (const auto& m : all) {
    if (m.mirrored) continue;
    ++plain;
    positions.insert(k.position(m.image[0]));
  }
  EXPECT_EQ(plain, 14);
  EXPECT_EQ(positions.size(), 14u);
  EXPECT_EQ(*positions.begin(), 1);
  EXPECT_EQ(*positions.rbegin(), 14);
}

TEST(Oracle, NoTriangleWithoutDegreeSix) {
  const auto k = skeleton_of(Axle::trivial(8));
  const Configuration t = Configuration::from_triangles("t", {1, 2, 3}, {6, 6, 6}, {{0, 1, 2}});
  EXPECT_TRUE(oracle::brute_force_subconfig(t, k.graph, 8).empty());
}

TEST(Oracle, MatchesClosedUnderRotation) {
  const int d = 7;
  const auto k = skeleton_of(Axle::trivial(d));
  // a spoke, the hat after it and the hub
  const Configuration l = induced_subdrawing(k.graph, {k.vertex_at(0), k.vertex_at(1), k.vertex_at(8)}, "l");
  std::set<std::vector<int>> images;
  for (const auto& m : oracle::brute_force_subconfig(l, k.graph, d)) {
    if (m.mirrored) continue;
    std::vector<int> positions;
    for (int v : m.image) positions.push_back(k.position(v));
    images.insert(positions);
  }
  EXPECT_FALSE(images.empty());
  for (const auto& img : images) {
    std::vector<int> turned;
    for (int p : img) turned.push_back(p == 0 ? 0 : pos_add(p, 1, d));
    EXPECT_TRUE(images.count(turned));
  }
}

TEST(Oracle, GeneratorsProduceValidInstances) {
  oracle::Rng rng(99);
  for (int d = 5; d <= 11; ++d) {
    for (int k = 0; k < 200; ++k) {
      EXPECT_TRUE(is_valid_axle(oracle::random_axle(d, rng)));
      EXPECT_TRUE(validate_outlet(oracle::random_outlet(d, rng, 4, 2, 3), d).empty());
    }
  }
}

TEST(Oracle, CheckBoundAgreesOnSmallBattery) {
  oracle::Rng rng(7);
  int escalations = 0;
  for (int d = 5; d <= 11; ++d) {
    for (int k = 0; k < 40; ++k) {
      const auto c = oracle::random_bound_case(d, rng);
      const auto r = oracle::compare_bound(c);
      ASSERT_TRUE(r.mismatch.empty()) << r.mismatch;
      escalations += r.escalations;
    }
  }
  EXPECT_GT(escalations, 0);
}

TEST(Oracle, SemiReducibleAgreesOnSmallBattery) {
  oracle::Rng rng(8);
  int found = 0;
  for (int k = 0; k < 30; ++k) {
    const auto c = oracle::random_subconfig_case(rng);
    const auto r = oracle::compare_subconfig(c);
    ASSERT_TRUE(r.mismatch.empty()) << r.mismatch;
    found += r.found;
  }
  EXPECT_GT(found, 0);
}
