#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "textmark/keyed_rng.hpp"

namespace textmark {
namespace {

// Frozen from tests/oracles/keyed_rng_oracle.py.
TEST(KeyedRng, MatchesReferenceStreams) {
  KeyedStream a(0, 1);
  EXPECT_EQ(a.next(), 0x6EC85F1F8547BC0Cull);
  EXPECT_EQ(a.next(), 0x6CF63AFCC21A470Aull);
  EXPECT_EQ(a.next(), 0x8A27B94CFF7526AAull);
  EXPECT_EQ(a.next(), 0xD13756F65520A1ECull);

  KeyedStream b(0xDEADBEEF, 5);
  EXPECT_EQ(b.next(), 0xAD9CFFB025217ED4ull);
  EXPECT_EQ(b.next(), 0xD4C9224F2C85A762ull);
  EXPECT_EQ(b.next(), 0xA41CB46144B5E24Full);
  EXPECT_EQ(b.next(), 0x8623B4EA5F9BDC26ull);

  KeyedStream c(0xFFFFFFFFFFFFFFFFull, 9);
  EXPECT_EQ(c.next(), 0x906892365D71F1C8ull);
  EXPECT_EQ(c.next(), 0x7C3C5BB337C63B53ull);

  EXPECT_EQ(mix64(0), 0u);
  EXPECT_EQ(mix64(1), 0x5692161D100B05E5ull);
}

TEST(KeyedRng, MatchesReferencePermutations) {
  EXPECT_EQ(keyed_permutation(7, Stream::Interleaver, 10),
            (std::vector<std::uint32_t>{5, 3, 7, 9, 0, 1, 2, 6, 4, 8}));
  EXPECT_EQ(keyed_permutation(12345, Stream::Coefficients, 16),
            (std::vector<std::uint32_t>{9, 11, 3, 1, 5, 4, 8, 14, 6, 13, 15, 12, 0, 10, 7, 2}));
}

TEST(KeyedRng, StreamsAreIndependent) {
  KeyedStream a(1, Stream::Annulus), b(1, Stream::Interleaver);
  int same = 0;
  for (int i = 0; i < 1000; ++i) same += a.next() == b.next();
  EXPECT_EQ(same, 0);
}

TEST(KeyedRng, UniformAndBelowRanges) {
  KeyedStream r(3, 3);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = r.below(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

TEST(KeyedRng, NormalMoments) {
  KeyedStream r(4, 4);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}

TEST(KeyedRng, SampleIsInjectivePrefixOfPermutation) {
  const auto perm = keyed_permutation(11, Stream::Coefficients, 5000);
  const auto sample = keyed_sample(11, Stream::Coefficients, 5000, 1200);
  ASSERT_EQ(sample.size(), 1200u);
  EXPECT_TRUE(std::equal(sample.begin(), sample.end(), perm.begin()));
  EXPECT_EQ(std::set<std::uint32_t>(sample.begin(), sample.end()).size(), sample.size());
}

}  // namespace
}  // namespace textmark
