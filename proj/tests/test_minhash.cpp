/*
 * Copyright 2026 The submine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "submine/minhash.hpp"

namespace submine
{
namespace
{
TEST(MinHash, EmptyPullSetIsSentinel)
{
  auto h = MinHasher::FromRunSeed(1, 4);
  auto key = h.Key({}, 3);
  EXPECT_TRUE(key.IsSentinel());
  EXPECT_EQ(key.sigs.size(), 4u);
  std::vector<VertexId> some{1, 2};
  auto other = h.Key(some, 0);
  EXPECT_FALSE(other.IsSentinel());
  EXPECT_LT(other, key);
}

TEST(MinHash, Deterministic)
{
  std::vector<VertexId> set{4, 8, 15, 16, 23, 42};
  auto a = MinHasher::FromRunSeed(7, 4);
  auto b = MinHasher::FromRunSeed(7, 4);
  EXPECT_EQ(a.Signatures(set), b.Signatures(set));
  EXPECT_EQ(a.Seeds(), b.Seeds());
  std::vector<VertexId> shuffled{42, 23, 16, 15, 8, 4, 4};
  EXPECT_EQ(a.Signatures(set), a.Signatures(shuffled));
  EXPECT_NE(a.Seeds(), MinHasher::FromRunSeed(8, 4).Seeds());
}

TEST(MinHash, KeyOrdering)
{
  TaskKey a{{1, 2}, 5};
  TaskKey b{{1, 3}, 0};
  TaskKey c{{1, 3}, 1};
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
  EXPECT_EQ(a, (TaskKey{{1, 2}, 5}));
}

TEST(MinHash, ConfigErrors)
{
  EXPECT_THROW(MinHasher::FromRunSeed(1, 0), ConfigError);
  EXPECT_THROW(MinHasher{std::vector<std::uint64_t>{}}, ConfigError);
}

// Collision frequency of each signature over many random pairs tracks the
// mean exact Jaccard similarity of those pairs.
TEST(MinHash, CollisionRateTracksJaccard)
{
  std::mt19937_64 rng{99};
  const std::size_t ell = 8;
  auto h = MinHasher::FromRunSeed(12345, ell);
  std::vector<std::size_t> collisions(ell, 0);
  double jaccard_sum = 0.0;
  const int pairs = 1000;
  for (int p = 0; p < pairs; ++p) {
    std::set<VertexId> a;
    std::set<VertexId> b;
    auto universe = 20 + rng() % 200;
    auto na = 1 + rng() % 40;
    auto nb = 1 + rng() % 40;
    while (a.size() < std::min<std::size_t>(na, universe)) a.insert(rng() % universe);
    while (b.size() < std::min<std::size_t>(nb, universe)) b.insert(rng() % universe);
    std::vector<VertexId> inter;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
    auto uni = a.size() + b.size() - inter.size();
    jaccard_sum += static_cast<double>(inter.size()) / static_cast<double>(uni);
    std::vector<VertexId> va{a.begin(), a.end()};
    std::vector<VertexId> vb{b.begin(), b.end()};
    auto sa = h.Signatures(va);
    auto sb = h.Signatures(vb);
    for (std::size_t i = 0; i < ell; ++i) collisions[i] += sa[i] == sb[i] ? 1 : 0;
  }
  const double mean_j = jaccard_sum / pairs;
  for (std::size_t i = 0; i < ell; ++i) {
    EXPECT_NEAR(static_cast<double>(collisions[i]) / pairs, mean_j, 0.05) << "signature " << i;
  }
}

// For a fixed pair, the fraction of colliding signatures over many hash
// functions approximates its Jaccard similarity.
TEST(MinHash, ManySignaturesEstimateOnePair)
{
  auto h = MinHasher::FromRunSeed(5, 2000);
  std::vector<VertexId> a;
  std::vector<VertexId> b;
  for (VertexId v = 0; v < 60; ++v) a.push_back(v);
  for (VertexId v = 30; v < 90; ++v) b.push_back(v);
  auto sa = h.Signatures(a);
  auto sb = h.Signatures(b);
  std::size_t same = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) same += sa[i] == sb[i] ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(same) / 2000.0, 30.0 / 90.0, 0.05);
}

}  // namespace
}  // namespace submine
