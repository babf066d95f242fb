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

#include <sstream>

#include "submine/apps/dense_graph.hpp"
#include "submine/apps/gmatch.hpp"
#include "submine/apps/max_clique.hpp"
#include "submine/apps/maximal_cliques.hpp"
#include "submine/apps/quasi_clique.hpp"
#include "submine/apps/triangle.hpp"
#include "submine/generators.hpp"
#include "support.hpp"

namespace submine
{
namespace
{
using support::AsMultiset;
using support::ResultSets;

EngineConfig
Config(std::uint32_t workers, QueueKind kind = QueueKind::kLsh)
{
  EngineConfig cfg;
  cfg.num_workers = workers;
  cfg.queue_kind = kind;
  cfg.buffer_capacity = 16;
  cfg.file_capacity = 8;
  cfg.cache_capacity = 200;
  return cfg;
}

std::vector<Vertex>
Path(std::size_t n)
{
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return gen::FromEdges(gen::Range(1, n), edges);
}

std::vector<Vertex>
TwoK4WithBridge()
{
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId a = 1; a <= 4; ++a) {
    for (VertexId b = a + 1; b <= 4; ++b) {
      edges.emplace_back(a, b);
      edges.emplace_back(a + 4, b + 4);
    }
  }
  edges.emplace_back(4, 5);
  return gen::FromEdges(gen::Range(1, 8), edges);
}

/*--------------------------------------------------------------------------------------
 * Triangles
 *------------------------------------------------------------------------------------*/

TEST(Triangle, SmallGraphs)
{
  EXPECT_EQ(RunJob(gen::Complete(3), apps::TriangleApp{}, Config(2)).aggregate, 1u);
  EXPECT_EQ(RunJob(gen::Complete(4), apps::TriangleApp{}, Config(2)).aggregate, 4u);
  EXPECT_EQ(RunJob(Path(4), apps::TriangleApp{}, Config(2)).aggregate, 0u);
}

TEST(Triangle, MatchesOracleWithAndWithoutPruning)
{
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = gen::Gnp(100, 0.1, seed);
    auto expected = oracle::TriCountBf(g);
    for (bool prune : {true, false}) {
      auto r = RunJob(g, apps::TriangleApp{apps::TriangleOptions{prune, true}}, Config(4));
      EXPECT_EQ(r.aggregate, expected) << "seed " << seed;
      EXPECT_EQ(ResultSets(r.results), AsMultiset(oracle::TrianglesBf(g)));
      for (const auto &e : r.results) EXPECT_EQ(support::ParseIds(e.line).front(), e.seed);
    }
  }
}

TEST(Triangle, PrunedResponsesAreSmaller)
{
  auto g = gen::Gnp(100, 0.2, 3);
  auto pruned = RunJob(g, apps::TriangleApp{apps::TriangleOptions{true, false}}, Config(4));
  auto full = RunJob(g, apps::TriangleApp{apps::TriangleOptions{false, false}}, Config(4));
  EXPECT_EQ(pruned.aggregate, full.aggregate);
  EXPECT_LT(pruned.transport.bytes, full.transport.bytes);
}

/*--------------------------------------------------------------------------------------
 * Maximum clique
 *------------------------------------------------------------------------------------*/

TEST(MaxClique, SmallGraphs)
{
  auto k5 = RunJob(gen::Complete(5), apps::MaxCliqueApp{}, Config(3));
  EXPECT_EQ(k5.aggregate.size, 5u);
  EXPECT_EQ(k5.aggregate.witness, (std::vector<VertexId>{1, 2, 3, 4, 5}));
  auto two = RunJob(TwoK4WithBridge(), apps::MaxCliqueApp{}, Config(3));
  EXPECT_EQ(two.aggregate.size, 4u);
  EXPECT_EQ(two.aggregate.witness, (std::vector<VertexId>{1, 2, 3, 4}));
}

TEST(MaxClique, MatchesOracleUnderAllSyncPolicies)
{
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = gen::Gnp(50, 0.3, seed);
    auto expected = support::SmallestMaximumClique(g);
    for (auto sync : {SyncPolicy::Off(), SyncPolicy::EveryRounds(1), SyncPolicy::EveryRounds(10),
                      SyncPolicy::EveryMillis(0)}) {
      for (bool prune : {true, false}) {
        auto cfg = Config(4);
        cfg.sync = sync;
        cfg.buffer_capacity = 4;
        auto r = RunJob(g, apps::MaxCliqueApp{apps::MaxCliqueOptions{prune}}, cfg);
        EXPECT_EQ(r.aggregate.size, expected.size()) << "seed " << seed;
        EXPECT_EQ(r.aggregate.witness, expected) << "seed " << seed;
        EXPECT_TRUE(oracle::IsClique(g, r.aggregate.witness));
      }
    }
  }
}

TEST(MaxClique, QmaxOfferIsDeterministic)
{
  apps::QmaxValue a{3, {2, 5, 9}};
  a.Offer({3, {1, 7, 8}});
  EXPECT_EQ(a.witness, (std::vector<VertexId>{1, 7, 8}));
  a.Offer({3, {4, 5, 6}});
  EXPECT_EQ(a.witness, (std::vector<VertexId>{1, 7, 8}));
  a.Offer({4, {9, 10, 11, 12}});
  EXPECT_EQ(a.size, 4u);
  a.Offer({0, {}});
  EXPECT_EQ(a.size, 4u);
}

/*--------------------------------------------------------------------------------------
 * Maximal cliques
 *------------------------------------------------------------------------------------*/

TEST(MaximalCliques, SmallGraphs)
{
  auto k4 = RunJob(gen::Complete(4), apps::MaximalCliquesApp{}, Config(2));
  ASSERT_EQ(k4.results.size(), 1u);
  EXPECT_EQ(k4.results[0].line, "1 2 3 4");
  EXPECT_EQ(k4.results[0].seed, 1u);

  auto pendant = RunJob(gen::FromEdges({1, 2, 3, 4}, {{1, 2}, {1, 3}, {2, 3}, {3, 4}}),
                        apps::MaximalCliquesApp{}, Config(2));
  std::multiset<std::vector<VertexId>> expected{{1, 2, 3}, {3, 4}};
  EXPECT_EQ(ResultSets(pendant.results), expected);
  EXPECT_EQ(pendant.aggregate, 2u);
}

TEST(MaximalCliques, IsolatedVerticesAreCliques)
{
  auto r = RunJob(gen::FromEdges({1, 2, 3}, {{1, 2}}), apps::MaximalCliquesApp{}, Config(2));
  std::multiset<std::vector<VertexId>> expected{{1, 2}, {3}};
  EXPECT_EQ(ResultSets(r.results), expected);
  EXPECT_EQ(AsMultiset(oracle::MaximalCliquesBf(gen::FromEdges({1, 2, 3}, {{1, 2}}))), expected);
}

TEST(MaximalCliques, MatchesOracle)
{
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto g = gen::Gnp(40, 0.25, seed);
    auto r = RunJob(g, apps::MaximalCliquesApp{}, Config(3));
    EXPECT_EQ(ResultSets(r.results), AsMultiset(oracle::MaximalCliquesBf(g))) << "seed " << seed;
    for (const auto &e : r.results) EXPECT_EQ(support::ParseIds(e.line).front(), e.seed);
  }
}

/*--------------------------------------------------------------------------------------
 * Quasi-cliques
 *------------------------------------------------------------------------------------*/

TEST(QuasiClique, SmallGraphs)
{
  auto k4 = RunJob(gen::Complete(4), apps::QuasiCliqueApp{{0.8, 4}}, Config(2));
  ASSERT_EQ(k4.results.size(), 1u);
  EXPECT_EQ(k4.results[0].line, "1 2 3 4");

  auto star = gen::FromEdges(gen::Range(1, 6), {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}});
  auto s = RunJob(star, apps::QuasiCliqueApp{{0.6, 3}}, Config(2));
  EXPECT_TRUE(s.results.empty());
  EXPECT_TRUE(oracle::QuasiCliquesBf(star, 0.6, 3).empty());
}

TEST(QuasiClique, MatchesOracle)
{
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto g = gen::Gnp(20, 0.4, seed);
    for (auto params : {apps::QuasiCliqueParams{0.6, 4}, apps::QuasiCliqueParams{0.5, 3},
                        apps::QuasiCliqueParams{0.9, 3}}) {
      auto r = RunJob(g, apps::QuasiCliqueApp{params}, Config(3));
      EXPECT_EQ(ResultSets(r.results), AsMultiset(oracle::QuasiCliquesBf(g, params.gamma, params.min_size)))
          << "seed " << seed << " gamma " << params.gamma;
      for (const auto &e : r.results) EXPECT_EQ(support::ParseIds(e.line).front(), e.seed);
    }
  }
}

TEST(QuasiClique, RejectsBadParameters)
{
  EXPECT_THROW(apps::QuasiCliqueApp({0.4, 4}), ConfigError);
  EXPECT_THROW(apps::QuasiCliqueApp({0.6, 0}), ConfigError);
  EXPECT_THROW(apps::QuasiCliqueApp({1.2, 4}), ConfigError);
}

/*--------------------------------------------------------------------------------------
 * Graph matching
 *------------------------------------------------------------------------------------*/

TEST(GMatch, ExampleInstance)
{
  auto g = gen::Figure4Data();
  for (bool specialized : {true, false}) {
    apps::GMatchApp app{apps::Figure4Query(), specialized};
    EXPECT_EQ(app.Specialized(), specialized);
    auto r = RunJob(g, app, Config(2));
    std::set<std::string> lines;
    for (const auto &e : r.results) lines.insert(e.line);
    EXPECT_TRUE(lines.contains("2 5 4 7 8"));
    EXPECT_FALSE(lines.contains("2 5 1 7 8"));
    auto oracle_set = oracle::MatchBf(g, support::ToOracle(apps::Figure4Query()));
    EXPECT_EQ(ResultSets(r.results), AsMultiset(oracle_set));
  }
}

TEST(GMatch, ExampleQueryOnRandomGraphs)
{
  std::size_t total = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto g = gen::LabeledGnp(30, 0.5, seed);
    auto expected = AsMultiset(oracle::MatchBf(g, support::ToOracle(apps::Figure4Query())));
    for (bool specialized : {true, false}) {
      auto r = RunJob(g, apps::GMatchApp{apps::Figure4Query(), specialized}, Config(3));
      EXPECT_EQ(ResultSets(r.results), expected) << "seed " << seed;
      total += r.results.size();
    }
  }
  EXPECT_GT(total, 10u);
}

TEST(GMatch, RandomQueriesMatchOracle)
{
  std::size_t total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = gen::LabeledGnp(30, 0.3, 100 + seed);
    auto q = support::RandomQuery(seed);
    auto r = RunJob(g, apps::GMatchApp{q}, Config(3));
    EXPECT_EQ(ResultSets(r.results), AsMultiset(oracle::MatchBf(g, support::ToOracle(q))))
        << apps::FormatQuery(q);
    EXPECT_EQ(r.aggregate, r.results.size());
    total += r.results.size();
  }
  EXPECT_GT(total, 50u);
}

TEST(GMatch, QueryParsing)
{
  std::istringstream in{"# example\nv 1 a\nv 2 c\nv 3 b\nv 4 b\nv 5 d\n"
                        "e 1 2\ne 1 3\ne 2 3\ne 2 4\ne 4 5\nstart 1\n"};
  auto q = apps::ParseQuery(in);
  EXPECT_EQ(q, apps::Figure4Query());
  std::istringstream again{apps::FormatQuery(q)};
  EXPECT_EQ(apps::ParseQuery(again), q);
}

TEST(GMatch, QueryErrors)
{
  std::istringstream no_start{"v 1 a\nv 2 b\ne 1 2\n"};
  EXPECT_THROW(apps::ParseQuery(no_start), ConfigError);
  std::istringstream bad_start{"v 1 a\nv 2 b\ne 1 2\nstart 9\n"};
  EXPECT_THROW(apps::GMatchApp{apps::ParseQuery(bad_start)}, ConfigError);
  std::istringstream disconnected{"v 1 a\nv 2 b\nv 3 c\ne 1 2\nstart 1\n"};
  EXPECT_THROW(apps::GMatchApp{apps::ParseQuery(disconnected)}, ConfigError);
  std::istringstream junk{"v 1\n"};
  EXPECT_THROW(apps::ParseQuery(junk), ParseError);
}

TEST(GMatch, UnlabeledAdjacencyIsConfigError)
{
  auto g = gen::Complete(3);
  for (auto &v : g) v.label = "a";
  apps::QueryGraph q;
  q.labels = {{1, "a"}, {2, "a"}};
  q.edges = {{1, 2}};
  q.start = 1;
  EXPECT_THROW(RunJob(g, apps::GMatchApp{q}, Config(1)), std::exception);
}

/*--------------------------------------------------------------------------------------
 * Dense kernels
 *------------------------------------------------------------------------------------*/

TEST(DenseGraph, BitsetBasics)
{
  apps::Bitset b{130};
  EXPECT_TRUE(b.None());
  b.Set(0);
  b.Set(64);
  b.Set(129);
  EXPECT_EQ(b.Count(), 3u);
  EXPECT_TRUE(b.Test(129));
  std::vector<std::size_t> seen;
  b.ForEach([&](std::size_t i) { seen.push_back(i); });
  EXPECT_EQ(seen, (std::vector<std::size_t>{0, 64, 129}));
  b.Reset(0);
  EXPECT_EQ(b.First(), 64u);
}

TEST(DenseGraph, QuasiCliqueDegree)
{
  EXPECT_EQ(apps::QuasiCliqueDegree(0.6, 4), 2u);
  EXPECT_EQ(apps::QuasiCliqueDegree(0.5, 5), 2u);
  EXPECT_EQ(apps::QuasiCliqueDegree(1.0, 5), 4u);
  EXPECT_EQ(apps::QuasiCliqueDegree(0.6, 6), 3u);
}

}  // namespace
}  // namespace submine
