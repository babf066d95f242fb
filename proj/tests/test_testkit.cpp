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

#include <random>

#include "submine/apps/triangle.hpp"
#include "submine/testkit.hpp"

namespace submine
{
namespace
{
TraceEvent
Event(TraceKind kind, WorkerId worker, std::uint64_t round, std::uint64_t value, std::vector<VertexId> ids = {})
{
  return TraceEvent{kind, worker, round, 0, value, std::move(ids)};
}

TEST(Dedup, CompliantTracePasses)
{
  TraceLog log;
  log.Append(Event(TraceKind::kRequestSent, 0, 1, 2, {4, 5}));
  log.Append(Event(TraceKind::kRequestSent, 0, 1, 1, {6}));
  log.Append(Event(TraceKind::kRequestSent, 0, 2, 1, {4}));
  log.Append(Event(TraceKind::kRequestSent, 1, 1, 1, {4}));
  EXPECT_EQ(testkit::CheckRequestDedup(log), std::nullopt);
}

TEST(Dedup, DuplicateIsNamed)
{
  TraceLog log;
  log.Append(Event(TraceKind::kRequestSent, 3, 7, 2, {4, 5}));
  log.Append(Event(TraceKind::kRequestSent, 3, 7, 1, {5}));
  auto verdict = testkit::CheckRequestDedup(log);
  ASSERT_TRUE(verdict.has_value());
  EXPECT_NE(verdict->find("vertex 5"), std::string::npos) << *verdict;
  EXPECT_NE(verdict->find("worker 3"), std::string::npos) << *verdict;
}

TEST(Dedup, InjectedDuplicatesAlwaysDetected)
{
  auto cfg = EngineConfig{};
  cfg.num_workers = 4;
  cfg.buffer_capacity = 8;
  cfg.cache_capacity = 50;
  cfg.trace = true;
  auto r = RunJob(gen::Gnp(120, 0.1, 6), apps::TriangleApp{}, cfg);
  auto base = TraceLog::Concat(r.traces);
  ASSERT_EQ(testkit::CheckRequestDedup(base), std::nullopt);

  std::vector<std::size_t> requests;
  for (std::size_t i = 0; i < base.Events().size(); ++i) {
    if (base.Events()[i].kind == TraceKind::kRequestSent) requests.push_back(i);
  }
  ASSERT_FALSE(requests.empty());
  std::mt19937_64 rng{1};
  int detected = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto &victim = base.Events()[requests[rng() % requests.size()]];
    auto dup = victim.ids[rng() % victim.ids.size()];
    TraceLog fuzzed;
    auto insert_at = rng() % (base.Events().size() + 1);
    for (std::size_t i = 0; i <= base.Events().size(); ++i) {
      if (i == insert_at) fuzzed.Append(Event(TraceKind::kRequestSent, victim.worker, victim.round, 1, {dup}));
      if (i < base.Events().size()) fuzzed.Append(base.Events()[i]);
    }
    auto verdict = testkit::CheckRequestDedup(fuzzed);
    if (verdict && verdict->find("vertex " + std::to_string(dup)) != std::string::npos) ++detected;
  }
  EXPECT_EQ(detected, trials);
}

TEST(CacheBound, CompliantTracePasses)
{
  TraceLog log;
  log.Append(Event(TraceKind::kCacheAdmit, 0, 1, 3));
  log.Append(Event(TraceKind::kEviction, 0, 2, 2));
  log.Append(Event(TraceKind::kCacheAdmit, 0, 2, 2));
  log.Append(Event(TraceKind::kOverflowEnter, 0, 3, 10));
  log.Append(Event(TraceKind::kCacheAdmit, 0, 3, 10));
  log.Append(Event(TraceKind::kEviction, 0, 3, 10));
  log.Append(Event(TraceKind::kOverflowExit, 0, 3, 3));
  auto r = testkit::ReplayCacheBound(log, 3);
  EXPECT_TRUE(r.ok) << r.error;
  EXPECT_EQ(r.peak_bounded, 3u);
  EXPECT_EQ(r.peak, 13u);
  EXPECT_EQ(r.overflow_episodes, 1u);
}

TEST(CacheBound, OverAdmitReportsEventIndex)
{
  TraceLog log;
  log.Append(Event(TraceKind::kCacheAdmit, 0, 1, 3));
  log.Append(Event(TraceKind::kTaskFetched, 0, 1, 0));
  log.Append(Event(TraceKind::kCacheAdmit, 0, 1, 1));
  auto r = testkit::ReplayCacheBound(log, 3);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.error.find("event 2"), std::string::npos) << r.error;
}

TEST(CacheBound, MismatchedExitIsReported)
{
  TraceLog log;
  log.Append(Event(TraceKind::kOverflowEnter, 0, 1, 5));
  log.Append(Event(TraceKind::kCacheAdmit, 0, 1, 5));
  log.Append(Event(TraceKind::kOverflowExit, 0, 1, 2));
  EXPECT_FALSE(testkit::ReplayCacheBound(log, 3).ok);
  TraceLog nested;
  nested.Append(Event(TraceKind::kOverflowEnter, 0, 1, 5));
  nested.Append(Event(TraceKind::kOverflowEnter, 0, 1, 5));
  EXPECT_FALSE(testkit::ReplayCacheBound(nested, 3).ok);
}

TEST(CacheBound, ReplayMatchesCacheCounters)
{
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t capacity = 5 + seed * 3;
    auto cfg = EngineConfig{};
    cfg.num_workers = 4;
    cfg.buffer_capacity = 6;
    cfg.cache_capacity = capacity;
    cfg.trace = true;
    auto r = RunJob(gen::Gnp(100, 0.12, seed), testkit::PullNeighborsApp{}, cfg);
    for (std::size_t w = 0; w < r.traces.size(); ++w) {
      auto replay = testkit::ReplayCacheBound(r.traces[w], capacity);
      EXPECT_TRUE(replay.ok) << replay.error;
      EXPECT_EQ(replay.peak_bounded, r.workers[w].cache.peak_resident_bounded);
      EXPECT_EQ(replay.overflow_episodes, r.workers[w].overflow_episodes);
    }
  }
}

TEST(CountingFileStore, CountsEveryCall)
{
  testkit::CountingFileStore store;
  auto path = fs::temp_directory_path() / "submine_counting_store.bin";
  store.Write(path, Bytes{1, 2});
  EXPECT_EQ(store.Read(path), (Bytes{1, 2}));
  store.Remove(path);
  EXPECT_EQ(store.Writes(), 1u);
  EXPECT_EQ(store.Reads(), 1u);
  EXPECT_EQ(store.Removes(), 1u);
}

TEST(Workloads, OversizedStarShape)
{
  auto g = testkit::OversizedStar(30, 5, 4);
  const auto owner = PartitionOwner(1, 4);
  std::size_t remote = 0;
  std::size_t local = 0;
  for (const auto &item : g.front().adj) (PartitionOwner(item.nb, 4) == owner ? local : remote)++;
  EXPECT_EQ(remote, 30u);
  EXPECT_EQ(local, 5u);
  EXPECT_EQ(testkit::ExpectedDegreeSum(g), 35u * 35u + 35u);
}

}  // namespace
}  // namespace submine
