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
#include <map>
#include <random>

#include <unistd.h>

#include "submine/task_queue.hpp"
#include "submine/testkit.hpp"

namespace submine
{
namespace
{
class QueueTest : public ::testing::Test
{
 protected:
  void
  SetUp() override
  {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("submine_queue_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
  }

  void
  TearDown() override
  {
    fs::remove_all(dir_);
  }

  QueueOptions
  Options(std::size_t c, std::size_t buffer, FileStore *store = nullptr, const std::string &sub = "q")
  {
    return QueueOptions{dir_ / sub, c, buffer, 2, store, nullptr};
  }

  fs::path dir_;
};

TaskRecord
Record(std::uint64_t s0, std::uint64_t s1, std::uint64_t seq)
{
  Bytes payload(8);
  for (int i = 0; i < 8; ++i) payload[i] = static_cast<std::uint8_t>(seq >> (8 * i));
  return TaskRecord{TaskKey{{s0, s1}, seq}, payload};
}

TaskRecord
RandomRecord(std::mt19937_64 &rng, std::uint64_t seq, std::uint64_t spread = 1000)
{
  return Record(rng() % spread, rng() % spread, seq);
}

std::vector<TaskRecord>
Drain(TaskQueue &q)
{
  std::vector<TaskRecord> out;
  while (auto t = q.Fetch()) out.push_back(std::move(*t));
  return out;
}

std::multiset<std::uint64_t>
Seqs(const std::vector<TaskRecord> &records)
{
  std::multiset<std::uint64_t> out;
  for (const auto &r : records) out.insert(r.key.seq);
  return out;
}

TEST_F(QueueTest, FreshCountersAreZero)
{
  for (auto kind : {QueueKind::kStream, QueueKind::kLsh}) {
    auto q = MakeQueue(kind, Options(4, 4, nullptr, QueueKindName(kind)));
    EXPECT_EQ(q->Counters(), (IoCounters{0, 0}));
    EXPECT_TRUE(q->Empty());
    EXPECT_FALSE(q->Fetch().has_value());
  }
}

TEST_F(QueueTest, SingleTaskRoundTrip)
{
  for (auto kind : {QueueKind::kStream, QueueKind::kLsh}) {
    auto q = MakeQueue(kind, Options(4, 4, nullptr, QueueKindName(kind)));
    auto r = Record(3, 4, 7);
    q->Enqueue(r);
    EXPECT_EQ(q->Size(), 1u);
    auto back = q->Fetch();
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, r);
    EXPECT_FALSE(q->Fetch().has_value());
  }
}

TEST_F(QueueTest, OneSpillOneLoad)
{
  auto lsh = MakeQueue(QueueKind::kLsh, Options(4, 3, nullptr, "lsh"));
  for (std::uint64_t i = 0; i < 4; ++i) lsh->Enqueue(Record(i, i, i));
  EXPECT_EQ(lsh->Counters(), (IoCounters{0, 1}));
  ASSERT_TRUE(lsh->Fetch().has_value());
  EXPECT_EQ(lsh->Counters(), (IoCounters{1, 1}));

  auto stream = MakeQueue(QueueKind::kStream, Options(4, 4, nullptr, "stream"));
  for (std::uint64_t i = 0; i < 5; ++i) stream->Enqueue(Record(i, i, i));
  EXPECT_EQ(stream->Counters(), (IoCounters{0, 1}));
  ASSERT_TRUE(stream->Fetch().has_value());
  EXPECT_EQ(stream->Counters(), (IoCounters{1, 1}));
}

TEST_F(QueueTest, MultisetPreservedBothKinds)
{
  const std::size_t c = 16;
  for (auto kind : {QueueKind::kStream, QueueKind::kLsh}) {
    auto q = MakeQueue(kind, Options(c, 20, nullptr, QueueKindName(kind)));
    std::mt19937_64 rng{4};
    std::vector<TaskRecord> in;
    for (std::uint64_t i = 0; i < 10 * c; ++i) in.push_back(RandomRecord(rng, i));
    for (const auto &r : in) q->Enqueue(r);
    auto out = Drain(*q);
    EXPECT_EQ(Seqs(out), Seqs(in));
    auto by_seq = [](const TaskRecord &a, const TaskRecord &b) { return a.key.seq < b.key.seq; };
    std::sort(out.begin(), out.end(), by_seq);
    EXPECT_EQ(out, in);
    EXPECT_GT(q->Counters().random_writes, 0u);
  }
}

TEST_F(QueueTest, StreamIsFifo)
{
  auto q = MakeQueue(QueueKind::kStream, Options(5, 7, nullptr));
  std::mt19937_64 rng{8};
  for (std::uint64_t i = 0; i < 100; ++i) q->Enqueue(RandomRecord(rng, i));
  auto out = Drain(*q);
  ASSERT_EQ(out.size(), 100u);
  for (std::uint64_t i = 0; i < 100; ++i) EXPECT_EQ(out[i].key.seq, i);
}

TEST_F(QueueTest, LshEqualKeysDrainAdjacently)
{
  LshQueue q{Options(8, 10)};
  std::mt19937_64 rng{21};
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto cls = rng() % 7;
    q.Enqueue(Record(cls * 11, cls * 13, i));
  }
  q.MergeSpill();
  auto out = Drain(q);
  ASSERT_EQ(out.size(), 200u);
  std::set<std::vector<std::uint64_t>> finished;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0 && out[i].key.sigs != out[i - 1].key.sigs) {
      EXPECT_TRUE(finished.insert(out[i - 1].key.sigs).second) << "signature class split apart";
    }
    EXPECT_FALSE(finished.contains(out[i].key.sigs));
  }
}

TEST_F(QueueTest, LshFirstSpillMakesBalancedFiles)
{
  const std::size_t c = 16;
  LshQueue q{Options(c, 1000)};
  std::mt19937_64 rng{1};
  for (std::uint64_t i = 0; i < c * 5 / 2; ++i) q.Enqueue(RandomRecord(rng, i));
  q.MergeSpill();
  ASSERT_EQ(q.Files().size(), 3u);
  for (const auto &f : q.Files()) {
    EXPECT_GE(f.count, (c + 1) / 2);
    EXPECT_LE(f.count, c);
  }
  EXPECT_EQ(q.CheckInvariants(true), std::nullopt);
}

TEST_F(QueueTest, LshFullFileSplits)
{
  const std::size_t c = 16;
  LshQueue q{Options(c, 1000)};
  for (std::uint64_t i = 0; i < c; ++i) q.Enqueue(Record(10 * i, 0, i));
  q.MergeSpill();
  ASSERT_EQ(q.Files().size(), 1u);
  ASSERT_EQ(q.Files().front().count, c);
  q.Enqueue(Record(55, 0, 100));
  q.MergeSpill();
  ASSERT_EQ(q.Files().size(), 2u);
  EXPECT_EQ(q.Files().front().count + q.Files().back().count, c + 1);
  EXPECT_EQ(q.CheckInvariants(true), std::nullopt);
}

TEST_F(QueueTest, LshRandomizedInvariantsAfterEveryMerge)
{
  const std::size_t c = 16;
  LshQueue q{Options(c, 40)};
  std::mt19937_64 rng{77};
  std::vector<TaskRecord> in;
  std::size_t merges = 0;
  for (std::uint64_t i = 0; i < 10'000; ++i) {
    in.push_back(RandomRecord(rng, i, 1ull << 40));
    q.Enqueue(in.back());
    if (q.InBufferSize() == 0) {
      ++merges;
      auto bad = q.CheckInvariants(merges % 25 == 0);
      ASSERT_EQ(bad, std::nullopt) << "after merge " << merges;
    }
  }
  q.MergeSpill();
  ASSERT_EQ(q.CheckInvariants(true), std::nullopt);
  EXPECT_GT(merges, 100u);
  auto out = Drain(q);
  EXPECT_EQ(Seqs(out), Seqs(in));
  EXPECT_TRUE(std::is_sorted(out.begin(), out.end(),
                             [](const TaskRecord &a, const TaskRecord &b) { return a.key < b.key; }));
}

TEST_F(QueueTest, InterleavedWorkloadLosesNothing)
{
  for (auto kind : {QueueKind::kStream, QueueKind::kLsh}) {
    auto q = MakeQueue(kind, Options(8, 12, nullptr, QueueKindName(kind)));
    std::mt19937_64 rng{31};
    std::multiset<std::uint64_t> in;
    std::multiset<std::uint64_t> out;
    std::uint64_t seq = 0;
    for (int step = 0; step < 5000; ++step) {
      if (rng() % 3 != 0) {
        q->Enqueue(RandomRecord(rng, seq));
        in.insert(seq++);
      } else if (auto t = q->Fetch()) {
        out.insert(t->key.seq);
      }
      if (kind == QueueKind::kLsh) {
        ASSERT_EQ(static_cast<LshQueue &>(*q).CheckInvariants(), std::nullopt);
      }
    }
    for (auto &r : Drain(*q)) out.insert(r.key.seq);
    EXPECT_EQ(in, out);
  }
}

TEST_F(QueueTest, CountersMatchFileStoreShim)
{
  for (auto kind : {QueueKind::kStream, QueueKind::kLsh}) {
    testkit::CountingFileStore shim;
    auto q = MakeQueue(kind, Options(16, 50, &shim, QueueKindName(kind)));
    std::mt19937_64 rng{5};
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      q->Enqueue(RandomRecord(rng, i));
      if (rng() % 4 == 0) q->Fetch();
    }
    Drain(*q);
    EXPECT_EQ(q->Counters().random_reads, shim.Reads());
    EXPECT_EQ(q->Counters().random_writes, shim.Writes());
    EXPECT_GT(shim.Writes(), 0u);
  }
}

TEST_F(QueueTest, CorruptFileIsFatal)
{
  LshQueue q{Options(4, 3)};
  for (std::uint64_t i = 0; i < 4; ++i) q.Enqueue(Record(i, i, i));
  ASSERT_EQ(q.Files().size(), 1u);
  DiskFileStore::Instance().Write(q.Files().front().path, Bytes{1, 2, 3});
  EXPECT_THROW(q.Fetch(), CorruptionError);
}

TEST_F(QueueTest, ConfigErrors)
{
  EXPECT_THROW(LshQueue{Options(0, 4)}, ConfigError);
  EXPECT_THROW(StreamQueue{Options(4, 0)}, ConfigError);
}

}  // namespace
}  // namespace submine
