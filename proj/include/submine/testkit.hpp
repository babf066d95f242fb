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


#ifndef SUBMINE_TESTKIT_HPP
#define SUBMINE_TESTKIT_HPP

#include <atomic>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "submine/engine.hpp"
#include "submine/file_store.hpp"
#include "submine/generators.hpp"
#include "submine/trace.hpp"

namespace submine::testkit
{
/// Forwards to another store and counts every call.
class CountingFileStore final : public FileStore
{
 public:
  explicit CountingFileStore(FileStore &inner = DiskFileStore::Instance()) : inner_{inner} {}

  void
  Write(const fs::path &path, const Bytes &data) override
  {
    writes_.fetch_add(1);
    inner_.Write(path, data);
  }

  Bytes
  Read(const fs::path &path) override
  {
    reads_.fetch_add(1);
    return inner_.Read(path);
  }

  void
  Remove(const fs::path &path) override
  {
    removes_.fetch_add(1);
    inner_.Remove(path);
  }

  [[nodiscard]] std::uint64_t
  Reads() const noexcept
  {
    return reads_.load();
  }

  [[nodiscard]] std::uint64_t
  Writes() const noexcept
  {
    return writes_.load();
  }

  [[nodiscard]] std::uint64_t
  Removes() const noexcept
  {
    return removes_.load();
  }

 private:
  FileStore &inner_;
  std::atomic<std::uint64_t> reads_{0};
  std::atomic<std::uint64_t> writes_{0};
  std::atomic<std::uint64_t> removes_{0};
};

/// Returns a description of the first vertex requested twice by one worker in one round.
inline std::optional<std::string>
CheckRequestDedup(const TraceLog &log)
{
  std::map<std::pair<WorkerId, std::uint64_t>, std::set<VertexId>> seen;
  for (const auto &e : log.Events()) {
    if (e.kind != TraceKind::kRequestSent) continue;
    auto &ids = seen[{e.worker, e.round}];
    for (auto id : e.ids) {
      if (!ids.insert(id).second) {
        return "worker " + std::to_string(e.worker) + " requested vertex " + std::to_string(id) +
               " twice in round " + std::to_string(e.round);
      }
    }
  }
  return std::nullopt;
}

struct CacheReplay {
  bool ok{true};
  std::string error{};
  std::uint64_t events{0};
  std::uint64_t peak_bounded{0};
  std::uint64_t peak{0};
  std::uint64_t overflow_episodes{0};
};

/**
 * @brief Replays one worker's admit/evict/overflow events and checks that the
 * resident count never exceeds `capacity` outside an overflow episode.
 */
inline CacheReplay
ReplayCacheBound(const TraceLog &log, std::size_t capacity)
{
  CacheReplay r;
  std::map<WorkerId, std::int64_t> resident;
  std::map<WorkerId, bool> overflow;
  std::size_t index = 0;
  auto fail = [&](const TraceEvent &e, const std::string &why) {
    if (!r.ok) return;
    r.ok = false;
    r.error = "event " + std::to_string(index) + " (worker " + std::to_string(e.worker) + ", round " +
              std::to_string(e.round) + "): " + why;
  };
  for (; index < log.Events().size(); ++index) {
    const auto &e = log.Events()[index];
    auto &res = resident[e.worker];
    auto &ovf = overflow[e.worker];
    switch (e.kind) {
      case TraceKind::kCacheAdmit:
        res += static_cast<std::int64_t>(e.value);
        break;
      case TraceKind::kEviction:
        res -= static_cast<std::int64_t>(e.value);
        if (res < 0) fail(e, "more evictions than admissions");
        break;
      case TraceKind::kOverflowEnter:
        if (ovf) fail(e, "nested overflow episode");
        ovf = true;
        ++r.overflow_episodes;
        break;
      case TraceKind::kOverflowExit:
        if (!ovf) fail(e, "overflow exit without entry");
        ovf = false;
        if (res != static_cast<std::int64_t>(e.value)) {
          fail(e, "replayed residency " + std::to_string(res) + " differs from reported " + std::to_string(e.value));
        }
        break;
      default:
        continue;
    }
    ++r.events;
    r.peak = std::max<std::uint64_t>(r.peak, static_cast<std::uint64_t>(std::max<std::int64_t>(res, 0)));
    if (!ovf) {
      r.peak_bounded = std::max<std::uint64_t>(r.peak_bounded, static_cast<std::uint64_t>(std::max<std::int64_t>(res, 0)));
      if (res > static_cast<std::int64_t>(capacity)) {
        fail(e, "residency " + std::to_string(res) + " exceeds capacity " + std::to_string(capacity));
      }
    }
  }
  return r;
}

inline CacheReplay
ReplayCacheBound(const std::vector<TraceLog> &logs, std::size_t capacity)
{
  return ReplayCacheBound(TraceLog::Concat(logs), capacity);
}

struct PullNeighborsContext {
  std::uint64_t degree_sum{0};
};

/// Every vertex seeds one task that pulls all its neighbors and sums their degrees.
class PullNeighborsApp
{
 public:
  using Context = PullNeighborsContext;
  using Aggregate = std::uint64_t;

  void
  Seed(const Vertex &v, SeedScope<PullNeighborsApp> &scope) const
  {
    if (v.adj.empty()) return;
    Task<Context> t;
    for (const auto &item : v.adj) t.Pull(item.nb);
    scope.AddTask(std::move(t));
  }

  bool
  Compute(Task<Context> &task, const Frontier &frontier, ComputeScope<PullNeighborsApp> &) const
  {
    for (const auto *u : frontier) task.context.degree_sum += u->adj.size();
    return false;
  }

  [[nodiscard]] std::optional<Vertex>
  Respond(const Vertex &) const
  {
    return std::nullopt;
  }

  [[nodiscard]] Aggregate
  AggregateZero() const
  {
    return 0;
  }

  void
  AggregateTask(Aggregate &agg, const Task<Context> &task) const
  {
    agg += task.context.degree_sum;
  }

  void
  AggregateMerge(Aggregate &agg, const Aggregate &other) const
  {
    agg += other;
  }

  void
  EncodeContext(Encoder &enc, const Context &ctx) const
  {
    enc.U64(ctx.degree_sum);
  }

  [[nodiscard]] Context
  DecodeContext(Decoder &dec) const
  {
    return Context{dec.U64()};
  }
};

/// Σ over edges (u, w) of deg(u) + deg(w): what PullNeighborsApp must report.
inline std::uint64_t
ExpectedDegreeSum(std::span<const Vertex> g)
{
  std::uint64_t s = 0;
  for (const auto &v : g) s += v.adj.size() * v.adj.size();
  return s;
}

/**
 * @brief A star whose center (ID 1) has exactly `remote` neighbors owned by
 * workers other than the center's, plus `local` same-worker neighbors.
 */
inline std::vector<Vertex>
OversizedStar(std::size_t remote, std::size_t local, std::uint32_t workers)
{
  const VertexId center = 1;
  const auto owner = PartitionOwner(center, workers);
  std::vector<VertexId> ids{center};
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::size_t r = 0;
  std::size_t l = 0;
  for (VertexId id = 2; r < remote || l < local; ++id) {
    bool is_local = PartitionOwner(id, workers) == owner;
    if (is_local ? l++ < local : r++ < remote) {
      ids.push_back(id);
      edges.emplace_back(center, id);
    }
  }
  return gen::FromEdges(ids, edges);
}

}  // namespace submine::testkit

#endif  // SUBMINE_TESTKIT_HPP
