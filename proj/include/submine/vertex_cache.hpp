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

#ifndef SUBMINE_VERTEX_CACHE_HPP
#define SUBMINE_VERTEX_CACHE_HPP

#include <algorithm>
#include <list>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "submine/local_table.hpp"
#include "submine/trace.hpp"

namespace submine
{
struct CacheMetrics {
  std::uint64_t hits{0};
  std::uint64_t misses{0};
  std::uint64_t evictions{0};
  std::uint64_t admits{0};
  std::uint64_t peak_resident{0};
  /// Peak residency observed while no overflow episode was active.
  std::uint64_t peak_resident_bounded{0};

  [[nodiscard]] double
  HitRate() const noexcept
  {
    auto total = hits + misses;
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

/**
 * @brief Capacity-bounded LRU cache of remote vertices with pin counts.
 *
 * Capacity counts vertices. A slot is taken at reservation time (a
 * placeholder) and filled by InsertPulled.
 * Pinned entries are never evicted. Outside an overflow episode the number
 * of resident entries (placeholders included) never exceeds the capacity.
 *
 * All members lock an internal mutex so a receive thread may insert while
 * the compute thread looks up. Returned pointers stay valid while the entry
 * is pinned.
 */
class VertexCache
{
 public:
  struct Reservation {
    bool accepted{false};
    /// Newly reserved IDs that must be fetched from their owners.
    std::vector<VertexId> to_fetch{};
    /// Every ID pinned by this reservation (hits and new slots).
    std::vector<VertexId> pinned{};
  };

  VertexCache(std::size_t capacity, const LocalTable *local, const Tracer *tracer = nullptr)
      : capacity_{capacity}, local_{local}, tracer_{tracer}
  {
  }

  VertexCache(const VertexCache &) = delete;
  VertexCache &operator=(const VertexCache &) = delete;

  /// Cache-only lookup; a hit refreshes recency. Placeholders are misses.
  const Vertex *
  Lookup(VertexId id)
  {
    std::lock_guard lock{mu_};
    auto it = entries_.find(id);
    if (it == entries_.end() || !it->second.vertex) {
      ++metrics_.misses;
      return nullptr;
    }
    ++metrics_.hits;
    Touch(it->second);
    return &*it->second.vertex;
  }

  /// Pins a delivered entry and returns it; not counted in hit/miss metrics.
  const Vertex *
  LookupAndPin(VertexId id)
  {
    std::lock_guard lock{mu_};
    auto it = entries_.find(id);
    if (it == entries_.end() || !it->second.vertex) return nullptr;
    PinEntry(it->second);
    Touch(it->second);
    return &*it->second.vertex;
  }

  /// Counted residency check that refreshes recency on a hit.
  bool
  Probe(VertexId id)
  {
    std::lock_guard lock{mu_};
    auto it = entries_.find(id);
    if (it == entries_.end() || !it->second.vertex) {
      ++metrics_.misses;
      return false;
    }
    ++metrics_.hits;
    Touch(it->second);
    return true;
  }

  /**
   * @brief Pins every ID in `ids`, reserving slots for the missing ones.
   *
   * All or nothing: if the missing IDs cannot be fitted (after evicting
   * unpinned LRU entries) nothing changes and `accepted` is false.
   */
  Reservation
  Reserve(std::span<const VertexId> ids)
  {
    std::vector<VertexId> uniq{ids.begin(), ids.end()};
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (auto id : uniq) GuardNonLocal(id);

    std::lock_guard lock{mu_};
    std::size_t missing = 0;
    std::size_t hits_unpinned = 0;
    for (auto id : uniq) {
      auto it = entries_.find(id);
      if (it == entries_.end()) {
        ++missing;
      } else if (it->second.pins == 0) {
        ++hits_unpinned;
      }
    }
    const auto limit = Limit();
    const auto after = entries_.size() + missing;
    const auto needed = after > limit ? after - limit : 0;
    const auto evictable = unpinned_ - hits_unpinned;
    Reservation r;
    if (needed > evictable) return r;

    r.accepted = true;
    r.pinned = uniq;
    for (auto id : uniq) {
      auto it = entries_.find(id);
      if (it == entries_.end()) continue;
      ++metrics_.hits;
      PinEntry(it->second);
      Touch(it->second);
    }
    EvictUnpinned(needed);
    for (auto id : uniq) {
      if (entries_.contains(id)) continue;
      ++metrics_.misses;
      lru_.push_front(id);
      entries_.emplace(id, Entry{std::nullopt, 1, lru_.begin()});
      r.to_fetch.push_back(id);
    }
    metrics_.admits += r.to_fetch.size();
    if (tracer_ != nullptr && !r.to_fetch.empty()) {
      tracer_->Emit(TraceKind::kCacheAdmit, r.to_fetch.size(), r.to_fetch);
    }
    NotePeak();
    return r;
  }

  /// Fills a reserved slot. A second insert of the same ID is a no-op.
  void
  InsertPulled(Vertex v)
  {
    GuardNonLocal(v.id);
    std::lock_guard lock{mu_};
    auto it = entries_.find(v.id);
    if (it == entries_.end()) {
      throw ProtocolError{"insert of vertex " + std::to_string(v.id) + " without a reservation"};
    }
    if (it->second.vertex) return;
    it->second.vertex = std::move(v);
    Touch(it->second);
  }

  /// Decrements one pin per listed ID (repeat an ID to drop several pins).
  void
  UnpinBatch(std::span<const VertexId> ids)
  {
    std::lock_guard lock{mu_};
    for (auto id : ids) {
      auto it = entries_.find(id);
      if (it == entries_.end() || it->second.pins == 0) {
        throw ProtocolError{"unpin of unpinned vertex " + std::to_string(id)};
      }
      if (--it->second.pins == 0) ++unpinned_;
    }
  }

  /// Lifts the capacity by `extra` for one singleton oversized batch.
  void
  EnterOverflow(std::size_t extra)
  {
    std::lock_guard lock{mu_};
    if (overflow_) throw ProtocolError{"nested cache overflow episode"};
    overflow_ = true;
    extra_ = extra;
    if (tracer_ != nullptr) tracer_->Emit(TraceKind::kOverflowEnter, extra);
  }

  /// Ends the episode, evicting unpinned LRU entries back down to capacity.
  void
  ExitOverflow()
  {
    std::lock_guard lock{mu_};
    if (!overflow_) throw ProtocolError{"exit_overflow without a matching enter_overflow"};
    auto excess = entries_.size() > capacity_ ? entries_.size() - capacity_ : 0;
    EvictUnpinned(std::min(excess, unpinned_));
    overflow_ = false;
    extra_ = 0;
    if (tracer_ != nullptr) tracer_->Emit(TraceKind::kOverflowExit, entries_.size());
    NotePeak();
  }

  [[nodiscard]] bool
  InOverflow() const
  {
    std::lock_guard lock{mu_};
    return overflow_;
  }

  [[nodiscard]] std::size_t
  Resident() const
  {
    std::lock_guard lock{mu_};
    return entries_.size();
  }

  [[nodiscard]] std::size_t
  Capacity() const noexcept
  {
    return capacity_;
  }

  [[nodiscard]] std::uint32_t
  PinCount(VertexId id) const
  {
    std::lock_guard lock{mu_};
    auto it = entries_.find(id);
    return it == entries_.end() ? 0 : it->second.pins;
  }

  /// True if a slot exists for `id` (delivered or not).
  [[nodiscard]] bool
  Holds(VertexId id) const
  {
    std::lock_guard lock{mu_};
    return entries_.contains(id);
  }

  [[nodiscard]] CacheMetrics
  Metrics() const
  {
    std::lock_guard lock{mu_};
    return metrics_;
  }

  /// IDs from least to most recently used.
  [[nodiscard]] std::vector<VertexId>
  LruOrder() const
  {
    std::lock_guard lock{mu_};
    return {lru_.rbegin(), lru_.rend()};
  }

 private:
  struct Entry {
    std::optional<Vertex> vertex;
    std::uint32_t pins;
    std::list<VertexId>::iterator lru_pos;
  };

  [[nodiscard]] std::size_t
  Limit() const noexcept
  {
    return overflow_ ? capacity_ + extra_ : capacity_;
  }

  void
  GuardNonLocal(VertexId id) const
  {
    if (local_ != nullptr && local_->Owns(id)) {
      throw ProtocolError{"vertex " + std::to_string(id) + " is owned locally and cannot be cached"};
    }
  }

  void
  Touch(Entry &e)
  {
    lru_.splice(lru_.begin(), lru_, e.lru_pos);
  }

  void
  PinEntry(Entry &e)
  {
    if (e.pins++ == 0) --unpinned_;
  }

  // Scans from the LRU end, skipping pinned entries.
  void
  EvictUnpinned(std::size_t count)
  {
    if (count == 0) return;
    std::vector<VertexId> evicted;
    evicted.reserve(count);
    auto it = lru_.end();
    while (evicted.size() < count && it != lru_.begin()) {
      --it;
      auto e = entries_.find(*it);
      if (e->second.pins > 0) continue;
      evicted.push_back(*it);
      entries_.erase(e);
      it = lru_.erase(it);
      --unpinned_;
    }
    metrics_.evictions += evicted.size();
    if (tracer_ != nullptr) tracer_->Emit(TraceKind::kEviction, evicted.size(), evicted);
  }

  void
  NotePeak()
  {
    metrics_.peak_resident = std::max<std::uint64_t>(metrics_.peak_resident, entries_.size());
    if (!overflow_) {
      metrics_.peak_resident_bounded =
          std::max<std::uint64_t>(metrics_.peak_resident_bounded, entries_.size());
    }
  }

  mutable std::mutex mu_{};
  std::size_t capacity_;
  std::size_t extra_{0};
  bool overflow_{false};
  const LocalTable *local_;
  const Tracer *tracer_;
  std::unordered_map<VertexId, Entry> entries_{};
  std::list<VertexId> lru_{};  // front = most recently used
  std::size_t unpinned_{0};
  CacheMetrics metrics_{};
};

/// T_local first, then T_cache.
class VertexStore
{
 public:
  VertexStore(const LocalTable &local, std::size_t cache_capacity, const Tracer *tracer = nullptr)
      : local_{local}, cache_{cache_capacity, &local, tracer}
  {
  }

  const Vertex *
  Lookup(VertexId id)
  {
    if (local_.Owns(id)) return local_.Find(id);
    return cache_.Lookup(id);
  }

  [[nodiscard]] const LocalTable &
  Local() const noexcept
  {
    return local_;
  }

  VertexCache &
  Cache() noexcept
  {
    return cache_;
  }

  [[nodiscard]] const VertexCache &
  Cache() const noexcept
  {
    return cache_;
  }

 private:
  const LocalTable &local_;
  VertexCache cache_;
};

}  // namespace submine

#endif  // SUBMINE_VERTEX_CACHE_HPP
