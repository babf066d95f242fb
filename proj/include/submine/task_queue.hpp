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

#ifndef SUBMINE_TASK_QUEUE_HPP
#define SUBMINE_TASK_QUEUE_HPP

#include <algorithm>
#include <deque>
#include <list>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "submine/codec.hpp"
#include "submine/file_store.hpp"
#include "submine/minhash.hpp"
#include "submine/trace.hpp"

namespace submine
{
/// A queued task: its scheduling key plus the serialized task body.
struct TaskRecord {
  TaskKey key{};
  Bytes payload{};

  friend bool operator==(const TaskRecord &, const TaskRecord &) = default;
};

struct IoCounters {
  std::uint64_t random_reads{0};
  std::uint64_t random_writes{0};

  friend bool operator==(const IoCounters &, const IoCounters &) = default;
};

enum class QueueKind { kStream, kLsh };

inline std::string
QueueKindName(QueueKind k)
{
  return k == QueueKind::kStream ? "stream" : "lsh";
}

struct QueueOptions {
  fs::path dir{};
  std::size_t file_capacity{100};
  std::size_t buffer_capacity{1000};
  std::size_t ell{4};
  FileStore *store{nullptr};
  const Tracer *tracer{nullptr};
};

/*######################################################################################
 * Task file format: magic, version, C, ℓ, count, then sorted records
 *####################################################################################*/

inline constexpr std::uint32_t kTaskFileMagic = 0x46514D53;  // "SMQF"
inline constexpr std::uint32_t kTaskFileVersion = 1;

inline Bytes
EncodeTaskFile(const std::vector<TaskRecord> &records, std::size_t file_capacity, std::size_t ell)
{
  Encoder enc;
  enc.U32(kTaskFileMagic);
  enc.U32(kTaskFileVersion);
  enc.U32(static_cast<std::uint32_t>(file_capacity));
  enc.U32(static_cast<std::uint32_t>(ell));
  enc.U64(records.size());
  for (const auto &r : records) {
    if (r.key.sigs.size() != ell) throw ProtocolError{"task key length differs from queue ell"};
    for (auto s : r.key.sigs) enc.U64(s);
    enc.U64(r.key.seq);
    enc.Raw(r.payload);
  }
  return enc.Take();
}

inline std::vector<TaskRecord>
DecodeTaskFile(const Bytes &data)
{
  Decoder dec{data};
  if (dec.U32() != kTaskFileMagic) throw CorruptionError{"bad task file magic"};
  if (auto v = dec.U32(); v != kTaskFileVersion) {
    throw CorruptionError{"unsupported task file version " + std::to_string(v)};
  }
  dec.U32();  // C
  const auto ell = dec.U32();
  const auto count = dec.U64();
  std::vector<TaskRecord> records;
  records.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, data.size())));
  for (std::uint64_t i = 0; i < count; ++i) {
    TaskRecord r;
    r.key.sigs.resize(ell);
    for (auto &s : r.key.sigs) s = dec.U64();
    r.key.seq = dec.U64();
    r.payload = dec.Raw();
    records.push_back(std::move(r));
  }
  if (!dec.AtEnd()) throw CorruptionError{"trailing bytes in task file"};
  return records;
}

/*######################################################################################
 * Queue interface
 *####################################################################################*/

class TaskQueue
{
 public:
  explicit TaskQueue(QueueOptions opts) : opts_{std::move(opts)}
  {
    if (opts_.file_capacity < 1) throw ConfigError{"file capacity must be >= 1"};
    if (opts_.buffer_capacity < 1) throw ConfigError{"buffer capacity must be >= 1"};
    if (opts_.store == nullptr) opts_.store = &DiskFileStore::Instance();
    std::error_code ec;
    fs::create_directories(opts_.dir, ec);
    if (ec) throw IoError{"cannot create queue directory '" + opts_.dir.string() + "': " + ec.message()};
  }

  TaskQueue(const TaskQueue &) = delete;
  TaskQueue &operator=(const TaskQueue &) = delete;
  virtual ~TaskQueue() = default;

  virtual void Enqueue(TaskRecord t) = 0;

  /// Initial seeding: adds all records at once.
  virtual void BulkLoad(std::vector<TaskRecord> records) = 0;

  virtual std::optional<TaskRecord> Fetch() = 0;

  [[nodiscard]] virtual std::size_t Size() const = 0;

  [[nodiscard]] bool
  Empty() const
  {
    return Size() == 0;
  }

  [[nodiscard]] IoCounters
  Counters() const noexcept
  {
    return io_;
  }

  [[nodiscard]] const QueueOptions &
  Options() const noexcept
  {
    return opts_;
  }

 protected:
  fs::path
  WriteFile(const std::vector<TaskRecord> &records)
  {
    auto path = opts_.dir / ("f" + std::to_string(next_file_++) + ".tasks");
    opts_.store->Write(path, EncodeTaskFile(records, opts_.file_capacity, opts_.ell));
    ++io_.random_writes;
    if (opts_.tracer != nullptr) opts_.tracer->Emit(TraceKind::kSpill, records.size());
    return path;
  }

  /// Reads a file and deletes it.
  std::vector<TaskRecord>
  ConsumeFile(const fs::path &path)
  {
    auto records = DecodeTaskFile(opts_.store->Read(path));
    ++io_.random_reads;
    opts_.store->Remove(path);
    if (opts_.tracer != nullptr) opts_.tracer->Emit(TraceKind::kFileLoad, records.size());
    return records;
  }

  void
  DiscardFile(const fs::path &path) noexcept
  {
    try {
      opts_.store->Remove(path);
    } catch (...) {
    }
  }

  QueueOptions opts_;
  IoCounters io_{};

 private:
  std::uint64_t next_file_{0};
};

/*######################################################################################
 * Stream queue: FIFO, spilled as files of C tasks
 *####################################################################################*/

/// Reads from the head and appends at the tail; the middle lives on disk.
class StreamQueue final : public TaskQueue
{
 public:
  explicit StreamQueue(QueueOptions opts) : TaskQueue{std::move(opts)} {}

  ~StreamQueue() override
  {
    for (const auto &f : files_) DiscardFile(f.path);
  }

  void
  Enqueue(TaskRecord t) override
  {
    tail_.push_back(std::move(t));
    if (tail_.size() > opts_.buffer_capacity) Spill();
  }

  void
  BulkLoad(std::vector<TaskRecord> records) override
  {
    for (auto &r : records) Enqueue(std::move(r));
  }

  std::optional<TaskRecord>
  Fetch() override
  {
    if (head_.empty()) {
      if (!files_.empty()) {
        auto f = files_.front();
        files_.pop_front();
        on_disk_ -= f.count;
        auto records = ConsumeFile(f.path);
        head_.assign(std::make_move_iterator(records.begin()), std::make_move_iterator(records.end()));
      } else {
        head_.assign(std::make_move_iterator(tail_.begin()), std::make_move_iterator(tail_.end()));
        tail_.clear();
      }
    }
    if (head_.empty()) return std::nullopt;
    auto t = std::move(head_.front());
    head_.pop_front();
    return t;
  }

  [[nodiscard]] std::size_t
  Size() const override
  {
    return head_.size() + on_disk_ + tail_.size();
  }

  [[nodiscard]] std::size_t
  FileCount() const noexcept
  {
    return files_.size();
  }

 private:
  struct FileRef {
    fs::path path;
    std::size_t count;
  };

  void
  Spill()
  {
    const auto c = opts_.file_capacity;
    std::size_t chunks = tail_.size() / c;
    std::size_t consumed = 0;
    if (chunks == 0) {
      chunks = 1;
    }
    for (std::size_t k = 0; k < chunks; ++k) {
      auto n = std::min(c, tail_.size() - consumed);
      std::vector<TaskRecord> chunk(std::make_move_iterator(tail_.begin() + consumed),
                                    std::make_move_iterator(tail_.begin() + consumed + n));
      consumed += n;
      files_.push_back(FileRef{WriteFile(chunk), n});
      on_disk_ += n;
    }
    tail_.erase(tail_.begin(), tail_.begin() + consumed);
  }

  std::deque<TaskRecord> head_{};
  std::deque<FileRef> files_{};
  std::vector<TaskRecord> tail_{};
  std::size_t on_disk_{0};
};

/*######################################################################################
 * LSH queue: key-ordered task files indexed by an in-memory range list
 *####################################################################################*/

/// Descriptor of one on-disk task file.
struct TaskFile {
  fs::path path{};
  std::size_t count{0};
  TaskKey key_lo{};
  TaskKey key_hi{};
};

/**
 * @brief Disk-resident task queue ordered by MinHash keys.
 *
 * Incoming tasks collect in B^Q_in; when it overflows its tasks are sorted
 * and merged into the chain of task files, B+-tree leaf style, so that each
 * file keeps between ⌈C/2⌉ and C tasks and file ranges stay ordered and
 * disjoint. Fetching drains B^Q_out, which is refilled with the whole first
 * file, or with the smallest-key tasks of B^Q_in when no file exists.
 */
class LshQueue final : public TaskQueue
{
 public:
  explicit LshQueue(QueueOptions opts) : TaskQueue{std::move(opts)} {}

  ~LshQueue() override
  {
    for (const auto &f : files_) DiscardFile(f.path);
  }

  void
  Enqueue(TaskRecord t) override
  {
    bq_in_.push_back(std::move(t));
    if (bq_in_.size() > opts_.buffer_capacity) MergeSpill();
  }

  void
  BulkLoad(std::vector<TaskRecord> records) override
  {
    for (auto &r : records) bq_in_.push_back(std::move(r));
    if (bq_in_.size() > opts_.buffer_capacity) MergeSpill();
  }

  std::optional<TaskRecord>
  Fetch() override
  {
    if (bq_out_.empty()) Refill();
    if (bq_out_.empty()) return std::nullopt;
    auto t = std::move(bq_out_.front());
    bq_out_.pop_front();
    return t;
  }

  [[nodiscard]] std::size_t
  Size() const override
  {
    return bq_in_.size() + bq_out_.size() + on_disk_;
  }

  /// Sorts B^Q_in and merges it into the file chain.
  void
  MergeSpill()
  {
    if (bq_in_.empty()) return;
    std::sort(bq_in_.begin(), bq_in_.end(),
              [](const TaskRecord &a, const TaskRecord &b) { return a.key < b.key; });
    std::vector<TaskRecord> incoming = std::move(bq_in_);
    bq_in_.clear();

    if (files_.empty()) {
      for (auto &piece : SplitBalanced(std::move(incoming))) {
        files_.push_back(Write(piece));
      }
      return;
    }

    // Route each incoming task to the first file whose key_hi is >= its key
    // (the last file takes the rest). Groups are contiguous in key order.
    std::size_t pos = 0;
    for (auto it = files_.begin(); it != files_.end() && pos < incoming.size();) {
      auto last = std::next(it) == files_.end();
      auto end = pos;
      while (end < incoming.size() && (last || incoming[end].key <= it->key_hi)) ++end;
      if (end == pos) {
        ++it;
        continue;
      }
      std::vector<TaskRecord> group(std::make_move_iterator(incoming.begin() + pos),
                                    std::make_move_iterator(incoming.begin() + end));
      pos = end;
      it = Rewrite(it, std::move(group));
    }
    RepairUnderflow();
  }

  [[nodiscard]] const std::list<TaskFile> &
  Files() const noexcept
  {
    return files_;
  }

  [[nodiscard]] std::size_t
  InBufferSize() const noexcept
  {
    return bq_in_.size();
  }

  [[nodiscard]] std::size_t
  OutBufferSize() const noexcept
  {
    return bq_out_.size();
  }

  /**
   * @brief Structural scan of the file chain.
   *
   * Returns a description of the first violated invariant, or nothing.
   * With `deep`, every file is re-read (bypassing the I/O counters) to
   * check its count, internal order, and recorded key range.
   */
  [[nodiscard]] std::optional<std::string>
  CheckInvariants(bool deep = false) const
  {
    const auto c = opts_.file_capacity;
    const auto half = (c + 1) / 2;
    if (bq_out_.size() > c) return "B^Q_out exceeds C";
    if (bq_in_.size() > opts_.buffer_capacity) return "B^Q_in exceeds its capacity";
    std::size_t idx = 0;
    const TaskFile *prev = nullptr;
    for (const auto &f : files_) {
      if (f.count > c) return "file " + std::to_string(idx) + " holds more than C tasks";
      if (f.count < half && files_.size() > 1) {
        return "file " + std::to_string(idx) + " holds fewer than ceil(C/2) tasks";
      }
      if (f.count == 0) return "empty file " + std::to_string(idx);
      if (f.key_hi < f.key_lo) return "file " + std::to_string(idx) + " has key_lo > key_hi";
      if (prev != nullptr && !(prev->key_hi < f.key_lo)) {
        return "files " + std::to_string(idx - 1) + " and " + std::to_string(idx) + " overlap";
      }
      if (deep) {
        auto records = DecodeTaskFile(opts_.store->Read(f.path));
        if (records.size() != f.count) return "file " + std::to_string(idx) + " count mismatch";
        for (std::size_t i = 1; i < records.size(); ++i) {
          if (!(records[i - 1].key < records[i].key)) return "file " + std::to_string(idx) + " unsorted";
        }
        if (records.front().key != f.key_lo || records.back().key != f.key_hi) {
          return "file " + std::to_string(idx) + " key range mismatch";
        }
      }
      prev = &f;
      ++idx;
    }
    return std::nullopt;
  }

 private:
  using FileIter = std::list<TaskFile>::iterator;

  void
  Refill()
  {
    if (!files_.empty()) {
      auto f = std::move(files_.front());
      files_.pop_front();
      on_disk_ -= f.count;
      auto records = ConsumeFile(f.path);
      bq_out_.assign(std::make_move_iterator(records.begin()), std::make_move_iterator(records.end()));
      return;
    }
    if (bq_in_.empty()) return;
    std::sort(bq_in_.begin(), bq_in_.end(),
              [](const TaskRecord &a, const TaskRecord &b) { return a.key < b.key; });
    auto n = std::min(opts_.file_capacity, bq_in_.size());
    bq_out_.assign(std::make_move_iterator(bq_in_.begin()), std::make_move_iterator(bq_in_.begin() + n));
    bq_in_.erase(bq_in_.begin(), bq_in_.begin() + n);
  }

  TaskFile
  Write(const std::vector<TaskRecord> &records)
  {
    TaskFile f{WriteFile(records), records.size(), records.front().key, records.back().key};
    on_disk_ += f.count;
    return f;
  }

  /// Splits sorted records into ⌈n/C⌉ pieces of near-equal size.
  [[nodiscard]] std::vector<std::vector<TaskRecord>>
  SplitBalanced(std::vector<TaskRecord> records) const
  {
    std::vector<std::vector<TaskRecord>> pieces;
    const auto n = records.size();
    if (n == 0) return pieces;
    const auto c = opts_.file_capacity;
    const auto k = (n + c - 1) / c;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < k; ++i) {
      auto len = n / k + (i < n % k ? 1 : 0);
      pieces.emplace_back(std::make_move_iterator(records.begin() + pos),
                          std::make_move_iterator(records.begin() + pos + len));
      pos += len;
    }
    return pieces;
  }

  /// Merges `group` into the file at `it`, splitting on overflow. Returns the iterator past the result.
  FileIter
  Rewrite(FileIter it, std::vector<TaskRecord> group)
  {
    auto existing = ConsumeFile(it->path);
    on_disk_ -= it->count;
    std::vector<TaskRecord> merged;
    merged.reserve(existing.size() + group.size());
    std::merge(std::make_move_iterator(existing.begin()), std::make_move_iterator(existing.end()),
               std::make_move_iterator(group.begin()), std::make_move_iterator(group.end()),
               std::back_inserter(merged),
               [](const TaskRecord &a, const TaskRecord &b) { return a.key < b.key; });
    it = files_.erase(it);
    for (auto &piece : SplitBalanced(std::move(merged))) {
      files_.insert(it, Write(piece));
    }
    return it;
  }

  // Borrow/merge with a neighbor for any underfull file in a multi-file chain.
  void
  RepairUnderflow()
  {
    const auto half = (opts_.file_capacity + 1) / 2;
    for (auto it = files_.begin(); it != files_.end() && files_.size() > 1;) {
      if (it->count >= half) {
        ++it;
        continue;
      }
      auto left = it;
      auto right = std::next(it);
      if (right == files_.end()) {
        right = it;
        left = std::prev(it);
      }
      auto a = ConsumeFile(left->path);
      auto b = ConsumeFile(right->path);
      on_disk_ -= left->count + right->count;
      a.insert(a.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
      auto next = files_.erase(left, std::next(right));
      for (auto &piece : SplitBalanced(std::move(a))) files_.insert(next, Write(piece));
      it = files_.begin();
    }
  }

  std::vector<TaskRecord> bq_in_{};
  std::deque<TaskRecord> bq_out_{};
  std::list<TaskFile> files_{};  // L^Q
  std::size_t on_disk_{0};
};

inline std::unique_ptr<TaskQueue>
MakeQueue(QueueKind kind, QueueOptions opts)
{
  if (kind == QueueKind::kStream) return std::make_unique<StreamQueue>(std::move(opts));
  return std::make_unique<LshQueue>(std::move(opts));
}

}  // namespace submine

#endif  // SUBMINE_TASK_QUEUE_HPP
