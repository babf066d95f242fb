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

#ifndef SUBMINE_TRANSPORT_HPP
#define SUBMINE_TRANSPORT_HPP

#include <atomic>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "submine/codec.hpp"

namespace submine
{
/*######################################################################################
 * Wire messages
 *####################################################################################*/

struct PullRequestMsg {
  WorkerId from{0};
  WorkerId to{0};
  std::uint64_t round{0};
  std::vector<VertexId> ids{};

  friend bool operator==(const PullRequestMsg &, const PullRequestMsg &) = default;
};

/// Vertices in the same order as the request's IDs.
struct PullResponseMsg {
  WorkerId from{0};
  WorkerId to{0};
  std::uint64_t round{0};
  std::vector<Vertex> vertices{};

  friend bool operator==(const PullResponseMsg &, const PullResponseMsg &) = default;
};

inline constexpr std::uint8_t kRequestTag = 1;
inline constexpr std::uint8_t kResponseTag = 2;

inline Bytes
EncodeMessage(const PullRequestMsg &m)
{
  Encoder enc;
  enc.U8(kRequestTag);
  enc.U32(m.from);
  enc.U32(m.to);
  enc.U64(m.round);
  enc.Ids(m.ids);
  return enc.Take();
}

inline Bytes
EncodeMessage(const PullResponseMsg &m)
{
  Encoder enc;
  enc.U8(kResponseTag);
  enc.U32(m.from);
  enc.U32(m.to);
  enc.U64(m.round);
  enc.U64(m.vertices.size());
  for (const auto &v : m.vertices) enc.Put(v);
  return enc.Take();
}

inline PullRequestMsg
DecodeRequest(const Bytes &frame)
{
  Decoder dec{frame};
  if (dec.U8() != kRequestTag) throw CorruptionError{"frame is not a pull request"};
  PullRequestMsg m;
  m.from = dec.U32();
  m.to = dec.U32();
  m.round = dec.U64();
  m.ids = dec.Ids();
  if (!dec.AtEnd()) throw CorruptionError{"trailing bytes in pull request"};
  return m;
}

inline PullResponseMsg
DecodeResponse(const Bytes &frame)
{
  Decoder dec{frame};
  if (dec.U8() != kResponseTag) throw CorruptionError{"frame is not a pull response"};
  PullResponseMsg m;
  m.from = dec.U32();
  m.to = dec.U32();
  m.round = dec.U64();
  auto n = dec.U64();
  for (std::uint64_t i = 0; i < n; ++i) m.vertices.push_back(dec.GetVertex());
  if (!dec.AtEnd()) throw CorruptionError{"trailing bytes in pull response"};
  return m;
}

/*######################################################################################
 * Transport
 *####################################################################################*/

enum class Channel : std::uint8_t { kRequest = 0, kResponse = 1 };

struct TransportStats {
  std::uint64_t frames{0};
  std::uint64_t bytes{0};
};

/// Point-to-point frame delivery between workers.
class Transport
{
 public:
  virtual ~Transport() = default;

  virtual void Send(WorkerId to, Channel ch, Bytes frame) = 0;

  /// Blocks until a frame arrives; empty once the transport is shut down and drained.
  virtual std::optional<Bytes> Receive(WorkerId self, Channel ch) = 0;

  virtual void Shutdown() = 0;

  [[nodiscard]] virtual TransportStats Stats() const = 0;
};

template <class T>
class BlockingQueue
{
 public:
  void
  Push(T v)
  {
    {
      std::lock_guard lock{mu_};
      items_.push_back(std::move(v));
    }
    cv_.notify_one();
  }

  std::optional<T>
  Pop()
  {
    std::unique_lock lock{mu_};
    cv_.wait(lock, [this] { return closed_ || !items_.empty(); });
    if (items_.empty()) return std::nullopt;
    auto v = std::move(items_.front());
    items_.pop_front();
    return v;
  }

  void
  Close()
  {
    {
      std::lock_guard lock{mu_};
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_{};
  std::condition_variable cv_{};
  std::deque<T> items_{};
  bool closed_{false};
};

/// Worker threads of one process exchanging frames through mailboxes.
class InProcTransport final : public Transport
{
 public:
  explicit InProcTransport(std::uint32_t num_workers) : boxes_(static_cast<std::size_t>(num_workers) * 2) {}

  void
  Send(WorkerId to, Channel ch, Bytes frame) override
  {
    frames_.fetch_add(1, std::memory_order_relaxed);
    bytes_.fetch_add(frame.size(), std::memory_order_relaxed);
    Box(to, ch).Push(std::move(frame));
  }

  std::optional<Bytes>
  Receive(WorkerId self, Channel ch) override
  {
    return Box(self, ch).Pop();
  }

  void
  Shutdown() override
  {
    for (auto &b : boxes_) b.Close();
  }

  [[nodiscard]] TransportStats
  Stats() const override
  {
    return {frames_.load(), bytes_.load()};
  }

 private:
  BlockingQueue<Bytes> &
  Box(WorkerId w, Channel ch)
  {
    auto idx = static_cast<std::size_t>(w) * 2 + static_cast<std::size_t>(ch);
    if (idx >= boxes_.size()) throw ProtocolError{"no such worker " + std::to_string(w)};
    return boxes_[idx];
  }

  std::vector<BlockingQueue<Bytes>> boxes_;
  std::atomic<std::uint64_t> frames_{0};
  std::atomic<std::uint64_t> bytes_{0};
};

}  // namespace submine

#endif  // SUBMINE_TRANSPORT_HPP
