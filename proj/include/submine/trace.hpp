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

#ifndef SUBMINE_TRACE_HPP
#define SUBMINE_TRACE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "submine/common.hpp"

namespace submine
{
enum class TraceKind : std::uint8_t {
  kTaskFetched,
  kRequestSent,
  kResponseReceived,
  kTaskCompleted,
  kSpill,
  kFileLoad,
  kCacheAdmit,
  kEviction,
  kOverflowEnter,
  kOverflowExit,
};

inline constexpr std::array<std::string_view, 10> kTraceKindNames = {
    "task_fetched", "request_sent", "response_received", "task_completed", "spill",
    "file_load",    "cache_admit",  "eviction",          "overflow_enter", "overflow_exit",
};

inline std::string_view
TraceKindName(TraceKind k)
{
  return kTraceKindNames[static_cast<std::size_t>(k)];
}

inline std::optional<TraceKind>
TraceKindFromName(std::string_view name)
{
  for (std::size_t i = 0; i < kTraceKindNames.size(); ++i) {
    if (kTraceKindNames[i] == name) return static_cast<TraceKind>(i);
  }
  return std::nullopt;
}

/**
 * @brief One trace record.
 *
 * `peer` is the destination worker for requests and the source for
 * responses; `value` carries a kind-specific count (file size, overflow
 * extra, ...).
 */
struct TraceEvent {
  TraceKind kind{};
  WorkerId worker{0};
  std::uint64_t round{0};
  WorkerId peer{0};
  std::uint64_t value{0};
  std::vector<VertexId> ids{};

  friend bool operator==(const TraceEvent &, const TraceEvent &) = default;
};

/// Append-only per-worker event log. Not thread-safe: one appender per log.
class TraceLog
{
 public:
  void
  Append(TraceEvent e)
  {
    events_.push_back(std::move(e));
  }

  [[nodiscard]] const std::vector<TraceEvent> &
  Events() const noexcept
  {
    return events_;
  }

  [[nodiscard]] std::size_t
  Size() const noexcept
  {
    return events_.size();
  }

  /// Merges several per-worker logs; per-worker order is preserved.
  static TraceLog
  Concat(const std::vector<TraceLog> &logs)
  {
    TraceLog out;
    for (const auto &l : logs) {
      out.events_.insert(out.events_.end(), l.events_.begin(), l.events_.end());
    }
    return out;
  }

  /// Newline-delimited JSON, one record per event.
  void
  WriteNdjson(std::ostream &os) const
  {
    for (const auto &e : events_) {
      nlohmann::json j = {{"event", TraceKindName(e.kind)},
                          {"worker", e.worker},
                          {"round", e.round},
                          {"peer", e.peer},
                          {"value", e.value},
                          {"ids", e.ids}};
      os << j.dump() << '\n';
    }
  }

  static TraceLog
  ReadNdjson(std::istream &is)
  {
    TraceLog out;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::json::parse(line);
      auto kind = TraceKindFromName(j.at("event").get<std::string>());
      if (!kind) throw ParseError{"unknown trace event '" + j.at("event").get<std::string>() + "'"};
      TraceEvent e;
      e.kind = *kind;
      e.worker = j.at("worker").get<WorkerId>();
      e.round = j.at("round").get<std::uint64_t>();
      e.peer = j.value("peer", WorkerId{0});
      e.value = j.value("value", std::uint64_t{0});
      e.ids = j.value("ids", std::vector<VertexId>{});
      out.events_.push_back(std::move(e));
    }
    return out;
  }

 private:
  std::vector<TraceEvent> events_{};
};

/// Nullable trace sink handed to components; a null log records nothing.
class Tracer
{
 public:
  Tracer() = default;
  Tracer(TraceLog *log, WorkerId worker) : log_{log}, worker_{worker} {}

  void
  SetRound(std::uint64_t round) noexcept
  {
    round_ = round;
  }

  [[nodiscard]] bool
  Enabled() const noexcept
  {
    return log_ != nullptr;
  }

  void
  Emit(TraceKind kind, std::uint64_t value = 0, std::vector<VertexId> ids = {}, WorkerId peer = 0) const
  {
    if (log_ == nullptr) return;
    log_->Append(TraceEvent{kind, worker_, round_, peer, value, std::move(ids)});
  }

 private:
  TraceLog *log_{nullptr};
  WorkerId worker_{0};
  std::uint64_t round_{0};
};

}  // namespace submine

#endif  // SUBMINE_TRACE_HPP
