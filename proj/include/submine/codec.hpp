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

#ifndef SUBMINE_CODEC_HPP
#define SUBMINE_CODEC_HPP

#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "submine/common.hpp"
#include "submine/graph.hpp"

namespace submine
{
/// Thrown when a byte stream cannot be decoded.
class CorruptionError : public IoError
{
 public:
  using IoError::IoError;
};

/// Little-endian, length-prefixed flat encoder.
class Encoder
{
 public:
  void
  U8(std::uint8_t v)
  {
    buf_.push_back(v);
  }

  void
  U32(std::uint32_t v)
  {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void
  U64(std::uint64_t v)
  {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }

  void
  Str(const std::string &s)
  {
    U64(s.size());
    buf_.insert(buf_.end(), s.begin(), s.end());
  }

  void
  Raw(const Bytes &b)
  {
    U64(b.size());
    buf_.insert(buf_.end(), b.begin(), b.end());
  }

  void
  OptStr(const std::optional<std::string> &s)
  {
    U8(s ? 1 : 0);
    if (s) Str(*s);
  }

  void
  Ids(const std::vector<VertexId> &ids)
  {
    U64(ids.size());
    for (auto id : ids) U64(id);
  }

  void
  Put(const Vertex &v)
  {
    U64(v.id);
    OptStr(v.label);
    U64(v.adj.size());
    for (const auto &item : v.adj) {
      U64(item.nb);
      OptStr(item.attr);
    }
  }

  void
  Put(const Subgraph &g)
  {
    U64(g.Size());
    for (const auto &[id, v] : g.Vertices()) Put(v);
  }

  [[nodiscard]] const Bytes &
  Buffer() const noexcept
  {
    return buf_;
  }

  Bytes
  Take() noexcept
  {
    return std::move(buf_);
  }

 private:
  Bytes buf_{};
};

/// Bounds-checked reader over an encoded buffer.
class Decoder
{
 public:
  explicit Decoder(const Bytes &buf) : data_{buf.data()}, size_{buf.size()} {}
  Decoder(const std::uint8_t *data, std::size_t size) : data_{data}, size_{size} {}

  std::uint8_t
  U8()
  {
    Need(1);
    return data_[pos_++];
  }

  std::uint32_t
  U32()
  {
    Need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }

  std::uint64_t
  U64()
  {
    Need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }

  std::string
  Str()
  {
    auto n = Length();
    std::string s(reinterpret_cast<const char *>(data_ + pos_), n);
    pos_ += n;
    return s;
  }

  Bytes
  Raw()
  {
    auto n = Length();
    Bytes b(data_ + pos_, data_ + pos_ + n);
    pos_ += n;
    return b;
  }

  std::optional<std::string>
  OptStr()
  {
    auto flag = U8();
    if (flag > 1) throw CorruptionError{"bad optional flag"};
    if (flag == 0) return std::nullopt;
    return Str();
  }

  std::vector<VertexId>
  Ids()
  {
    auto n = Count(8);
    std::vector<VertexId> ids(n);
    for (auto &id : ids) id = U64();
    return ids;
  }

  Vertex
  GetVertex()
  {
    Vertex v;
    v.id = U64();
    v.label = OptStr();
    auto n = Count(9);
    v.adj.resize(n);
    for (auto &item : v.adj) {
      item.nb = U64();
      item.attr = OptStr();
    }
    return v;
  }

  Subgraph
  GetSubgraph()
  {
    Subgraph g;
    auto n = Count(17);
    for (std::uint64_t i = 0; i < n; ++i) g.PutVertex(GetVertex());
    return g;
  }

  [[nodiscard]] bool
  AtEnd() const noexcept
  {
    return pos_ == size_;
  }

  [[nodiscard]] std::size_t
  Position() const noexcept
  {
    return pos_;
  }

 private:
  void
  Need(std::size_t n) const
  {
    if (size_ - pos_ < n) throw CorruptionError{"truncated buffer"};
  }

  std::size_t
  Length()
  {
    auto n = U64();
    if (n > size_ - pos_) throw CorruptionError{"length prefix exceeds buffer"};
    return static_cast<std::size_t>(n);
  }

  // Element count, sanity-checked against the remaining bytes.
  std::size_t
  Count(std::size_t min_elem_size)
  {
    auto n = U64();
    if (n > (size_ - pos_) / min_elem_size) throw CorruptionError{"element count exceeds buffer"};
    return static_cast<std::size_t>(n);
  }

  const std::uint8_t *data_;
  std::size_t size_;
  std::size_t pos_{0};
};

}  // namespace submine

#endif  // SUBMINE_CODEC_HPP
