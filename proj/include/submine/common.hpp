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

#ifndef SUBMINE_COMMON_HPP
#define SUBMINE_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace submine
{
using VertexId = std::uint64_t;
using WorkerId = std::uint32_t;
using Bytes = std::vector<std::uint8_t>;

/// Malformed input text (graph files, query files, config).
class ParseError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but violates a structural rule (duplicate IDs, self-loops, ...).
class ValidationError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// A component was driven outside its contract (e.g. unpinning an unpinned entry).
class ProtocolError : public std::logic_error
{
 public:
  using std::logic_error::logic_error;
};

/// Unrecoverable file I/O or on-disk corruption.
class IoError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid job or app configuration.
class ConfigError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

/// 64-bit finalizer from splitmix64; a bijection with full avalanche.
constexpr std::uint64_t
Mix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

/// FNV-1a over a byte range; used for dataset checksums in run manifests.
inline std::uint64_t
Fnv1a64(const void *data, std::size_t len, std::uint64_t h = 0xCBF29CE484222325ULL) noexcept
{
  const auto *p = static_cast<const unsigned char *>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace submine

#endif  // SUBMINE_COMMON_HPP
