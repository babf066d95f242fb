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

#ifndef SUBMINE_MINHASH_HPP
#define SUBMINE_MINHASH_HPP

#include <algorithm>
#include <compare>
#include <limits>
#include <span>
#include <vector>

#include "submine/common.hpp"

namespace submine
{
/**
 * @brief Scheduling key of a task: ℓ MinHash signatures plus a sequence number.
 *
 * Ordered lexicographically on the signatures, then on `seq`, so keys are
 * unique and the drain order is deterministic.
 */
struct TaskKey {
  std::vector<std::uint64_t> sigs{};
  std::uint64_t seq{0};

  friend bool operator==(const TaskKey &, const TaskKey &) = default;

  friend std::strong_ordering
  operator<=>(const TaskKey &a, const TaskKey &b)
  {
    if (auto c = std::lexicographical_compare_three_way(a.sigs.begin(), a.sigs.end(), b.sigs.begin(),
                                                        b.sigs.end());
        c != 0) {
      return c;
    }
    return a.seq <=> b.seq;
  }

  [[nodiscard]] bool
  IsSentinel() const noexcept
  {
    for (auto s : sigs) {
      if (s != std::numeric_limits<std::uint64_t>::max()) return false;
    }
    return true;
  }
};

/// A family of ℓ seeded 64-bit hashes; signature i is min over the set of h_i.
class MinHasher
{
 public:
  static constexpr std::uint64_t kSentinel = std::numeric_limits<std::uint64_t>::max();

  explicit MinHasher(std::vector<std::uint64_t> seeds) : seeds_{std::move(seeds)}
  {
    if (seeds_.empty()) throw ConfigError{"MinHash needs at least one hash function"};
  }

  /// Derives ℓ seeds from one run seed.
  static MinHasher
  FromRunSeed(std::uint64_t run_seed, std::size_t ell)
  {
    if (ell < 1) throw ConfigError{"ell must be >= 1"};
    std::vector<std::uint64_t> seeds(ell);
    std::uint64_t state = run_seed;
    for (auto &s : seeds) {
      state += 0x9E3779B97F4A7C15ULL;
      s = Mix64(state);
    }
    return MinHasher{std::move(seeds)};
  }

  [[nodiscard]] std::uint64_t
  Hash(std::size_t i, VertexId v) const noexcept
  {
    return Mix64(Mix64(v ^ seeds_[i]) + seeds_[i]);
  }

  /// Signatures of `pull_set`; the empty set yields the all-max sentinel, which sorts last.
  [[nodiscard]] std::vector<std::uint64_t>
  Signatures(std::span<const VertexId> pull_set) const
  {
    std::vector<std::uint64_t> sigs(seeds_.size(), kSentinel);
    for (auto v : pull_set) {
      for (std::size_t i = 0; i < seeds_.size(); ++i) sigs[i] = std::min(sigs[i], Hash(i, v));
    }
    return sigs;
  }

  [[nodiscard]] TaskKey
  Key(std::span<const VertexId> pull_set, std::uint64_t seq) const
  {
    return TaskKey{Signatures(pull_set), seq};
  }

  [[nodiscard]] std::size_t
  Ell() const noexcept
  {
    return seeds_.size();
  }

  [[nodiscard]] const std::vector<std::uint64_t> &
  Seeds() const noexcept
  {
    return seeds_;
  }

 private:
  std::vector<std::uint64_t> seeds_;
};

}  // namespace submine

#endif  // SUBMINE_MINHASH_HPP
