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

#ifndef SUBMINE_APPS_DENSE_GRAPH_HPP
#define SUBMINE_APPS_DENSE_GRAPH_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <vector>

#include "submine/common.hpp"

namespace submine::apps
{
/// Fixed-size bitset over local vertex indices.
class Bitset
{
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_{n}, words_((n + 63) / 64, 0) {}

  void
  Set(std::size_t i)
  {
    words_[i >> 6U] |= (1ULL << (i & 63U));
  }

  void
  Reset(std::size_t i)
  {
    words_[i >> 6U] &= ~(1ULL << (i & 63U));
  }

  [[nodiscard]] bool
  Test(std::size_t i) const
  {
    return (words_[i >> 6U] >> (i & 63U)) & 1ULL;
  }

  [[nodiscard]] bool
  None() const
  {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  [[nodiscard]] std::size_t
  Count() const
  {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  [[nodiscard]] std::size_t
  CountAnd(const Bitset &o) const
  {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return c;
  }

  Bitset &
  operator&=(const Bitset &o)
  {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  Bitset &
  operator|=(const Bitset &o)
  {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  /// this &= ~o
  Bitset &
  Subtract(const Bitset &o)
  {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset
  operator&(Bitset a, const Bitset &b)
  {
    a &= b;
    return a;
  }

  /// Calls f(i) for each set bit in ascending order.
  template <class F>
  void
  ForEach(F &&f) const
  {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits != 0) {
        auto b = static_cast<std::size_t>(std::countr_zero(bits));
        f(w * 64 + b);
        bits &= bits - 1;
      }
    }
  }

  [[nodiscard]] std::size_t
  First() const
  {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return n_;
  }

  [[nodiscard]] std::size_t
  Size() const noexcept
  {
    return n_;
  }

 private:
  std::size_t n_{0};
  std::vector<std::uint64_t> words_{};
};

/// Small undirected graph over a fixed vertex set, indexed 0..n-1 in ascending ID order.
class DenseGraph
{
 public:
  explicit DenseGraph(std::vector<VertexId> ids) : ids_{std::move(ids)}
  {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    adj_.assign(ids_.size(), Bitset{ids_.size()});
    for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
  }

  /// Adds (u, w) if both endpoints belong to the vertex set; returns whether it did.
  bool
  AddEdge(VertexId u, VertexId w)
  {
    auto a = index_.find(u);
    auto b = index_.find(w);
    if (a == index_.end() || b == index_.end() || u == w) return false;
    adj_[a->second].Set(b->second);
    adj_[b->second].Set(a->second);
    return true;
  }

  [[nodiscard]] std::size_t
  Size() const noexcept
  {
    return ids_.size();
  }

  [[nodiscard]] VertexId
  Id(std::size_t i) const
  {
    return ids_[i];
  }

  [[nodiscard]] std::optional<std::size_t>
  Index(VertexId id) const
  {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] const Bitset &
  Neighbors(std::size_t i) const
  {
    return adj_[i];
  }

  [[nodiscard]] bool
  Adjacent(std::size_t i, std::size_t j) const
  {
    return adj_[i].Test(j);
  }

  [[nodiscard]] Bitset
  All() const
  {
    Bitset b{ids_.size()};
    for (std::size_t i = 0; i < ids_.size(); ++i) b.Set(i);
    return b;
  }

 private:
  std::vector<VertexId> ids_;
  std::unordered_map<VertexId, std::size_t> index_{};
  std::vector<Bitset> adj_{};
};

/**
 * @brief Branch-and-bound maximum clique with a greedy-coloring bound.
 *
 * Searches cliques `fixed ∪ S` where S ⊆ `candidates` is a clique of `g` and
 * every fixed vertex is adjacent to every candidate. Finds the largest such
 * clique of total size at least `min_size`; among equally large ones the
 * lexicographically smallest S (by local index) wins, so the answer does not
 * depend on the coloring order. Branches whose color bound falls below the
 * best size so far are cut.
 */
class MaxCliqueSearch
{
 public:
  MaxCliqueSearch(const DenseGraph &g, std::size_t fixed_size, std::size_t min_size)
      : g_{g}, fixed_size_{fixed_size}, best_size_{min_size}
  {
  }

  /// Returns whether a clique of size >= min_size exists; see Best() for it.
  bool
  Run(const Bitset &candidates)
  {
    if (candidates.None()) {
      Offer();
      return found_;
    }
    Expand(candidates);
    return found_;
  }

  /// Local indices of the best S, ascending.
  [[nodiscard]] const std::vector<std::size_t> &
  Best() const noexcept
  {
    return best_;
  }

  [[nodiscard]] std::size_t
  BestSize() const noexcept
  {
    return best_size_;
  }

  [[nodiscard]] std::uint64_t
  Nodes() const noexcept
  {
    return nodes_;
  }

 private:
  void
  Color(const Bitset &p, std::vector<std::size_t> &order, std::vector<std::size_t> &colors) const
  {
    order.clear();
    colors.clear();
    Bitset uncolored = p;
    std::size_t color = 0;
    while (!uncolored.None()) {
      ++color;
      Bitset q = uncolored;
      while (!q.None()) {
        auto v = q.First();
        q.Reset(v);
        q.Subtract(g_.Neighbors(v));
        uncolored.Reset(v);
        order.push_back(v);
        colors.push_back(color);
      }
    }
  }

  void
  Offer()
  {
    auto size = fixed_size_ + current_.size();
    if (size < best_size_) return;
    auto sorted = current_;
    std::sort(sorted.begin(), sorted.end());
    if (!found_ || size > best_size_ || sorted < best_) {
      best_size_ = size;
      best_ = std::move(sorted);
      found_ = true;
    }
  }

  void
  Expand(Bitset p)
  {
    ++nodes_;
    std::vector<std::size_t> order;
    std::vector<std::size_t> colors;
    Color(p, order, colors);
    for (std::size_t k = order.size(); k-- > 0;) {
      if (fixed_size_ + current_.size() + colors[k] < best_size_) return;
      auto v = order[k];
      current_.push_back(v);
      auto np = p & g_.Neighbors(v);
      if (np.None()) {
        Offer();
      } else {
        Expand(std::move(np));
      }
      current_.pop_back();
      p.Reset(v);
    }
  }

  const DenseGraph &g_;
  std::size_t fixed_size_;
  std::size_t best_size_;
  std::vector<std::size_t> current_{};
  std::vector<std::size_t> best_{};
  bool found_{false};
  std::uint64_t nodes_{0};
};

/**
 * @brief Bron–Kerbosch with Tomita pivoting.
 *
 * Reports every R with R ⊇ `r0`, R a clique, P = X = ∅ at the leaf. `p0` are
 * the extension candidates and `x0` the excluded vertices; only adjacency
 * between P∪X vertices and P vertices is consulted.
 */
inline void
EnumerateMaximalCliques(const DenseGraph &g, const std::vector<std::size_t> &r0, const Bitset &p0,
                        const Bitset &x0, const std::function<void(const std::vector<std::size_t> &)> &report)
{
  std::vector<std::size_t> r = r0;
  std::function<void(Bitset, Bitset)> rec = [&](Bitset p, Bitset x) {
    if (p.None()) {
      if (x.None()) report(r);
      return;
    }
    std::size_t pivot = g.Size();
    std::size_t best = 0;
    auto consider = [&](std::size_t u) {
      auto c = p.CountAnd(g.Neighbors(u));
      if (pivot == g.Size() || c > best) {
        pivot = u;
        best = c;
      }
    };
    p.ForEach(consider);
    x.ForEach(consider);
    Bitset ext = p;
    ext.Subtract(g.Neighbors(pivot));
    ext.ForEach([&](std::size_t v) {
      r.push_back(v);
      rec(p & g.Neighbors(v), x & g.Neighbors(v));
      r.pop_back();
      p.Reset(v);
      x.Set(v);
    });
  };
  rec(p0, x0);
}

/// Minimum in-set degree for a γ-quasi-clique of `size` vertices: ⌈γ·(size−1)⌉.
inline std::size_t
QuasiCliqueDegree(double gamma, std::size_t size)
{
  if (size <= 1) return 0;
  // Guard against 0.6*5 = 3.0000000000000004 style rounding.
  return static_cast<std::size_t>(std::ceil(gamma * static_cast<double>(size - 1) - 1e-9));
}

/**
 * @brief Enumerates every vertex set S ⊇ {root} (S ⊆ root ∪ candidates) in which
 * each member has at least ⌈γ(|S|−1)⌉ neighbors inside S and |S| ≥ min_size.
 *
 * Set-enumeration tree over `candidates`, pruned by the degree upper bound
 * |N(w) ∩ S| + |N(w) ∩ remaining| of every member.
 */
inline void
EnumerateQuasiCliques(const DenseGraph &g, std::size_t root, const std::vector<std::size_t> &candidates,
                      double gamma, std::size_t min_size,
                      const std::function<void(const std::vector<std::size_t> &)> &report)
{
  const auto n = g.Size();

  // Every member of an answer has at least ⌈γ(min_size−1)⌉ neighbors inside it,
  // so vertices outside that degree core can be dropped up front.
  Bitset alive{n};
  alive.Set(root);
  for (auto c : candidates) alive.Set(c);
  const auto core = QuasiCliqueDegree(gamma, std::max<std::size_t>(min_size, 1));
  for (bool changed = true; changed;) {
    changed = false;
    alive.ForEach([&](std::size_t v) {
      if (alive.Test(v) && g.Neighbors(v).CountAnd(alive) < core) {
        alive.Reset(v);
        changed = true;
      }
    });
  }
  if (!alive.Test(root)) return;
  std::vector<std::size_t> cands;
  for (auto c : candidates) {
    if (alive.Test(c)) cands.push_back(c);
  }

  std::vector<std::size_t> members{root};
  Bitset in_set{n};
  in_set.Set(root);

  std::vector<Bitset> remaining_after(cands.size() + 1, Bitset{n});
  for (std::size_t j = cands.size(); j-- > 0;) {
    remaining_after[j] = remaining_after[j + 1];
    remaining_after[j].Set(cands[j]);
  }

  auto feasible = [&](const Bitset &rest) {
    auto target = std::max(members.size(), min_size);
    auto need = QuasiCliqueDegree(gamma, target);
    for (auto w : members) {
      const auto &nw = g.Neighbors(w);
      if (nw.CountAnd(in_set) + nw.CountAnd(rest) < need) return false;
    }
    return true;
  };

  auto valid = [&] {
    if (members.size() < min_size) return false;
    auto need = QuasiCliqueDegree(gamma, members.size());
    for (auto w : members) {
      if (g.Neighbors(w).CountAnd(in_set) < need) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (valid()) report(members);
    for (std::size_t j = start; j < cands.size(); ++j) {
      auto u = cands[j];
      members.push_back(u);
      in_set.Set(u);
      if (feasible(remaining_after[j + 1])) rec(j + 1);
      in_set.Reset(u);
      members.pop_back();
    }
  };
  if (feasible(remaining_after[0])) rec(0);
}

}  // namespace submine::apps

#endif  // SUBMINE_APPS_DENSE_GRAPH_HPP
