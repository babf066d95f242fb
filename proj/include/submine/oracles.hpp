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


#ifndef SUBMINE_ORACLES_HPP
#define SUBMINE_ORACLES_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "submine/graph.hpp"

namespace submine::oracle
{
/// Raised when an input exceeds what exhaustive search is allowed to attempt.
class OracleLimitError : public std::runtime_error
{
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kTriangleLimit = 2000;
inline constexpr std::size_t kCliqueLimit = 400;
inline constexpr std::size_t kQuasiCliqueLimit = 24;
inline constexpr double kMatchAssignmentLimit = 5e7;

namespace detail
{
/// Dense adjacency matrix over the graph's IDs (index = rank of ID).
struct Matrix {
  std::vector<VertexId> ids{};
  std::map<VertexId, std::size_t> index{};
  std::vector<std::vector<bool>> adj{};

  explicit Matrix(std::span<const Vertex> g)
  {
    for (const auto &v : g) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) index[ids[i]] = i;
    adj.assign(ids.size(), std::vector<bool>(ids.size(), false));
    for (const auto &v : g) {
      for (const auto &item : v.adj) {
        auto it = index.find(item.nb);
        if (it == index.end()) continue;
        adj[index[v.id]][it->second] = true;
        adj[it->second][index[v.id]] = true;
      }
    }
  }

  [[nodiscard]] std::size_t
  Size() const
  {
    return ids.size();
  }
};

inline void
Guard(std::size_t n, std::size_t limit, const char *what)
{
  if (n > limit) {
    throw OracleLimitError{std::string{what} + " oracle refuses graphs with more than " + std::to_string(limit) +
                           " vertices (got " + std::to_string(n) + ")"};
  }
}

// Plain Bron–Kerbosch without pivoting over ordered sets of matrix indices.
inline void
BronKerbosch(const Matrix &m, std::vector<std::size_t> &r, std::set<std::size_t> p, std::set<std::size_t> x,
             std::set<std::vector<VertexId>> &out)
{
  if (p.empty() && x.empty()) {
    std::vector<VertexId> clique;
    for (auto i : r) clique.push_back(m.ids[i]);
    std::sort(clique.begin(), clique.end());
    out.insert(std::move(clique));
    return;
  }
  while (!p.empty()) {
    auto v = *p.begin();
    std::set<std::size_t> np;
    std::set<std::size_t> nx;
    for (auto u : p) {
      if (m.adj[v][u]) np.insert(u);
    }
    for (auto u : x) {
      if (m.adj[v][u]) nx.insert(u);
    }
    r.push_back(v);
    BronKerbosch(m, r, std::move(np), std::move(nx), out);
    r.pop_back();
    p.erase(v);
    x.insert(v);
  }
}
}  // namespace detail

/// Number of triangles, by checking every vertex triple.
inline std::uint64_t
TriCountBf(std::span<const Vertex> g)
{
  detail::Guard(g.size(), kTriangleLimit, "triangle");
  detail::Matrix m{g};
  std::uint64_t count = 0;
  const auto n = m.Size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!m.adj[a][b]) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (m.adj[a][c] && m.adj[b][c]) ++count;
      }
    }
  }
  return count;
}

/// Every triangle as an ascending ID triple.
inline std::set<std::vector<VertexId>>
TrianglesBf(std::span<const Vertex> g)
{
  detail::Guard(g.size(), kTriangleLimit, "triangle");
  detail::Matrix m{g};
  std::set<std::vector<VertexId>> out;
  const auto n = m.Size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!m.adj[a][b]) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (m.adj[a][c] && m.adj[b][c]) out.insert({m.ids[a], m.ids[b], m.ids[c]});
      }
    }
  }
  return out;
}

/// All maximal cliques, each as ascending IDs.
inline std::set<std::vector<VertexId>>
MaximalCliquesBf(std::span<const Vertex> g)
{
  detail::Guard(g.size(), kCliqueLimit, "maximal clique");
  detail::Matrix m{g};
  std::set<std::size_t> p;
  for (std::size_t i = 0; i < m.Size(); ++i) p.insert(i);
  std::set<std::vector<VertexId>> out;
  std::vector<std::size_t> r;
  detail::BronKerbosch(m, r, std::move(p), {}, out);
  return out;
}

/// Size of a maximum clique (0 for the empty graph).
inline std::size_t
MaxCliqueBf(std::span<const Vertex> g)
{
  std::size_t best = 0;
  for (const auto &c : MaximalCliquesBf(g)) best = std::max(best, c.size());
  return best;
}

/// True if `ids` are distinct vertices of `g` that are pairwise adjacent.
inline bool
IsClique(std::span<const Vertex> g, const std::vector<VertexId> &ids)
{
  std::map<VertexId, const Vertex *> by_id;
  for (const auto &v : g) by_id[v.id] = &v;
  std::set<VertexId> uniq{ids.begin(), ids.end()};
  if (uniq.size() != ids.size()) return false;
  for (auto a : ids) {
    auto it = by_id.find(a);
    if (it == by_id.end()) return false;
    for (auto b : ids) {
      if (a != b && !it->second->HasNeighbor(b)) return false;
    }
  }
  return true;
}

/**
 * @brief Every vertex subset S with |S| ≥ min_size in which each member has
 * at least ⌈γ(|S|−1)⌉ neighbors inside S, by scanning all 2^n subsets.
 */
inline std::set<std::vector<VertexId>>
QuasiCliquesBf(std::span<const Vertex> g, double gamma, std::size_t min_size)
{
  detail::Guard(g.size(), kQuasiCliqueLimit, "quasi-clique");
  detail::Matrix m{g};
  const auto n = m.Size();
  std::vector<std::uint32_t> nbmask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.adj[i][j]) nbmask[i] |= (1U << j);
    }
  }
  std::set<std::vector<VertexId>> out;
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t s = 1; s < total; ++s) {
    auto mask = static_cast<std::uint32_t>(s);
    auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k < min_size) continue;
    // ⌈γ(k−1)⌉ via exact comparison deg >= γ(k−1) with a small tolerance.
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if ((mask >> i & 1U) == 0) continue;
      auto deg = static_cast<double>(std::popcount(nbmask[i] & mask));
      if (deg + 1e-9 < gamma * static_cast<double>(k - 1)) ok = false;
    }
    if (!ok) continue;
    std::vector<VertexId> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) members.push_back(m.ids[i]);
    }
    out.insert(std::move(members));
  }
  return out;
}

/// A labeled query for the matching oracle: labels and edges by query vertex.
struct OracleQuery {
  std::map<VertexId, std::string> labels{};
  std::vector<std::pair<VertexId, VertexId>> edges{};
};

/**
 * @brief Every injective assignment of query vertices to data vertices that
 * preserves labels and maps every query edge onto a data edge.
 *
 * Enumerates the full product of label classes and filters; each result is
 * listed in ascending query-vertex order.
 */
inline std::set<std::vector<VertexId>>
MatchBf(std::span<const Vertex> g, const OracleQuery &q)
{
  std::map<VertexId, const Vertex *> by_id;
  std::map<std::string, std::vector<VertexId>> by_label;
  for (const auto &v : g) {
    by_id[v.id] = &v;
    if (v.label) by_label[*v.label].push_back(v.id);
  }
  std::vector<VertexId> qids;
  std::vector<const std::vector<VertexId> *> classes;
  static const std::vector<VertexId> kEmpty;
  double product = 1.0;
  for (const auto &[qid, label] : q.labels) {
    qids.push_back(qid);
    auto it = by_label.find(label);
    classes.push_back(it == by_label.end() ? &kEmpty : &it->second);
    product *= static_cast<double>(classes.back()->size());
  }
  if (product > kMatchAssignmentLimit) {
    throw OracleLimitError{"matching oracle refuses " + std::to_string(product) + " assignments"};
  }
  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < qids.size(); ++i) pos[qids[i]] = i;

  std::set<std::vector<VertexId>> out;
  if (qids.empty()) return out;
  std::vector<std::size_t> digit(qids.size(), 0);
  for (const auto *c : classes) {
    if (c->empty()) return out;
  }
  while (true) {
    std::vector<VertexId> assign(qids.size());
    for (std::size_t i = 0; i < qids.size(); ++i) assign[i] = (*classes[i])[digit[i]];
    bool ok = std::set<VertexId>{assign.begin(), assign.end()}.size() == assign.size();
    for (const auto &[a, b] : q.edges) {
      if (!ok) break;
      ok = by_id.at(assign[pos.at(a)])->HasNeighbor(assign[pos.at(b)]);
    }
    if (ok) out.insert(std::move(assign));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == classes[i]->size()) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

}  // namespace submine::oracle

#endif  // SUBMINE_ORACLES_HPP
