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

#ifndef SUBMINE_GRAPH_HPP
#define SUBMINE_GRAPH_HPP

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "submine/common.hpp"

namespace submine
{
/*######################################################################################
 * Data model
 *####################################################################################*/

/// One adjacency-list entry. For labeled graphs `attr` carries the neighbor label.
struct AdjItem {
  VertexId nb{};
  std::optional<std::string> attr{};

  friend bool operator==(const AdjItem &, const AdjItem &) = default;
};

/**
 * @brief A vertex with its (ascending, self-loop free) adjacency list.
 *
 * Adjacency lists held in caches or subgraphs may be pruned subsets of the
 * global list, so callers must not assume `adj` is the full neighborhood.
 */
struct Vertex {
  VertexId id{};
  std::optional<std::string> label{};
  std::vector<AdjItem> adj{};

  friend bool operator==(const Vertex &, const Vertex &) = default;

  [[nodiscard]] bool
  HasNeighbor(VertexId u) const
  {
    auto it = std::lower_bound(adj.begin(), adj.end(), u,
                               [](const AdjItem &a, VertexId key) { return a.nb < key; });
    return it != adj.end() && it->nb == u;
  }

  [[nodiscard]] const AdjItem *
  FindNeighbor(VertexId u) const
  {
    auto it = std::lower_bound(adj.begin(), adj.end(), u,
                               [](const AdjItem &a, VertexId key) { return a.nb < key; });
    return (it != adj.end() && it->nb == u) ? &*it : nullptr;
  }
};

/// Neighbors with a larger ID than `v`, as a suffix view of the sorted list.
inline std::span<const AdjItem>
GammaGt(const Vertex &v)
{
  auto it = std::upper_bound(v.adj.begin(), v.adj.end(), v.id,
                             [](VertexId key, const AdjItem &a) { return key < a.nb; });
  return {it, v.adj.end()};
}

/// The largest neighbor ID, if any.
inline std::optional<VertexId>
MaxGamma(const Vertex &v)
{
  if (v.adj.empty()) return std::nullopt;
  return v.adj.back().nb;
}

/// Copy of `v` whose adjacency is restricted to Γ_gt(v).
inline Vertex
PruneToGammaGt(const Vertex &v)
{
  auto gt = GammaGt(v);
  return Vertex{v.id, v.label, {gt.begin(), gt.end()}};
}

/// Deterministic owner of a vertex: multiplicative hash, then modulo.
constexpr WorkerId
PartitionOwner(VertexId id, std::uint32_t num_workers) noexcept
{
  if (num_workers <= 1) return 0;
  return static_cast<WorkerId>(Mix64(id * 0xD6E8FEB86659FD93ULL) % num_workers);
}

/**
 * @brief A task-local table of vertices.
 *
 * Adjacency lists inside a subgraph are whatever the task chose to keep;
 * `AddEdge` keeps both endpoints' lists sorted and duplicate free.
 */
class Subgraph
{
 public:
  using Table = std::map<VertexId, Vertex>;

  Vertex &
  AddVertex(VertexId id, std::optional<std::string> label = std::nullopt)
  {
    auto [it, inserted] = table_.try_emplace(id, Vertex{id, std::move(label), {}});
    return it->second;
  }

  /// Inserts (or replaces) a full vertex object.
  Vertex &
  PutVertex(Vertex v)
  {
    auto id = v.id;
    auto &slot = table_[id];
    slot = std::move(v);
    return slot;
  }

  /// Adds the undirected edge (u, w); both endpoints must already be present.
  void
  AddEdge(VertexId u, VertexId w)
  {
    if (u == w) throw ValidationError{"self-loop in subgraph at vertex " + std::to_string(u)};
    auto &a = Get(u);
    auto &b = Get(w);
    InsertArc(a, w, b.label);
    InsertArc(b, u, a.label);
  }

  [[nodiscard]] bool
  Contains(VertexId id) const
  {
    return table_.contains(id);
  }

  [[nodiscard]] const Vertex *
  Find(VertexId id) const
  {
    auto it = table_.find(id);
    return it == table_.end() ? nullptr : &it->second;
  }

  Vertex &
  Get(VertexId id)
  {
    auto it = table_.find(id);
    if (it == table_.end()) throw std::out_of_range{"vertex " + std::to_string(id) + " not in subgraph"};
    return it->second;
  }

  [[nodiscard]] std::size_t
  Size() const
  {
    return table_.size();
  }

  [[nodiscard]] bool
  Empty() const
  {
    return table_.empty();
  }

  [[nodiscard]] const Table &
  Vertices() const
  {
    return table_;
  }

  void
  Clear()
  {
    table_.clear();
  }

  friend bool operator==(const Subgraph &, const Subgraph &) = default;

 private:
  static void
  InsertArc(Vertex &from, VertexId to, const std::optional<std::string> &to_label)
  {
    auto it = std::lower_bound(from.adj.begin(), from.adj.end(), to,
                               [](const AdjItem &a, VertexId key) { return a.nb < key; });
    if (it != from.adj.end() && it->nb == to) return;
    from.adj.insert(it, AdjItem{to, to_label});
  }

  Table table_{};
};

/*######################################################################################
 * Text format: `vid \t [label] \t n1[:attr1] n2[:attr2] ...`
 *####################################################################################*/

namespace detail
{
inline VertexId
ParseId(std::string_view tok, std::size_t line_no)
{
  VertexId id{};
  const auto *first = tok.data();
  const auto *last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, id);
  if (tok.empty() || ec != std::errc{} || ptr != last) {
    throw ParseError{"line " + std::to_string(line_no) + ": invalid vertex id '" + std::string{tok} +
                     "'"};
  }
  return id;
}

inline std::string_view
Trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}
}  // namespace detail

/**
 * @brief Parses one vertex line.
 *
 * Fields are tab separated; trailing fields may be omitted. Unsorted
 * neighbor lists are sorted here. Duplicate neighbors and self-loops are
 * rejected with the line number in the message.
 */
inline Vertex
ParseVertexLine(std::string_view line, std::size_t line_no = 1)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  if (fields.size() > 3) {
    throw ParseError{"line " + std::to_string(line_no) + ": expected at most 3 tab-separated fields"};
  }

  Vertex v;
  v.id = detail::ParseId(detail::Trim(fields[0]), line_no);
  if (fields.size() >= 2) {
    auto label = detail::Trim(fields[1]);
    if (!label.empty()) v.label = std::string{label};
  }
  if (fields.size() == 3) {
    std::string_view rest = fields[2];
    std::size_t i = 0;
    while (i < rest.size()) {
      while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\r')) ++i;
      if (i >= rest.size()) break;
      auto j = rest.find(' ', i);
      if (j == std::string_view::npos) j = rest.size();
      auto tok = detail::Trim(rest.substr(i, j - i));
      i = j;
      if (tok.empty()) continue;
      AdjItem item;
      auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        item.nb = detail::ParseId(tok, line_no);
      } else {
        item.nb = detail::ParseId(tok.substr(0, colon), line_no);
        item.attr = std::string{tok.substr(colon + 1)};
      }
      v.adj.push_back(std::move(item));
    }
  }

  std::stable_sort(v.adj.begin(), v.adj.end(),
                   [](const AdjItem &a, const AdjItem &b) { return a.nb < b.nb; });
  for (std::size_t k = 0; k < v.adj.size(); ++k) {
    if (v.adj[k].nb == v.id) {
      throw ValidationError{"line " + std::to_string(line_no) + ": self-loop at vertex " +
                            std::to_string(v.id)};
    }
    if (k > 0 && v.adj[k].nb == v.adj[k - 1].nb) {
      throw ValidationError{"line " + std::to_string(line_no) + ": duplicate neighbor " +
                            std::to_string(v.adj[k].nb) + " of vertex " + std::to_string(v.id)};
    }
  }
  return v;
}

/// Inverse of ParseVertexLine (no trailing newline).
inline std::string
FormatVertexLine(const Vertex &v)
{
  std::string out = std::to_string(v.id);
  out += '\t';
  if (v.label) out += *v.label;
  out += '\t';
  for (std::size_t i = 0; i < v.adj.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(v.adj[i].nb);
    if (v.adj[i].attr) {
      out += ':';
      out += *v.adj[i].attr;
    }
  }
  return out;
}

/// Fills every adjacency attr with the neighbor's vertex label (missing labels stay empty).
inline void
AttachNeighborLabels(std::vector<Vertex> &graph)
{
  std::map<VertexId, std::optional<std::string>> labels;
  for (const auto &v : graph) labels[v.id] = v.label;
  for (auto &v : graph) {
    for (auto &item : v.adj) {
      auto it = labels.find(item.nb);
      if (it != labels.end()) item.attr = it->second;
    }
  }
}

/// Checks u ∈ Γ(v) ⇔ v ∈ Γ(u) and that every neighbor exists.
inline void
ValidateUndirected(std::span<const Vertex> graph)
{
  std::map<VertexId, const Vertex *> by_id;
  for (const auto &v : graph) by_id[v.id] = &v;
  for (const auto &v : graph) {
    for (const auto &item : v.adj) {
      auto it = by_id.find(item.nb);
      if (it == by_id.end()) {
        throw ValidationError{"vertex " + std::to_string(v.id) + " references missing vertex " +
                              std::to_string(item.nb)};
      }
      if (!it->second->HasNeighbor(v.id)) {
        throw ValidationError{"edge (" + std::to_string(v.id) + "," + std::to_string(item.nb) +
                              ") is not stored in both directions"};
      }
    }
  }
}

}  // namespace submine

#endif  // SUBMINE_GRAPH_HPP
