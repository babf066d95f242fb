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

#ifndef SUBMINE_LOCAL_TABLE_HPP
#define SUBMINE_LOCAL_TABLE_HPP

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "submine/graph.hpp"

namespace submine
{
/**
 * @brief The vertices owned by one worker, sorted by ID.
 *
 * Immutable once built, so any number of threads may read it concurrently.
 */
class LocalTable
{
 public:
  LocalTable() = default;

  LocalTable(WorkerId worker, std::uint32_t num_workers, std::vector<Vertex> vertices)
      : worker_{worker}, num_workers_{num_workers}, vertices_{std::move(vertices)}
  {
    std::sort(vertices_.begin(), vertices_.end(),
              [](const Vertex &a, const Vertex &b) { return a.id < b.id; });
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      if (PartitionOwner(vertices_[i].id, num_workers_) != worker_) {
        throw ValidationError{"vertex " + std::to_string(vertices_[i].id) + " is not owned by worker " +
                              std::to_string(worker_)};
      }
      if (i > 0 && vertices_[i].id == vertices_[i - 1].id) {
        throw ValidationError{"duplicate vertex id " + std::to_string(vertices_[i].id)};
      }
    }
  }

  [[nodiscard]] const Vertex *
  Find(VertexId id) const
  {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                               [](const Vertex &v, VertexId key) { return v.id < key; });
    return (it != vertices_.end() && it->id == id) ? &*it : nullptr;
  }

  /// True iff `id` hashes to this worker, whether or not such a vertex exists.
  [[nodiscard]] bool
  Owns(VertexId id) const noexcept
  {
    return PartitionOwner(id, num_workers_) == worker_;
  }

  [[nodiscard]] WorkerId
  Worker() const noexcept
  {
    return worker_;
  }

  [[nodiscard]] std::uint32_t
  NumWorkers() const noexcept
  {
    return num_workers_;
  }

  [[nodiscard]] std::size_t
  Size() const noexcept
  {
    return vertices_.size();
  }

  [[nodiscard]] const std::vector<Vertex> &
  Vertices() const noexcept
  {
    return vertices_;
  }

 private:
  WorkerId worker_{0};
  std::uint32_t num_workers_{1};
  std::vector<Vertex> vertices_{};
};

struct GraphConfig {
  std::uint32_t num_workers{1};
  std::uint64_t num_vertices{0};
  double avg_degree{0.0};
  std::string input_path{};
};

/// Splits a whole graph among `num_workers` tables by PartitionOwner.
inline std::vector<LocalTable>
PartitionGraph(std::vector<Vertex> graph, std::uint32_t num_workers)
{
  if (num_workers < 1) throw ConfigError{"num_workers must be >= 1"};
  std::vector<std::vector<Vertex>> parts(num_workers);
  for (auto &v : graph) parts[PartitionOwner(v.id, num_workers)].push_back(std::move(v));
  std::vector<LocalTable> tables;
  tables.reserve(num_workers);
  for (std::uint32_t w = 0; w < num_workers; ++w) tables.emplace_back(w, num_workers, std::move(parts[w]));
  return tables;
}

/// Reads every vertex line of a text file (blank lines and `#` comments skipped).
inline std::vector<Vertex>
ReadGraphFile(const std::string &path)
{
  std::ifstream in{path};
  if (!in) throw IoError{"cannot open input file '" + path + "'"};
  std::vector<Vertex> graph;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    graph.push_back(ParseVertexLine(line, line_no));
  }
  if (in.bad()) throw IoError{"read failure on '" + path + "'"};
  std::sort(graph.begin(), graph.end(), [](const Vertex &a, const Vertex &b) { return a.id < b.id; });
  for (std::size_t i = 1; i < graph.size(); ++i) {
    if (graph[i].id == graph[i - 1].id) {
      throw ValidationError{"duplicate vertex id " + std::to_string(graph[i].id) + " in '" + path + "'"};
    }
  }
  return graph;
}

/**
 * @brief Reads a whitespace-separated edge list (`a b` per line, `#` comments),
 * as distributed by public graph collections. Self-loops and repeated edges
 * are dropped; every endpoint becomes an unlabeled vertex.
 */
inline std::vector<Vertex>
ReadEdgeListFile(const std::string &path)
{
  std::ifstream in{path};
  if (!in) throw IoError{"cannot open input file '" + path + "'"};
  std::unordered_map<VertexId, std::vector<AdjItem>> adj;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;
    std::istringstream ss{line};
    std::string a;
    std::string b;
    if (!(ss >> a >> b)) throw ParseError{"line " + std::to_string(line_no) + ": expected two vertex ids"};
    auto u = detail::ParseId(a, line_no);
    auto w = detail::ParseId(b, line_no);
    if (u == w) continue;
    adj[u].push_back(AdjItem{w, std::nullopt});
    adj[w].push_back(AdjItem{u, std::nullopt});
  }
  if (in.bad()) throw IoError{"read failure on '" + path + "'"};
  std::vector<Vertex> graph;
  graph.reserve(adj.size());
  for (auto &[id, items] : adj) {
    std::sort(items.begin(), items.end(), [](const AdjItem &x, const AdjItem &y) { return x.nb < y.nb; });
    items.erase(std::unique(items.begin(), items.end(), [](const AdjItem &x, const AdjItem &y) { return x.nb == y.nb; }),
                items.end());
    graph.push_back(Vertex{id, std::nullopt, std::move(items)});
  }
  std::sort(graph.begin(), graph.end(), [](const Vertex &x, const Vertex &y) { return x.id < y.id; });
  return graph;
}

inline void
WriteGraphFile(const std::string &path, std::span<const Vertex> graph)
{
  std::ofstream out{path, std::ios::trunc};
  if (!out) throw IoError{"cannot open output file '" + path + "'"};
  for (const auto &v : graph) out << FormatVertexLine(v) << '\n';
  if (!out) throw IoError{"write failure on '" + path + "'"};
}

/// Fills the size statistics of `cfg` from an in-memory graph.
inline void
FillGraphStats(GraphConfig &cfg, std::span<const Vertex> graph)
{
  cfg.num_vertices = graph.size();
  std::uint64_t degree_sum = 0;
  for (const auto &v : graph) degree_sum += v.adj.size();
  cfg.avg_degree = graph.empty() ? 0.0 : static_cast<double>(degree_sum) / static_cast<double>(graph.size());
}

/// Loads `cfg.input_path` and splits it among `cfg.num_workers` local tables.
inline std::vector<LocalTable>
LoadGraph(GraphConfig &cfg)
{
  if (cfg.num_workers < 1) throw ConfigError{"num_workers must be >= 1"};
  auto graph = ReadGraphFile(cfg.input_path);
  FillGraphStats(cfg, graph);
  return PartitionGraph(std::move(graph), cfg.num_workers);
}

}  // namespace submine

#endif  // SUBMINE_LOCAL_TABLE_HPP
