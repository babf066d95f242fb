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


#ifndef SUBMINE_GENERATORS_HPP
#define SUBMINE_GENERATORS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "submine/graph.hpp"

namespace submine::gen
{
/// Builds sorted, symmetric vertex objects for IDs `ids` from an edge list.
inline std::vector<Vertex>
FromEdges(const std::vector<VertexId> &ids, const std::vector<std::pair<VertexId, VertexId>> &edges)
{
  std::map<VertexId, Vertex> table;
  for (auto id : ids) table.emplace(id, Vertex{id, std::nullopt, {}});
  for (const auto &[a, b] : edges) {
    if (a == b) continue;
    table.at(a).adj.push_back(AdjItem{b, std::nullopt});
    table.at(b).adj.push_back(AdjItem{a, std::nullopt});
  }
  std::vector<Vertex> out;
  out.reserve(table.size());
  for (auto &[id, v] : table) {
    std::sort(v.adj.begin(), v.adj.end(), [](const AdjItem &x, const AdjItem &y) { return x.nb < y.nb; });
    v.adj.erase(std::unique(v.adj.begin(), v.adj.end(),
                            [](const AdjItem &x, const AdjItem &y) { return x.nb == y.nb; }),
                v.adj.end());
    out.push_back(std::move(v));
  }
  return out;
}

inline std::vector<VertexId>
Range(VertexId first, std::size_t n)
{
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), first);
  return ids;
}

/// Erdős–Rényi G(n, p) on IDs 1..n.
inline std::vector<Vertex>
Gnp(std::size_t n, double p, std::uint64_t seed)
{
  std::mt19937_64 rng{seed};
  std::bernoulli_distribution coin{p};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId a = 1; a <= n; ++a) {
    for (VertexId b = a + 1; b <= n; ++b) {
      if (coin(rng)) edges.emplace_back(a, b);
    }
  }
  return FromEdges(Range(1, n), edges);
}

/// Complete graph on IDs 1..n.
inline std::vector<Vertex>
Complete(std::size_t n)
{
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId a = 1; a <= n; ++a) {
    for (VertexId b = a + 1; b <= n; ++b) edges.emplace_back(a, b);
  }
  return FromEdges(Range(1, n), edges);
}

/// Assigns each vertex a label drawn uniformly from `alphabet` and annotates adjacency items.
inline void
AssignLabels(std::vector<Vertex> &g, const std::vector<std::string> &alphabet, std::uint64_t seed)
{
  std::mt19937_64 rng{seed};
  std::uniform_int_distribution<std::size_t> pick{0, alphabet.size() - 1};
  for (auto &v : g) v.label = alphabet[pick(rng)];
  AttachNeighborLabels(g);
}

inline const std::vector<std::string> &
DefaultAlphabet()
{
  static const std::vector<std::string> kAlphabet{"a", "b", "c", "d", "e", "f", "g"};
  return kAlphabet;
}

/// G(n, p) with labels uniform over a..g.
inline std::vector<Vertex>
LabeledGnp(std::size_t n, double p, std::uint64_t seed)
{
  auto g = Gnp(n, p, seed);
  AssignLabels(g, DefaultAlphabet(), seed ^ 0x5bd1e995ULL);
  return g;
}

/**
 * @brief Dense clusters joined by sparse bridges, with shuffled vertex IDs.
 *
 * `clusters` groups of `size` vertices; inside a group each pair is an edge
 * with probability `p_in`, across groups with probability `p_out`. IDs are
 * a random permutation of 1..clusters·size so ID order says nothing about
 * cluster membership.
 */
inline std::vector<Vertex>
HubCluster(std::size_t clusters, std::size_t size, double p_in, double p_out, std::uint64_t seed)
{
  std::mt19937_64 rng{seed};
  const auto n = clusters * size;
  auto ids = Range(1, n);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::bernoulli_distribution in{p_in};
  std::bernoulli_distribution out{p_out};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      bool same = a / size == b / size;
      if (same ? in(rng) : out(rng)) edges.emplace_back(ids[a], ids[b]);
    }
  }
  return FromEdges(Range(1, n), edges);
}

/// `leaves` vertices each adjacent to every one of `hubs` hub vertices (IDs 1..hubs).
inline std::vector<Vertex>
HubStar(std::size_t hubs, std::size_t leaves)
{
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId h = 1; h <= hubs; ++h) {
    for (VertexId l = hubs + 1; l <= hubs + leaves; ++l) edges.emplace_back(h, l);
  }
  return FromEdges(Range(1, hubs + leaves), edges);
}

/// The six-vertex labeled example data graph: 1b 2a 4b 5c 7b 8d.
inline std::vector<Vertex>
Figure4Data()
{
  auto g = FromEdges({1, 2, 4, 5, 7, 8}, {{1, 2}, {2, 4}, {2, 5}, {4, 5}, {5, 7}, {7, 8}});
  const std::map<VertexId, std::string> labels{{1, "b"}, {2, "a"}, {4, "b"}, {5, "c"}, {7, "b"}, {8, "d"}};
  for (auto &v : g) v.label = labels.at(v.id);
  AttachNeighborLabels(g);
  return g;
}

}  // namespace submine::gen

#endif  // SUBMINE_GENERATORS_HPP
