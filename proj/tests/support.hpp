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


#ifndef SUBMINE_TESTS_SUPPORT_HPP
#define SUBMINE_TESTS_SUPPORT_HPP

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "submine/apps/gmatch.hpp"
#include "submine/engine.hpp"
#include "submine/oracles.hpp"

namespace submine::support
{
/// Parses "1 2 3" result lines into ID vectors.
inline std::vector<VertexId>
ParseIds(const std::string &line)
{
  std::istringstream in{line};
  std::vector<VertexId> ids;
  VertexId id{};
  while (in >> id) ids.push_back(id);
  return ids;
}

inline std::multiset<std::vector<VertexId>>
ResultSets(const std::vector<Emitted> &results)
{
  std::multiset<std::vector<VertexId>> out;
  for (const auto &e : results) out.insert(ParseIds(e.line));
  return out;
}

inline std::multiset<std::vector<VertexId>>
AsMultiset(const std::set<std::vector<VertexId>> &s)
{
  return {s.begin(), s.end()};
}

inline oracle::OracleQuery
ToOracle(const apps::QueryGraph &q)
{
  oracle::OracleQuery o;
  o.labels = q.labels;
  o.edges.assign(q.edges.begin(), q.edges.end());
  return o;
}

/// A random connected query on 3..5 vertices labeled from a..g.
inline apps::QueryGraph
RandomQuery(std::uint64_t seed)
{
  std::mt19937_64 rng{seed};
  apps::QueryGraph q;
  const auto n = 3 + rng() % 3;
  const std::string alphabet = "abcdefg";
  for (VertexId v = 1; v <= n; ++v) q.labels[v] = std::string(1, alphabet[rng() % alphabet.size()]);
  for (VertexId v = 2; v <= n; ++v) {
    VertexId parent = 1 + rng() % (v - 1);
    q.edges.insert({parent, v});
  }
  for (VertexId a = 1; a <= n; ++a) {
    for (VertexId b = a + 1; b <= n; ++b) {
      if (rng() % 4 == 0) q.edges.insert({a, b});
    }
  }
  q.start = 1 + rng() % n;
  return q;
}

/// Lexicographically smallest maximum clique, from the oracle's maximal cliques.
inline std::vector<VertexId>
SmallestMaximumClique(std::span<const Vertex> g)
{
  std::vector<VertexId> best;
  for (const auto &c : oracle::MaximalCliquesBf(g)) {
    if (c.size() > best.size() || (c.size() == best.size() && c < best)) best = c;
  }
  return best;
}

}  // namespace submine::support

#endif  // SUBMINE_TESTS_SUPPORT_HPP
