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


#ifndef SUBMINE_APPS_MAXIMAL_CLIQUES_HPP
#define SUBMINE_APPS_MAXIMAL_CLIQUES_HPP

#include <optional>
#include <string>
#include <vector>

#include "submine/apps/dense_graph.hpp"
#include "submine/engine.hpp"

namespace submine::apps
{
struct MaximalCliquesContext {
  std::uint64_t count{0};
};

/// Formats IDs as an ascending, space-separated line.
inline std::string
FormatIdLine(std::vector<VertexId> ids)
{
  std::sort(ids.begin(), ids.end());
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(ids[i]);
  }
  return out;
}

/**
 * @brief Enumerates every maximal clique once, in the task of its minimum vertex.
 *
 * The task seeded at v_i pulls Γ_gt(v_i) with full adjacency lists and runs
 * pivoting Bron–Kerbosch with R = {v_i}, P = Γ_gt(v_i) and X = Γ(v_i) − Γ_gt(v_i).
 * A clique that a smaller neighbor of v_i could extend is rejected through X.
 * Responses are not pruned: members' lists must show their smaller neighbors.
 */
class MaximalCliquesApp
{
 public:
  using Context = MaximalCliquesContext;
  using Aggregate = std::uint64_t;

  void
  Seed(const Vertex &v, SeedScope<MaximalCliquesApp> &scope) const
  {
    Task<Context> t;
    t.subgraph.PutVertex(v);
    for (const auto &item : GammaGt(v)) t.Pull(item.nb);
    scope.AddTask(std::move(t));
  }

  bool
  Compute(Task<Context> &task, const Frontier &frontier, ComputeScope<MaximalCliquesApp> &scope) const
  {
    const auto &seed = task.subgraph.Get(task.seed);
    std::vector<VertexId> ids;
    ids.reserve(seed.adj.size() + 1);
    ids.push_back(seed.id);
    for (const auto &item : seed.adj) ids.push_back(item.nb);
    DenseGraph g{ids};
    for (const auto &item : seed.adj) g.AddEdge(seed.id, item.nb);
    for (const auto *u : frontier) {
      for (const auto &item : u->adj) g.AddEdge(u->id, item.nb);
    }

    Bitset p{g.Size()};
    Bitset x{g.Size()};
    for (const auto &item : seed.adj) {
      auto idx = *g.Index(item.nb);
      if (item.nb > seed.id) {
        p.Set(idx);
      } else {
        x.Set(idx);
      }
    }

    EnumerateMaximalCliques(g, {*g.Index(seed.id)}, p, x, [&](const std::vector<std::size_t> &r) {
      std::vector<VertexId> clique;
      clique.reserve(r.size());
      for (auto idx : r) clique.push_back(g.Id(idx));
      ++task.context.count;
      scope.Emit(FormatIdLine(std::move(clique)));
    });
    task.subgraph.Clear();
    return false;
  }

  [[nodiscard]] std::optional<Vertex>
  Respond(const Vertex &) const
  {
    return std::nullopt;
  }

  [[nodiscard]] Aggregate
  AggregateZero() const
  {
    return 0;
  }

  void
  AggregateTask(Aggregate &agg, const Task<Context> &task) const
  {
    agg += task.context.count;
  }

  void
  AggregateMerge(Aggregate &agg, const Aggregate &other) const
  {
    agg += other;
  }

  void
  EncodeContext(Encoder &enc, const Context &ctx) const
  {
    enc.U64(ctx.count);
  }

  [[nodiscard]] Context
  DecodeContext(Decoder &dec) const
  {
    return Context{dec.U64()};
  }
};

}  // namespace submine::apps

#endif  // SUBMINE_APPS_MAXIMAL_CLIQUES_HPP
