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


#ifndef SUBMINE_APPS_QUASI_CLIQUE_HPP
#define SUBMINE_APPS_QUASI_CLIQUE_HPP

#include <optional>
#include <set>
#include <vector>

#include "submine/apps/dense_graph.hpp"
#include "submine/apps/maximal_cliques.hpp"
#include "submine/engine.hpp"

namespace submine::apps
{
struct QuasiCliqueParams {
  double gamma{0.6};
  std::size_t min_size{4};

  void
  Validate() const
  {
    if (!(gamma >= 0.5 && gamma <= 1.0)) throw ConfigError{"gamma must lie in [0.5, 1]"};
    if (min_size < 1) throw ConfigError{"min_size must be >= 1"};
  }
};

struct QuasiCliqueContext {
  std::uint64_t count{0};
};

/**
 * @brief Enumerates every γ-quasi-clique S with |S| ≥ min_size, once, in the
 * task of min(S).
 *
 * Iteration 1 pulls Γ_gt(v_i); iteration 2 pulls the remaining vertices
 * larger than v_i within two hops. G_i is the ego network on those vertices
 * plus v_i, with adjacency restricted to it. For γ ≥ 0.5 any two members of
 * a quasi-clique share a member neighbor, so G_i holds every answer.
 */
class QuasiCliqueApp
{
 public:
  using Context = QuasiCliqueContext;
  using Aggregate = std::uint64_t;

  explicit QuasiCliqueApp(QuasiCliqueParams params) : params_{params} { params_.Validate(); }

  void
  Seed(const Vertex &v, SeedScope<QuasiCliqueApp> &scope) const
  {
    Task<Context> t;
    t.subgraph.PutVertex(PruneToGammaGt(v));
    for (const auto &item : GammaGt(v)) t.Pull(item.nb);
    scope.AddTask(std::move(t));
  }

  bool
  Compute(Task<Context> &task, const Frontier &frontier, ComputeScope<QuasiCliqueApp> &scope) const
  {
    const auto vi = task.seed;
    for (const auto *u : frontier) task.subgraph.PutVertex(Restrict(*u, vi));

    if (task.iteration == 1) {
      std::set<VertexId> two_hop;
      for (const auto *u : frontier) {
        for (const auto &item : u->adj) {
          if (item.nb > vi && !task.subgraph.Contains(item.nb)) two_hop.insert(item.nb);
        }
      }
      if (!two_hop.empty()) {
        for (auto w : two_hop) task.Pull(w);
        return true;
      }
    }

    std::vector<VertexId> ids;
    ids.reserve(task.subgraph.Size());
    for (const auto &[id, v] : task.subgraph.Vertices()) ids.push_back(id);
    DenseGraph g{ids};
    for (const auto &[id, v] : task.subgraph.Vertices()) {
      for (const auto &item : v.adj) g.AddEdge(id, item.nb);
    }
    std::vector<std::size_t> candidates;
    for (std::size_t i = 1; i < g.Size(); ++i) candidates.push_back(i);

    EnumerateQuasiCliques(g, 0, candidates, params_.gamma, params_.min_size,
                          [&](const std::vector<std::size_t> &members) {
                            std::vector<VertexId> s;
                            s.reserve(members.size());
                            for (auto idx : members) s.push_back(g.Id(idx));
                            ++task.context.count;
                            scope.Emit(FormatIdLine(std::move(s)));
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

  [[nodiscard]] const QuasiCliqueParams &
  Params() const noexcept
  {
    return params_;
  }

 private:
  // Keeps adjacency items >= v_i; the rest can never join a set whose minimum is v_i.
  static Vertex
  Restrict(const Vertex &u, VertexId vi)
  {
    Vertex out{u.id, u.label, {}};
    for (const auto &item : u.adj) {
      if (item.nb >= vi) out.adj.push_back(item);
    }
    return out;
  }

  QuasiCliqueParams params_;
};

}  // namespace submine::apps

#endif  // SUBMINE_APPS_QUASI_CLIQUE_HPP
