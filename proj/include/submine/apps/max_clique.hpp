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


#ifndef SUBMINE_APPS_MAX_CLIQUE_HPP
#define SUBMINE_APPS_MAX_CLIQUE_HPP

#include <optional>
#include <vector>

#include "submine/apps/dense_graph.hpp"
#include "submine/engine.hpp"

namespace submine::apps
{
/// Best clique so far: its size and member IDs (ascending).
struct QmaxValue {
  std::uint64_t size{0};
  std::vector<VertexId> witness{};

  friend bool operator==(const QmaxValue &, const QmaxValue &) = default;

  /// Larger wins; among equal sizes the lexicographically smaller witness wins.
  void
  Offer(const QmaxValue &o)
  {
    if (o.size > size || (o.size == size && o.size > 0 && o.witness < witness)) *this = o;
  }
};

struct CliqueContext {
  std::uint32_t phase{0};
  QmaxValue best{};
};

struct MaxCliqueOptions {
  bool prune_respond{true};
};

/**
 * @brief Maximum clique. The task seeded at v_i pulls Γ_gt(v_i), builds G_i
 * over {v_i} ∪ Γ_gt(v_i) and runs branch and bound with v_i in the clique.
 *
 * The search is bounded below by the visible |Q_max|, so a task only reports
 * cliques at least that large.
 */
class MaxCliqueApp
{
 public:
  using Context = CliqueContext;
  using Aggregate = QmaxValue;

  MaxCliqueApp() = default;
  explicit MaxCliqueApp(MaxCliqueOptions opts) : opts_{opts} {}

  void
  Seed(const Vertex &v, SeedScope<MaxCliqueApp> &scope) const
  {
    Task<Context> t;
    t.subgraph.AddVertex(v.id, v.label);
    for (const auto &item : GammaGt(v)) t.Pull(item.nb);
    scope.AddTask(std::move(t));
  }

  bool
  Compute(Task<Context> &task, const Frontier &frontier, ComputeScope<MaxCliqueApp> &scope) const
  {
    const auto vi = task.seed;
    std::vector<VertexId> members;
    members.reserve(frontier.size());
    for (const auto *u : frontier) members.push_back(u->id);
    std::sort(members.begin(), members.end());

    auto in_gi = [&](VertexId x) { return x == vi || std::binary_search(members.begin(), members.end(), x); };
    for (const auto *u : frontier) {
      Vertex filtered{u->id, u->label, {}};
      for (const auto &item : u->adj) {
        if (in_gi(item.nb)) filtered.adj.push_back(item);
      }
      task.subgraph.PutVertex(std::move(filtered));
    }

    DenseGraph g{members};
    for (const auto &[id, v] : task.subgraph.Vertices()) {
      if (id == vi) continue;
      for (const auto &item : v.adj) g.AddEdge(id, item.nb);
    }

    auto bound = scope.Aggregate().size;
    MaxCliqueSearch search{g, 1, static_cast<std::size_t>(std::max<std::uint64_t>(bound, 1))};
    if (search.Run(g.All())) {
      QmaxValue found{search.BestSize(), {vi}};
      for (auto idx : search.Best()) found.witness.push_back(g.Id(idx));
      task.context.best = std::move(found);
    }
    task.context.phase = 1;
    task.subgraph.Clear();
    return false;
  }

  [[nodiscard]] std::optional<Vertex>
  Respond(const Vertex &v) const
  {
    if (!opts_.prune_respond) return std::nullopt;
    return PruneToGammaGt(v);
  }

  [[nodiscard]] Aggregate
  AggregateZero() const
  {
    return {};
  }

  void
  AggregateTask(Aggregate &agg, const Task<Context> &task) const
  {
    agg.Offer(task.context.best);
  }

  void
  AggregateMerge(Aggregate &agg, const Aggregate &other) const
  {
    agg.Offer(other);
  }

  void
  EncodeContext(Encoder &enc, const Context &ctx) const
  {
    enc.U32(ctx.phase);
    enc.U64(ctx.best.size);
    enc.Ids(ctx.best.witness);
  }

  [[nodiscard]] Context
  DecodeContext(Decoder &dec) const
  {
    Context ctx;
    ctx.phase = dec.U32();
    ctx.best.size = dec.U64();
    ctx.best.witness = dec.Ids();
    return ctx;
  }

 private:
  MaxCliqueOptions opts_{};
};

}  // namespace submine::apps

#endif  // SUBMINE_APPS_MAX_CLIQUE_HPP
