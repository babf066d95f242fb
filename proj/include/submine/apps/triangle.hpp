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


#ifndef SUBMINE_APPS_TRIANGLE_HPP
#define SUBMINE_APPS_TRIANGLE_HPP

#include <algorithm>
#include <optional>
#include <string>

#include "submine/engine.hpp"

namespace submine::apps
{
struct TriangleContext {
  std::optional<VertexId> max_gamma{};
  std::uint64_t count{0};
};

struct TriangleOptions {
  /// Respond with Γ_gt(v) instead of the full adjacency list.
  bool prune_respond{true};
  /// Emit one "v1 v2 v3" line per triangle.
  bool emit_triangles{false};
};

/**
 * @brief Counts each triangle v1 < v2 < v3 once, in the task seeded at v1.
 *
 * The seed pulls Γ_gt(v1) − {max_Γ(v1)}; for every pulled v2 and every
 * v3 > v2 in Γ_gt(v1) the task checks v3 ∈ Γ(v2) by binary search.
 */
class TriangleApp
{
 public:
  using Context = TriangleContext;
  using Aggregate = std::uint64_t;

  TriangleApp() = default;
  explicit TriangleApp(TriangleOptions opts) : opts_{opts} {}

  void
  Seed(const Vertex &v, SeedScope<TriangleApp> &scope) const
  {
    auto gt = GammaGt(v);
    if (gt.size() < 2) return;
    Task<Context> t;
    t.context.max_gamma = gt.back().nb;
    for (std::size_t i = 0; i + 1 < gt.size(); ++i) t.Pull(gt[i].nb);
    scope.AddTask(std::move(t));
  }

  bool
  Compute(Task<Context> &task, const Frontier &frontier, ComputeScope<TriangleApp> &scope) const
  {
    std::vector<VertexId> gt;
    gt.reserve(frontier.size() + 1);
    for (const auto *v : frontier) gt.push_back(v->id);
    if (task.context.max_gamma) gt.push_back(*task.context.max_gamma);

    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const auto &v2 = *frontier[i];
      for (std::size_t j = i + 1; j < gt.size(); ++j) {
        if (!v2.HasNeighbor(gt[j])) continue;
        ++task.context.count;
        if (opts_.emit_triangles) {
          scope.Emit(std::to_string(task.seed) + " " + std::to_string(v2.id) + " " + std::to_string(gt[j]));
        }
      }
    }
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
    enc.U8(ctx.max_gamma ? 1 : 0);
    enc.U64(ctx.max_gamma.value_or(0));
    enc.U64(ctx.count);
  }

  [[nodiscard]] Context
  DecodeContext(Decoder &dec) const
  {
    Context ctx;
    auto has = dec.U8();
    auto mg = dec.U64();
    if (has != 0) ctx.max_gamma = mg;
    ctx.count = dec.U64();
    return ctx;
  }

 private:
  TriangleOptions opts_{};
};

}  // namespace submine::apps

#endif  // SUBMINE_APPS_TRIANGLE_HPP
