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

#ifndef SUBMINE_TASK_HPP
#define SUBMINE_TASK_HPP

#include <vector>

#include "submine/codec.hpp"
#include "submine/graph.hpp"

namespace submine
{
/**
 * @brief A unit of subgraph-centric work.
 *
 * `requests` collects the IDs pulled during the current iteration, in call
 * order; the engine turns them into the next iteration's frontier. `seed`
 * is the vertex whose seeding produced the task (children inherit it) and
 * is used to attribute emitted results.
 */
template <class Context>
struct Task {
  Subgraph subgraph{};
  Context context{};
  std::vector<VertexId> requests{};
  std::uint64_t iteration{0};
  VertexId seed{0};

  /// Requests `u` for the next iteration.
  void
  Pull(VertexId u)
  {
    requests.push_back(u);
  }
};

/// Vertices requested in the previous iteration, in request order.
/// Each pointer refers into T_local or T_cache and is valid for one compute call.
using Frontier = std::vector<const Vertex *>;

}  // namespace submine

#endif  // SUBMINE_TASK_HPP
