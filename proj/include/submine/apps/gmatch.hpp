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


#ifndef SUBMINE_APPS_GMATCH_HPP
#define SUBMINE_APPS_GMATCH_HPP

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "submine/engine.hpp"

namespace submine::apps
{
/**
 * @brief A labeled, connected query graph with a start vertex.
 *
 * Text form, one directive per line (`#` starts a comment):
 *   v <id> <label>
 *   e <id> <id>
 *   start <id>
 */
struct QueryGraph {
  std::map<VertexId, std::string> labels{};
  std::set<std::pair<VertexId, VertexId>> edges{};  // (min, max)
  VertexId start{0};

  [[nodiscard]] std::vector<VertexId>
  Ids() const
  {
    std::vector<VertexId> ids;
    for (const auto &[id, l] : labels) ids.push_back(id);
    return ids;
  }

  [[nodiscard]] bool
  HasEdge(VertexId a, VertexId b) const
  {
    return edges.contains({std::min(a, b), std::max(a, b)});
  }

  [[nodiscard]] std::vector<VertexId>
  Neighbors(VertexId q) const
  {
    std::vector<VertexId> out;
    for (const auto &[a, b] : edges) {
      if (a == q) out.push_back(b);
      if (b == q) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  [[nodiscard]] std::set<std::string>
  LabelSet() const
  {
    std::set<std::string> s;
    for (const auto &[id, l] : labels) s.insert(l);
    return s;
  }

  /// Query vertices in BFS order from the start (ties by ID).
  [[nodiscard]] std::vector<VertexId>
  BfsOrder() const
  {
    std::vector<VertexId> order{start};
    std::set<VertexId> seen{start};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (auto n : Neighbors(order[i])) {
        if (seen.insert(n).second) order.push_back(n);
      }
    }
    return order;
  }

  /// Largest hop distance from the start.
  [[nodiscard]] std::size_t
  Eccentricity() const
  {
    std::map<VertexId, std::size_t> dist{{start, 0}};
    std::deque<VertexId> q{start};
    std::size_t ecc = 0;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (auto n : Neighbors(u)) {
        if (dist.contains(n)) continue;
        dist[n] = dist[u] + 1;
        ecc = std::max(ecc, dist[n]);
        q.push_back(n);
      }
    }
    return ecc;
  }

  /// Throws ConfigError unless the query is non-empty, connected and has a valid start.
  void
  Validate() const
  {
    if (labels.empty()) throw ConfigError{"query graph has no vertices"};
    if (!labels.contains(start)) {
      throw ConfigError{"query start vertex " + std::to_string(start) + " is not a query vertex"};
    }
    for (const auto &[a, b] : edges) {
      if (!labels.contains(a) || !labels.contains(b)) {
        throw ConfigError{"query edge (" + std::to_string(a) + "," + std::to_string(b) +
                          ") names an undeclared vertex"};
      }
    }
    if (BfsOrder().size() != labels.size()) throw ConfigError{"query graph is not connected"};
  }

  friend bool operator==(const QueryGraph &, const QueryGraph &) = default;
};

/// The five-vertex example query: 1a 2c 3b 4b 5d with edges 1-2, 1-3, 2-3, 2-4, 4-5.
inline QueryGraph
Figure4Query()
{
  QueryGraph q;
  q.labels = {{1, "a"}, {2, "c"}, {3, "b"}, {4, "b"}, {5, "d"}};
  q.edges = {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {4, 5}};
  q.start = 1;
  return q;
}

inline QueryGraph
ParseQuery(std::istream &in)
{
  QueryGraph q;
  std::optional<VertexId> start;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss{line};
    std::string kind;
    if (!(ss >> kind)) continue;
    auto fail = [&](const std::string &why) {
      return ParseError{"query line " + std::to_string(line_no) + ": " + why};
    };
    if (kind == "v") {
      VertexId id = 0;
      std::string label;
      if (!(ss >> id >> label)) throw fail("expected 'v <id> <label>'");
      if (!q.labels.emplace(id, label).second) throw fail("duplicate query vertex " + std::to_string(id));
    } else if (kind == "e") {
      VertexId a = 0;
      VertexId b = 0;
      if (!(ss >> a >> b)) throw fail("expected 'e <id> <id>'");
      if (a == b) throw fail("self-loop in query");
      q.edges.insert({std::min(a, b), std::max(a, b)});
    } else if (kind == "start") {
      VertexId s = 0;
      if (!(ss >> s)) throw fail("expected 'start <id>'");
      start = s;
    } else {
      throw fail("unknown directive '" + kind + "'");
    }
  }
  if (!start) throw ConfigError{"query has no start vertex"};
  q.start = *start;
  q.Validate();
  return q;
}

inline QueryGraph
ReadQueryFile(const std::string &path)
{
  std::ifstream in{path};
  if (!in) throw IoError{"cannot open query file '" + path + "'"};
  return ParseQuery(in);
}

inline std::string
FormatQuery(const QueryGraph &q)
{
  std::string out;
  for (const auto &[id, l] : q.labels) out += "v " + std::to_string(id) + " " + l + "\n";
  for (const auto &[a, b] : q.edges) out += "e " + std::to_string(a) + " " + std::to_string(b) + "\n";
  out += "start " + std::to_string(q.start) + "\n";
  return out;
}

/// One assignment k_1..k_n, in ascending query-vertex order.
using Matching = std::vector<VertexId>;

inline std::string
FormatMatching(const Matching &m)
{
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(m[i]);
  }
  return out;
}

/**
 * @brief Enumerates every injective, label-preserving assignment of `q` into
 * `g` with the start vertex mapped to `anchor` and every query edge present.
 *
 * Edges are read from the adjacency lists stored in `g`; only vertices
 * present in `g` are candidates. Results come back sorted.
 */
inline std::vector<Matching>
BacktrackMatch(const QueryGraph &q, const Subgraph &g, VertexId anchor)
{
  std::vector<Matching> out;
  const auto *a = g.Find(anchor);
  if (a == nullptr || a->label != q.labels.at(q.start)) return out;

  const auto order = q.BfsOrder();
  const auto ids = q.Ids();
  std::map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = i;
  std::vector<std::vector<VertexId>> earlier(order.size());
  for (std::size_t i = 1; i < order.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (q.HasEdge(order[i], order[j])) earlier[i].push_back(order[j]);
    }
  }

  Matching assign(ids.size(), 0);
  std::set<VertexId> used;
  auto adjacent = [&](VertexId x, VertexId y) {
    const auto *vx = g.Find(x);
    const auto *vy = g.Find(y);
    return (vx != nullptr && vx->HasNeighbor(y)) || (vy != nullptr && vy->HasNeighbor(x));
  };

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(assign);
      return;
    }
    const auto qv = order[i];
    const auto &want = q.labels.at(qv);
    // Candidates: neighbors of the first earlier query neighbor's image.
    const auto parent_img = assign[pos[earlier[i].front()]];
    const auto *pv = g.Find(parent_img);
    std::set<VertexId> cands;
    if (pv != nullptr) {
      for (const auto &item : pv->adj) cands.insert(item.nb);
    }
    for (const auto &[id, v] : g.Vertices()) {
      if (v.HasNeighbor(parent_img)) cands.insert(id);
    }
    for (auto c : cands) {
      if (used.contains(c)) continue;
      const auto *cv = g.Find(c);
      if (cv == nullptr || cv->label != want) continue;
      bool ok = true;
      for (auto e : earlier[i]) {
        if (!adjacent(c, assign[pos[e]])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assign[pos[qv]] = c;
      used.insert(c);
      rec(i + 1);
      used.erase(c);
    }
  };

  assign[pos[q.start]] = anchor;
  used.insert(anchor);
  rec(1);
  std::sort(out.begin(), out.end());
  return out;
}

struct GMatchContext {
  std::uint64_t count{0};
};

/**
 * @brief Subgraph matching from each data vertex carrying the start label.
 *
 * For the five-vertex example query the task follows the two-iteration
 * U₁/U₂ pipeline; any other connected query uses a k-hop ego network of
 * query-labeled vertices around the seed (k = eccentricity of the start).
 * Every matching maps the start to exactly one seed, so each is emitted once.
 */
class GMatchApp
{
 public:
  using Context = GMatchContext;
  using Aggregate = std::uint64_t;

  explicit GMatchApp(QueryGraph q, bool allow_specialized = true)
      : q_{std::move(q)}, labels_{(q_.Validate(), q_.LabelSet())}
  {
    specialized_ = allow_specialized && q_ == Figure4Query();
    hops_ = q_.Eccentricity();
    start_label_ = q_.labels.at(q_.start);
    for (auto n : q_.Neighbors(q_.start)) start_nb_labels_.insert(q_.labels.at(n));
  }

  [[nodiscard]] bool
  Specialized() const noexcept
  {
    return specialized_;
  }

  [[nodiscard]] const QueryGraph &
  Query() const noexcept
  {
    return q_;
  }

  void
  Seed(const Vertex &v, SeedScope<GMatchApp> &scope) const
  {
    if (v.label != start_label_) return;
    std::set<std::string> seen;
    for (const auto &item : v.adj) {
      if (!item.attr) throw ConfigError{"graph matching needs neighbor labels on adjacency items"};
      seen.insert(*item.attr);
    }
    for (const auto &l : start_nb_labels_) {
      if (!seen.contains(l)) return;
    }
    Task<Context> t;
    t.subgraph.PutVertex(PruneLabels(v));
    for (const auto &item : v.adj) {
      if (start_nb_labels_.contains(*item.attr)) t.Pull(item.nb);
    }
    scope.AddTask(std::move(t));
  }

  bool
  Compute(Task<Context> &task, const Frontier &frontier, ComputeScope<GMatchApp> &scope) const
  {
    bool more = specialized_ ? StepSpecialized(task, frontier) : StepGeneric(task, frontier);
    if (more) return true;
    auto matches = BacktrackMatch(q_, task.subgraph, task.seed);
    task.context.count += matches.size();
    for (const auto &m : matches) scope.Emit(FormatMatching(m));
    task.subgraph.Clear();
    return false;
  }

  /// Drops adjacency items whose neighbor label is not used by the query.
  [[nodiscard]] std::optional<Vertex>
  Respond(const Vertex &v) const
  {
    return PruneLabels(v);
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

 private:
  [[nodiscard]] Vertex
  PruneLabels(const Vertex &v) const
  {
    Vertex out{v.id, v.label, {}};
    for (const auto &item : v.adj) {
      if (!item.attr || labels_.contains(*item.attr)) out.adj.push_back(item);
    }
    return out;
  }

  static bool
  HasLabel(const Vertex &v, const char *l)
  {
    return v.label && *v.label == l;
  }

  static bool
  ItemHas(const AdjItem &item, const char *l)
  {
    return item.attr && *item.attr == l;
  }

  // Query 1a-2c-3b-4b-5d. Iteration 1 sees the seed's b/c neighbors;
  // iteration 2 sees the b vertices that may match vertex 4.
  bool
  StepSpecialized(Task<Context> &task, const Frontier &frontier) const
  {
    auto &g = task.subgraph;
    const auto va = task.seed;
    if (task.iteration == 1) {
      std::set<VertexId> vb;
      std::vector<const Vertex *> vc;
      for (const auto *u : frontier) {
        if (HasLabel(*u, "b")) vb.insert(u->id);
        if (HasLabel(*u, "c")) vc.push_back(u);
      }
      std::set<VertexId> pulls;
      for (const auto *c : vc) {
        std::vector<VertexId> u1;
        std::vector<VertexId> u2;
        for (const auto &item : c->adj) {
          if (!ItemHas(item, "b")) continue;
          (vb.contains(item.nb) ? u1 : u2).push_back(item.nb);
        }
        if (u1.empty()) continue;
        if (u1.size() == 1 && u2.empty()) continue;
        pulls.insert(u2.begin(), u2.end());
        if (u1.size() > 1) pulls.insert(u1.begin(), u1.end());
        g.AddVertex(c->id, c->label);
        g.AddEdge(va, c->id);
        for (auto b : u1) {
          g.AddVertex(b, std::string{"b"});
          g.AddEdge(va, b);
          g.AddEdge(c->id, b);
        }
      }
      for (auto p : pulls) task.Pull(p);
      return !pulls.empty();
    }

    std::vector<VertexId> vc;
    for (const auto &[id, v] : g.Vertices()) {
      if (HasLabel(v, "c")) vc.push_back(id);
    }
    for (const auto *b : frontier) {
      std::vector<VertexId> vd;
      for (const auto &item : b->adj) {
        if (ItemHas(item, "d")) vd.push_back(item.nb);
      }
      if (vd.empty()) continue;
      g.AddVertex(b->id, b->label);
      for (auto c : vc) {
        if (b->HasNeighbor(c)) g.AddEdge(c, b->id);
      }
      for (auto d : vd) {
        g.AddVertex(d, std::string{"d"});
        g.AddEdge(b->id, d);
      }
    }
    return false;
  }

  // Hop h adds the vertices pulled in hop h−1 and pulls their unseen neighbors.
  bool
  StepGeneric(Task<Context> &task, const Frontier &frontier) const
  {
    auto &g = task.subgraph;
    for (const auto *u : frontier) {
      if (u->label && labels_.contains(*u->label)) g.PutVertex(PruneLabels(*u));
    }
    if (task.iteration >= hops_) return false;
    std::set<VertexId> next;
    for (const auto *u : frontier) {
      if (!g.Contains(u->id)) continue;
      for (const auto &item : u->adj) {
        if (g.Contains(item.nb)) continue;
        if (item.attr && !labels_.contains(*item.attr)) continue;
        next.insert(item.nb);
      }
    }
    for (auto n : next) task.Pull(n);
    return !next.empty();
  }

  QueryGraph q_;
  std::set<std::string> labels_;
  bool specialized_{false};
  std::size_t hops_{0};
  std::string start_label_{};
  std::set<std::string> start_nb_labels_{};
};

}  // namespace submine::apps

#endif  // SUBMINE_APPS_GMATCH_HPP
