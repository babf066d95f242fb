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


#ifndef SUBMINE_RUN_CONFIG_HPP
#define SUBMINE_RUN_CONFIG_HPP

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "submine/apps/gmatch.hpp"
#include "submine/apps/max_clique.hpp"
#include "submine/apps/maximal_cliques.hpp"
#include "submine/apps/quasi_clique.hpp"
#include "submine/apps/triangle.hpp"
#include "submine/engine.hpp"
#include "submine/testkit.hpp"

namespace submine
{
enum class AppKind { kTriangle, kMaxClique, kMaximalCliques, kQuasiClique, kGMatch };

inline constexpr std::string_view kVersion = "0.1.0";

inline std::string
AppKindName(AppKind k)
{
  switch (k) {
    case AppKind::kTriangle:
      return "triangle";
    case AppKind::kMaxClique:
      return "maxclique";
    case AppKind::kMaximalCliques:
      return "maximalcliques";
    case AppKind::kQuasiClique:
      return "quasiclique";
    case AppKind::kGMatch:
      return "gmatch";
  }
  return "?";
}

inline AppKind
ParseAppKind(const std::string &s)
{
  for (auto k : {AppKind::kTriangle, AppKind::kMaxClique, AppKind::kMaximalCliques, AppKind::kQuasiClique,
                 AppKind::kGMatch}) {
    if (AppKindName(k) == s) return k;
  }
  throw ConfigError{"unknown app '" + s + "'"};
}

inline QueueKind
ParseQueueKind(const std::string &s)
{
  if (s == "stream") return QueueKind::kStream;
  if (s == "lsh") return QueueKind::kLsh;
  throw ConfigError{"unknown queue kind '" + s + "'"};
}

/// Everything that determines a run. Defaults follow the reference setup.
struct RunConfig {
  AppKind app{AppKind::kTriangle};
  std::string input{};
  std::uint32_t workers{8};
  std::size_t buffer_capacity{1000};
  std::size_t file_capacity{100};
  std::size_t cache_capacity{1'000'000};
  QueueKind queue{QueueKind::kLsh};
  std::size_t ell{4};
  std::uint64_t seed{1};
  std::optional<std::uint64_t> sync_rounds{};
  std::optional<std::uint64_t> sync_ms{};
  double gamma{0.6};
  std::size_t min_size{4};
  std::string query{};
  std::string workdir{};
  std::string out{};
  bool trace{false};

  void
  Validate() const
  {
    if (input.empty()) throw ConfigError{"--input is required"};
    if (workers < 1) throw ConfigError{"--workers must be >= 1"};
    if (buffer_capacity < 1) throw ConfigError{"--buffer-capacity must be >= 1"};
    if (file_capacity < 1) throw ConfigError{"--file-capacity must be >= 1"};
    if (ell < 1) throw ConfigError{"--ell must be >= 1"};
    if (sync_rounds && sync_ms) throw ConfigError{"--sync-rounds and --sync-ms are mutually exclusive"};
    if (app == AppKind::kQuasiClique) apps::QuasiCliqueParams{gamma, min_size}.Validate();
  }

  [[nodiscard]] EngineConfig
  ToEngine() const
  {
    EngineConfig c;
    c.num_workers = workers;
    c.buffer_capacity = buffer_capacity;
    c.file_capacity = file_capacity;
    c.cache_capacity = cache_capacity;
    c.queue_kind = queue;
    c.ell = ell;
    c.seed = seed;
    if (sync_rounds) c.sync = SyncPolicy::EveryRounds(*sync_rounds);
    if (sync_ms) c.sync = SyncPolicy::EveryMillis(*sync_ms);
    c.workdir = workdir;
    c.trace = trace;
    return c;
  }
};

/// FNV-1a over a file's bytes.
inline std::uint64_t
FileChecksum(const std::string &path)
{
  std::ifstream in{path, std::ios::binary};
  if (!in) throw IoError{"cannot open '" + path + "'"};
  std::uint64_t h = 0xCBF29CE484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    h = Fnv1a64(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

inline std::string
Hex(std::uint64_t v)
{
  std::ostringstream ss;
  ss << "0x" << std::hex << std::setw(16) << std::setfill('0') << v;
  return ss.str();
}

/// Commented key = value text that reproduces the run.
inline std::string
FormatManifest(const RunConfig &c, const GraphConfig &g)
{
  std::ostringstream m;
  m << "# submine run manifest\n";
  m << "# rerun: submine run --config <this file>\n";
  m << "# version = " << kVersion << "\n";
  m << "[run]\n";
  m << "app = " << AppKindName(c.app) << "\n";
  m << "input = " << fs::absolute(c.input).string() << "\n";
  m << "# input_checksum = " << Hex(FileChecksum(c.input)) << "\n";
  m << "# num_vertices = " << g.num_vertices << "\n";
  m << "# avg_degree = " << g.avg_degree << "\n";
  m << "workers = " << c.workers << "\n";
  m << "buffer-capacity = " << c.buffer_capacity << "\n";
  m << "file-capacity = " << c.file_capacity << "\n";
  m << "cache-capacity = " << c.cache_capacity << "\n";
  m << "queue = " << QueueKindName(c.queue) << "\n";
  m << "ell = " << c.ell << "\n";
  m << "seed = " << c.seed << "\n";
  auto hasher = MinHasher::FromRunSeed(c.seed, c.ell);
  for (std::size_t i = 0; i < hasher.Ell(); ++i) m << "# minhash_seed_" << i << " = " << Hex(hasher.Seeds()[i]) << "\n";
  if (c.sync_rounds) m << "sync-rounds = " << *c.sync_rounds << "\n";
  if (c.sync_ms) m << "sync-ms = " << *c.sync_ms << "\n";
  if (c.app == AppKind::kQuasiClique) {
    m << "gamma = " << c.gamma << "\n";
    m << "min-size = " << c.min_size << "\n";
  }
  if (c.app == AppKind::kGMatch && !c.query.empty()) {
    m << "query = " << c.query << "\n";
    m << "# query_checksum = " << Hex(FileChecksum(c.query)) << "\n";
  }
  if (!c.out.empty()) m << "out = " << c.out << "\n";
  if (c.trace) m << "trace = true\n";
  return m.str();
}

/// Outcome of one CLI run.
struct RunReport {
  std::string aggregate{};
  std::vector<std::pair<std::string, std::string>> metrics{};
  std::vector<std::string> check_failures{};
  WorkerMetrics totals{};
  TransportStats transport{};
  std::vector<TraceLog> traces{};

  [[nodiscard]] bool
  Ok() const noexcept
  {
    return check_failures.empty();
  }

  [[nodiscard]] std::string
  MetricsText() const
  {
    std::string out;
    for (const auto &[k, v] : metrics) out += k + "\t" + v + "\n";
    return out;
  }
};

inline std::string
FormatAggregate(std::uint64_t v)
{
  return std::to_string(v);
}

inline std::string
FormatAggregate(const apps::QmaxValue &v)
{
  return std::to_string(v.size);
}

/// Constructs the configured app and passes it to `f`.
template <class F>
decltype(auto)
WithApp(const RunConfig &c, F &&f)
{
  switch (c.app) {
    case AppKind::kTriangle:
      return f(apps::TriangleApp{});
    case AppKind::kMaxClique:
      return f(apps::MaxCliqueApp{});
    case AppKind::kMaximalCliques:
      return f(apps::MaximalCliquesApp{});
    case AppKind::kQuasiClique:
      return f(apps::QuasiCliqueApp{apps::QuasiCliqueParams{c.gamma, c.min_size}});
    case AppKind::kGMatch: {
      auto q = c.query.empty() ? apps::Figure4Query() : apps::ReadQueryFile(c.query);
      return f(apps::GMatchApp{std::move(q)});
    }
  }
  throw ConfigError{"unknown app"};
}

/**
 * @brief Runs the configured job over `graph` and runs the self-checks.
 *
 * Result lines stream to `result_dir` when set; otherwise they are dropped
 * and only the aggregate is reported.
 */
inline RunReport
ExecuteRun(const RunConfig &c, std::vector<Vertex> graph, const std::optional<fs::path> &result_dir,
           FileStore *store = nullptr)
{
  c.Validate();
  if (c.app == AppKind::kGMatch) AttachNeighborLabels(graph);
  auto ecfg = c.ToEngine();
  ecfg.collect_results = false;
  ecfg.result_dir = result_dir;
  ecfg.store = store;
  return WithApp(c, [&](const auto &app) {
    auto job = RunJob(std::move(graph), app, ecfg);
    RunReport r;
    r.aggregate = FormatAggregate(job.aggregate);
    r.totals = job.Totals();
    r.transport = job.transport;
    const auto &t = r.totals;
    auto put = [&](std::string k, auto v) {
      std::ostringstream ss;
      ss << v;
      r.metrics.emplace_back(std::move(k), ss.str());
    };
    put("app", AppKindName(c.app));
    put("queue", QueueKindName(c.queue));
    put("workers", c.workers);
    put("aggregate", r.aggregate);
    if constexpr (std::is_same_v<std::decay_t<decltype(job.aggregate)>, apps::QmaxValue>) {
      put("witness", apps::FormatIdLine(job.aggregate.witness));
    }
    put("runtime_ms", job.runtime_ms);
    put("rounds", t.rounds);
    put("tasks_created", t.tasks_created);
    put("tasks_completed", t.tasks_completed);
    put("compute_calls", t.compute_calls);
    put("requests_sent", t.requests_sent);
    put("vertices_requested", t.vertices_requested);
    put("requests_served", t.requests_served);
    put("vertices_served", t.vertices_served);
    put("cache_hits", t.cache.hits);
    put("cache_misses", t.cache.misses);
    put("cache_hit_rate", t.cache.HitRate());
    put("cache_admits", t.cache.admits);
    put("cache_evictions", t.cache.evictions);
    put("cache_peak_resident", t.cache.peak_resident);
    put("cache_peak_resident_bounded", t.cache.peak_resident_bounded);
    put("overflow_episodes", t.overflow_episodes);
    put("syncs", t.syncs);
    put("random_reads", t.queue_io.random_reads);
    put("random_writes", t.queue_io.random_writes);
    put("messages", job.transport.frames);
    put("message_bytes", job.transport.bytes);

    if (t.tasks_created != t.tasks_completed) {
      r.check_failures.push_back("tasks created (" + std::to_string(t.tasks_created) + ") != completed (" +
                                 std::to_string(t.tasks_completed) + ")");
    }
    if (t.cache.peak_resident_bounded > c.cache_capacity) {
      r.check_failures.push_back("cache residency " + std::to_string(t.cache.peak_resident_bounded) +
                                 " exceeded capacity outside overflow");
    }
    if (c.trace) {
      auto replay = testkit::ReplayCacheBound(job.traces, c.cache_capacity);
      if (!replay.ok) r.check_failures.push_back("cache replay: " + replay.error);
      if (auto dup = testkit::CheckRequestDedup(TraceLog::Concat(job.traces))) {
        r.check_failures.push_back("request dedup: " + *dup);
      }
      r.traces = std::move(job.traces);
    }
    put("self_checks", r.check_failures.empty() ? "pass" : "fail");
    return r;
  });
}

}  // namespace submine

#endif  // SUBMINE_RUN_CONFIG_HPP
