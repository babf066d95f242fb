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

#ifndef SUBMINE_ENGINE_HPP
#define SUBMINE_ENGINE_HPP

#include <atomic>
#include <chrono>
#include <concepts>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "submine/local_table.hpp"
#include "submine/minhash.hpp"
#include "submine/task.hpp"
#include "submine/task_queue.hpp"
#include "submine/trace.hpp"
#include "submine/transport.hpp"
#include "submine/vertex_cache.hpp"

namespace submine
{
template <class App>
class SeedScope;
template <class App>
class ComputeScope;

/**
 * @brief What an application supplies to the engine.
 *
 * - Seed(v, scope): create tasks for a local vertex via scope.AddTask.
 * - Compute(task, frontier, scope): one iteration; false ends the task.
 * - Respond(v): optional pruned copy sent to pullers (nullopt = send v).
 * - Aggregate{Zero,Task,Merge}: per-worker partials merged at the end.
 * - {Encode,Decode}Context: codec for spilling tasks to disk.
 */
template <class A>
concept MiningApp = requires(const A &app, const Vertex &v, Task<typename A::Context> &task,
                             const Task<typename A::Context> &ctask, const Frontier &frontier,
                             SeedScope<A> &seed_scope, ComputeScope<A> &scope,
                             typename A::Aggregate &agg, const typename A::Aggregate &cagg, Encoder &enc,
                             Decoder &dec) {
  typename A::Context;
  typename A::Aggregate;
  { app.Seed(v, seed_scope) };
  { app.Compute(task, frontier, scope) } -> std::same_as<bool>;
  { app.Respond(v) } -> std::same_as<std::optional<Vertex>>;
  { app.AggregateZero() } -> std::same_as<typename A::Aggregate>;
  { app.AggregateTask(agg, ctask) };
  { app.AggregateMerge(agg, cagg) };
  { app.EncodeContext(enc, ctask.context) };
  { app.DecodeContext(dec) } -> std::same_as<typename A::Context>;
};

/*######################################################################################
 * Configuration and results
 *####################################################################################*/

struct SyncPolicy {
  enum class Mode { kOff, kRounds, kMillis };
  Mode mode{Mode::kOff};
  std::uint64_t period{0};

  static SyncPolicy
  Off()
  {
    return {};
  }

  static SyncPolicy
  EveryRounds(std::uint64_t n)
  {
    return {Mode::kRounds, n};
  }

  static SyncPolicy
  EveryMillis(std::uint64_t ms)
  {
    return {Mode::kMillis, ms};
  }
};

struct EngineConfig {
  std::uint32_t num_workers{8};
  std::size_t buffer_capacity{1000};
  std::size_t file_capacity{100};
  std::size_t cache_capacity{1'000'000};
  QueueKind queue_kind{QueueKind::kLsh};
  std::size_t ell{4};
  std::uint64_t seed{1};
  SyncPolicy sync{};
  /// Parent of the per-worker `w<id>/queue/` directories; empty = private temp dir.
  fs::path workdir{};
  bool trace{false};
  /// Keep emitted results in memory (JobResult::results).
  bool collect_results{true};
  /// When set, each worker also streams results to `<result_dir>/results_w<id>.txt`.
  std::optional<fs::path> result_dir{};
  /// Storage behind the task queues; null = the local disk.
  FileStore *store{nullptr};
};

/// One result line and the seed vertex of the task that emitted it.
struct Emitted {
  VertexId seed{0};
  WorkerId worker{0};
  std::string line{};
};

struct WorkerMetrics {
  WorkerId worker{0};
  double runtime_ms{0.0};
  std::uint64_t rounds{0};
  std::uint64_t tasks_created{0};
  std::uint64_t tasks_completed{0};
  std::uint64_t compute_calls{0};
  std::uint64_t requests_sent{0};
  std::uint64_t vertices_requested{0};
  std::uint64_t requests_served{0};
  std::uint64_t vertices_served{0};
  std::uint64_t overflow_episodes{0};
  std::uint64_t syncs{0};
  CacheMetrics cache{};
  IoCounters queue_io{};
};

template <class App>
struct JobResult {
  typename App::Aggregate aggregate{};
  std::vector<Emitted> results{};
  std::vector<WorkerMetrics> workers{};
  std::vector<TraceLog> traces{};
  TransportStats transport{};
  double runtime_ms{0.0};

  [[nodiscard]] WorkerMetrics
  Totals() const
  {
    WorkerMetrics t;
    for (const auto &w : workers) {
      t.runtime_ms = std::max(t.runtime_ms, w.runtime_ms);
      t.rounds += w.rounds;
      t.tasks_created += w.tasks_created;
      t.tasks_completed += w.tasks_completed;
      t.compute_calls += w.compute_calls;
      t.requests_sent += w.requests_sent;
      t.vertices_requested += w.vertices_requested;
      t.requests_served += w.requests_served;
      t.vertices_served += w.vertices_served;
      t.overflow_episodes += w.overflow_episodes;
      t.syncs += w.syncs;
      t.cache.hits += w.cache.hits;
      t.cache.misses += w.cache.misses;
      t.cache.evictions += w.cache.evictions;
      t.cache.admits += w.cache.admits;
      t.cache.peak_resident = std::max(t.cache.peak_resident, w.cache.peak_resident);
      t.cache.peak_resident_bounded = std::max(t.cache.peak_resident_bounded, w.cache.peak_resident_bounded);
      t.queue_io.random_reads += w.queue_io.random_reads;
      t.queue_io.random_writes += w.queue_io.random_writes;
    }
    return t;
  }
};

/*######################################################################################
 * Responding to pulls
 *####################################################################################*/

/// Serves a pull request from the owner's local table, applying the app's respond hook.
template <MiningApp App>
PullResponseMsg
RespondPath(const PullRequestMsg &request, const App &app, const LocalTable &local)
{
  PullResponseMsg resp{local.Worker(), request.from, request.round, {}};
  resp.vertices.reserve(request.ids.size());
  for (auto id : request.ids) {
    if (!local.Owns(id)) {
      throw ProtocolError{"worker " + std::to_string(request.from) + " asked worker " +
                          std::to_string(local.Worker()) + " for vertex " + std::to_string(id) +
                          ", which it does not own"};
    }
    const auto *v = local.Find(id);
    if (v == nullptr) {
      throw ProtocolError{"worker " + std::to_string(request.from) + " asked worker " +
                          std::to_string(local.Worker()) + " for nonexistent vertex " + std::to_string(id)};
    }
    auto pruned = app.Respond(*v);
    resp.vertices.push_back(pruned ? std::move(*pruned) : *v);
  }
  return resp;
}

/*######################################################################################
 * Aggregation
 *####################################################################################*/

/// Coordinator-side board of published partials; readers get an immutable snapshot.
template <class App>
class AggregatorBoard
{
 public:
  using Agg = typename App::Aggregate;

  AggregatorBoard(const App &app, std::uint32_t num_workers)
      : app_{app}, published_(num_workers, app.AggregateZero()),
        snapshot_{std::make_shared<const Agg>(app.AggregateZero())}
  {
  }

  void
  Publish(WorkerId w, const Agg &local)
  {
    std::lock_guard lock{mu_};
    published_[w] = local;
    auto merged = app_.AggregateZero();
    for (const auto &p : published_) app_.AggregateMerge(merged, p);
    snapshot_ = std::make_shared<const Agg>(std::move(merged));
  }

  [[nodiscard]] std::shared_ptr<const Agg>
  Snapshot() const
  {
    std::lock_guard lock{mu_};
    return snapshot_;
  }

 private:
  const App &app_;
  mutable std::mutex mu_{};
  std::vector<Agg> published_;
  std::shared_ptr<const Agg> snapshot_;
};

template <class App>
class Worker;

/// Handle given to Seed: tasks added here are the worker's seed tasks.
template <class App>
class SeedScope
{
 public:
  using Ctx = typename App::Context;

  explicit SeedScope(std::vector<Task<Ctx>> &out, WorkerId worker) : out_{out}, worker_{worker} {}

  void
  AddTask(Task<Ctx> t)
  {
    out_.push_back(std::move(t));
  }

  [[nodiscard]] WorkerId
  WorkerIndex() const noexcept
  {
    return worker_;
  }

 private:
  std::vector<Task<Ctx>> &out_;
  WorkerId worker_;
};

/// Handle given to Compute.
template <class App>
class ComputeScope
{
 public:
  using Ctx = typename App::Context;
  using Agg = typename App::Aggregate;

  explicit ComputeScope(Worker<App> &w, VertexId seed) : worker_{w}, seed_{seed} {}

  /// Queues a child task on this worker; it inherits the parent's seed.
  void
  AddTask(Task<Ctx> child)
  {
    child.seed = seed_;
    worker_.AddChild(std::move(child));
  }

  void
  Emit(std::string line)
  {
    worker_.EmitResult(seed_, std::move(line));
  }

  /// This worker's partial merged with the last published global value.
  [[nodiscard]] Agg
  Aggregate() const
  {
    return worker_.VisibleAggregate();
  }

  [[nodiscard]] WorkerId
  WorkerIndex() const noexcept
  {
    return worker_.Id();
  }

  [[nodiscard]] std::uint64_t
  Round() const noexcept
  {
    return worker_.CurrentRound();
  }

 private:
  submine::Worker<App> &worker_;
  VertexId seed_;
};

/*######################################################################################
 * Worker
 *####################################################################################*/

/// Shared state of a running job.
template <class App>
struct JobShared {
  const App &app;
  const EngineConfig &cfg;
  Transport &transport;
  AggregatorBoard<App> board;
  std::mutex error_mu{};
  std::exception_ptr error{};
  std::atomic<std::uint32_t> idle_workers{0};

  void
  Fail(std::exception_ptr e)
  {
    {
      std::lock_guard lock{error_mu};
      if (!error) error = e;
    }
    transport.Shutdown();
  }
};

/**
 * @brief One compute thread with its local table, cache and task queue.
 *
 * Each round: (1) fetch tasks into B^T_in while the cache can reserve their
 * remote pulls, (2) pull the missing vertices with one deduplicated request
 * per owner, (3) compute every fetched task until it finishes or needs a
 * vertex that is neither local nor cached.
 */
template <class App>
class Worker
{
 public:
  using Ctx = typename App::Context;
  using Agg = typename App::Aggregate;

  Worker(WorkerId id, const LocalTable &local, JobShared<App> &shared, const fs::path &queue_dir)
      : id_{id},
        local_{local},
        shared_{shared},
        app_{shared.app},
        cfg_{shared.cfg},
        tracer_{shared.cfg.trace ? &trace_ : nullptr, id},
        cache_{shared.cfg.cache_capacity, &local, &tracer_},
        hasher_{MinHasher::FromRunSeed(shared.cfg.seed, shared.cfg.ell)},
        queue_{MakeQueue(shared.cfg.queue_kind,
                         QueueOptions{queue_dir, shared.cfg.file_capacity, shared.cfg.buffer_capacity,
                                      shared.cfg.ell, shared.cfg.store, &tracer_})},
        local_agg_{shared.app.AggregateZero()},
        global_{shared.board.Snapshot()}
  {
    metrics_.worker = id;
    if (cfg_.result_dir) {
      auto path = *cfg_.result_dir / ("results_w" + std::to_string(id) + ".txt");
      result_file_.open(path, std::ios::trunc);
      if (!result_file_) throw IoError{"cannot open result file '" + path.string() + "'"};
    }
  }

  /// Compute-thread body.
  void
  Run()
  {
    auto t0 = std::chrono::steady_clock::now();
    last_sync_ = t0;
    SeedAll();
    while (RunRound()) {
    }
    shared_.idle_workers.fetch_add(1);
    metrics_.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    metrics_.cache = cache_.Metrics();
    metrics_.queue_io = queue_->Counters();
    if (result_file_.is_open()) {
      result_file_.flush();
      if (!result_file_) throw IoError{"write failure on result file of worker " + std::to_string(id_)};
    }
  }

  /// Responder-thread body: serves pull requests until the transport shuts down.
  void
  Serve()
  {
    while (auto frame = shared_.transport.Receive(id_, Channel::kRequest)) {
      auto req = DecodeRequest(*frame);
      auto resp = RespondPath(req, app_, local_);
      served_requests_.fetch_add(1, std::memory_order_relaxed);
      served_vertices_.fetch_add(resp.vertices.size(), std::memory_order_relaxed);
      shared_.transport.Send(req.from, Channel::kResponse, EncodeMessage(resp));
    }
  }

  /// Calls Seed on every local vertex and loads the resulting tasks into the queue.
  void
  SeedAll()
  {
    std::vector<Task<Ctx>> seeds;
    SeedScope<App> scope{seeds, id_};
    for (const auto &v : local_.Vertices()) {
      auto before = seeds.size();
      try {
        app_.Seed(v, scope);
      } catch (const std::exception &e) {
        throw std::runtime_error{"worker " + std::to_string(id_) + ": seeding vertex " + std::to_string(v.id) +
                                 " failed: " + e.what()};
      }
      for (auto i = before; i < seeds.size(); ++i) seeds[i].seed = v.id;
    }
    std::vector<TaskRecord> records;
    records.reserve(seeds.size());
    for (auto &t : seeds) records.push_back(MakeRecord(t));
    metrics_.tasks_created += records.size();
    queue_->BulkLoad(std::move(records));
  }

  /// One fetch/pull/compute round. Returns false once this worker has no work left.
  bool
  RunRound()
  {
    ++round_;
    tracer_.SetRound(round_);
    auto batch = FetchBatch();
    if (batch.empty()) {
      --round_;
      return !(queue_->Empty() && !held_ && bt_out_.empty());
    }
    ++metrics_.rounds;
    PullMissing();
    for (auto &item : batch) ComputeTask(item);
    FlushOut();
    cache_.UnpinBatch(batch_pins_);
    batch_pins_.clear();
    if (overflow_) {
      cache_.ExitOverflow();
      overflow_ = false;
    }
    MaybeSync();
    return true;
  }

  void
  AddChild(Task<Ctx> child)
  {
    ++metrics_.tasks_created;
    bt_out_.push_back(MakeRecord(child));
    if (bt_out_.size() >= cfg_.buffer_capacity) FlushOut();
  }

  void
  EmitResult(VertexId seed, std::string line)
  {
    if (result_file_.is_open()) result_file_ << line << '\n';
    if (cfg_.collect_results) results_.push_back(Emitted{seed, id_, std::move(line)});
  }

  [[nodiscard]] Agg
  VisibleAggregate() const
  {
    Agg v = local_agg_;
    app_.AggregateMerge(v, *global_);
    return v;
  }

  [[nodiscard]] WorkerId
  Id() const noexcept
  {
    return id_;
  }

  [[nodiscard]] std::uint64_t
  CurrentRound() const noexcept
  {
    return round_;
  }

  [[nodiscard]] const Agg &
  LocalAggregate() const noexcept
  {
    return local_agg_;
  }

  [[nodiscard]] WorkerMetrics
  Metrics() const
  {
    auto m = metrics_;
    m.requests_served = served_requests_.load();
    m.vertices_served = served_vertices_.load();
    return m;
  }

  std::vector<Emitted> &
  Results() noexcept
  {
    return results_;
  }

  TraceLog &
  Trace() noexcept
  {
    return trace_;
  }

 private:
  struct BatchItem {
    Task<Ctx> task;
  };

  [[nodiscard]] bool
  IsLocal(VertexId id) const noexcept
  {
    return local_.Owns(id);
  }

  [[nodiscard]] std::vector<VertexId>
  RemotePulls(const Task<Ctx> &t) const
  {
    std::vector<VertexId> ids;
    for (auto id : t.requests) {
      if (!IsLocal(id)) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  TaskRecord
  MakeRecord(const Task<Ctx> &t)
  {
    Encoder enc;
    enc.U64(t.iteration);
    enc.U64(t.seed);
    enc.Ids(t.requests);
    enc.Put(t.subgraph);
    app_.EncodeContext(enc, t.context);
    auto pulls = RemotePulls(t);
    return TaskRecord{hasher_.Key(pulls, next_seq_++), enc.Take()};
  }

  Task<Ctx>
  DecodeTask(const TaskRecord &r) const
  {
    Decoder dec{r.payload};
    Task<Ctx> t;
    t.iteration = dec.U64();
    t.seed = dec.U64();
    t.requests = dec.Ids();
    t.subgraph = dec.GetSubgraph();
    t.context = app_.DecodeContext(dec);
    if (!dec.AtEnd()) throw CorruptionError{"trailing bytes in task payload"};
    return t;
  }

  // Step 1: fill B^T_in until it is full or the cache cannot take the next task.
  std::vector<BatchItem>
  FetchBatch()
  {
    std::vector<BatchItem> batch;
    while (batch.size() < cfg_.buffer_capacity) {
      std::optional<TaskRecord> rec;
      if (held_) {
        rec = std::move(held_);
        held_.reset();
      } else {
        rec = queue_->Fetch();
      }
      if (!rec) break;
      auto task = DecodeTask(*rec);
      tracer_.Emit(TraceKind::kTaskFetched, task.iteration, {task.seed});
      auto remote = RemotePulls(task);
      if (!remote.empty()) {
        auto r = cache_.Reserve(remote);
        if (!r.accepted) {
          if (!batch.empty()) {
            held_ = std::move(rec);
            break;
          }
          // A lone task larger than the cache runs as a singleton batch.
          cache_.EnterOverflow(remote.size());
          overflow_ = true;
          ++metrics_.overflow_episodes;
          r = cache_.Reserve(remote);
          if (!r.accepted) throw ProtocolError{"overflow reservation rejected"};
          Admit(r);
          batch.push_back(BatchItem{std::move(task)});
          break;
        }
        Admit(r);
      }
      batch.push_back(BatchItem{std::move(task)});
    }
    return batch;
  }

  void
  Admit(const VertexCache::Reservation &r)
  {
    batch_pins_.insert(batch_pins_.end(), r.pinned.begin(), r.pinned.end());
    to_fetch_.insert(to_fetch_.end(), r.to_fetch.begin(), r.to_fetch.end());
  }

  // Step 2: one request per owner; blocks until every response is cached.
  void
  PullMissing()
  {
    if (to_fetch_.empty()) return;
    std::map<WorkerId, std::vector<VertexId>> by_owner;
    for (auto id : to_fetch_) by_owner[PartitionOwner(id, local_.NumWorkers())].push_back(id);
    to_fetch_.clear();
    for (auto &[owner, ids] : by_owner) {
      ++metrics_.requests_sent;
      metrics_.vertices_requested += ids.size();
      tracer_.Emit(TraceKind::kRequestSent, ids.size(), ids, owner);
      shared_.transport.Send(owner, Channel::kRequest, EncodeMessage(PullRequestMsg{id_, owner, round_, ids}));
    }
    for (std::size_t pending = by_owner.size(); pending > 0; --pending) {
      auto frame = shared_.transport.Receive(id_, Channel::kResponse);
      if (!frame) throw IoError{"transport closed while worker " + std::to_string(id_) + " awaited pulls"};
      auto resp = DecodeResponse(*frame);
      const auto &asked = by_owner.at(resp.from);
      if (resp.vertices.size() != asked.size()) {
        throw ProtocolError{"response from worker " + std::to_string(resp.from) + " has wrong length"};
      }
      std::vector<VertexId> got;
      got.reserve(resp.vertices.size());
      for (std::size_t i = 0; i < resp.vertices.size(); ++i) {
        if (resp.vertices[i].id != asked[i]) {
          throw ProtocolError{"response from worker " + std::to_string(resp.from) + " is out of order"};
        }
        got.push_back(resp.vertices[i].id);
        cache_.InsertPulled(std::move(resp.vertices[i]));
      }
      tracer_.Emit(TraceKind::kResponseReceived, got.size(), std::move(got), resp.from);
    }
  }

  Frontier
  Resolve(const std::vector<VertexId> &ids, const Task<Ctx> &t)
  {
    Frontier f;
    f.reserve(ids.size());
    for (auto id : ids) {
      const Vertex *v = IsLocal(id) ? local_.Find(id) : cache_.LookupAndPin(id);
      if (v == nullptr) {
        throw ProtocolError{"worker " + std::to_string(id_) + ": task seeded at " + std::to_string(t.seed) +
                            " pulled vertex " + std::to_string(id) + ", which could not be resolved"};
      }
      if (!IsLocal(id)) batch_pins_.push_back(id);
      f.push_back(v);
    }
    return f;
  }

  // All new requests already local or cached?
  bool
  ResolvableNow(const Task<Ctx> &t)
  {
    for (auto id : t.requests) {
      if (IsLocal(id)) continue;
      if (!cache_.Probe(id)) return false;
    }
    return true;
  }

  // Step 3 for one task.
  void
  ComputeTask(BatchItem &item)
  {
    auto &task = item.task;
    while (true) {
      auto frontier = Resolve(task.requests, task);
      task.requests.clear();
      ++task.iteration;
      ++metrics_.compute_calls;
      bool more = false;
      ComputeScope<App> scope{*this, task.seed};
      try {
        more = app_.Compute(task, frontier, scope);
      } catch (const std::exception &e) {
        throw std::runtime_error{"worker " + std::to_string(id_) + ": task seeded at " +
                                 std::to_string(task.seed) + " failed in iteration " +
                                 std::to_string(task.iteration) + ": " + e.what()};
      }
      if (!more) {
        app_.AggregateTask(local_agg_, task);
        ++metrics_.tasks_completed;
        tracer_.Emit(TraceKind::kTaskCompleted, task.iteration, {task.seed});
        return;
      }
      if (!ResolvableNow(task)) {
        bt_out_.push_back(MakeRecord(task));
        if (bt_out_.size() >= cfg_.buffer_capacity) FlushOut();
        return;
      }
    }
  }

  void
  FlushOut()
  {
    for (auto &r : bt_out_) queue_->Enqueue(std::move(r));
    bt_out_.clear();
  }

  void
  MaybeSync()
  {
    const auto &sync = cfg_.sync;
    bool due = false;
    if (sync.mode == SyncPolicy::Mode::kRounds) {
      due = sync.period > 0 && metrics_.rounds % sync.period == 0;
    } else if (sync.mode == SyncPolicy::Mode::kMillis) {
      auto now = std::chrono::steady_clock::now();
      due = now - last_sync_ >= std::chrono::milliseconds(sync.period);
      if (due) last_sync_ = now;
    }
    if (!due) return;
    shared_.board.Publish(id_, local_agg_);
    global_ = shared_.board.Snapshot();
    ++metrics_.syncs;
  }

  WorkerId id_;
  const LocalTable &local_;
  JobShared<App> &shared_;
  const App &app_;
  const EngineConfig &cfg_;
  TraceLog trace_{};
  Tracer tracer_;
  VertexCache cache_;
  MinHasher hasher_;
  std::unique_ptr<TaskQueue> queue_;
  Agg local_agg_;
  std::shared_ptr<const Agg> global_;

  std::uint64_t round_{0};
  std::uint64_t next_seq_{0};
  std::optional<TaskRecord> held_{};
  std::vector<TaskRecord> bt_out_{};
  std::vector<VertexId> batch_pins_{};
  std::vector<VertexId> to_fetch_{};
  bool overflow_{false};
  std::chrono::steady_clock::time_point last_sync_{};

  WorkerMetrics metrics_{};
  std::atomic<std::uint64_t> served_requests_{0};
  std::atomic<std::uint64_t> served_vertices_{0};
  std::vector<Emitted> results_{};
  std::ofstream result_file_{};
};

/*######################################################################################
 * Job
 *####################################################################################*/

namespace detail
{
/// Removes a directory tree on scope exit when owned.
class ScratchDir
{
 public:
  explicit ScratchDir(fs::path requested)
  {
    if (!requested.empty()) {
      path_ = std::move(requested);
      return;
    }
    std::random_device rd;
    auto tag = (static_cast<std::uint64_t>(rd()) << 32U) ^ rd();
    path_ = fs::temp_directory_path() / ("submine-" + std::to_string(tag));
    owned_ = true;
  }

  ScratchDir(const ScratchDir &) = delete;
  ScratchDir &operator=(const ScratchDir &) = delete;

  ~ScratchDir()
  {
    if (owned_) {
      std::error_code ec;
      fs::remove_all(path_, ec);
    }
  }

  [[nodiscard]] const fs::path &
  Path() const noexcept
  {
    return path_;
  }

 private:
  fs::path path_{};
  bool owned_{false};
};
}  // namespace detail

/**
 * @brief Runs `app` over pre-partitioned local tables.
 *
 * Every worker gets a compute thread and a responder thread. Workers never
 * wait for one another except for pull responses; the job ends when every
 * compute thread has drained its queue, after which the responders stop.
 */
template <MiningApp App>
JobResult<App>
RunJob(const std::vector<LocalTable> &tables, const App &app, const EngineConfig &cfg)
{
  if (cfg.num_workers < 1) throw ConfigError{"num_workers must be >= 1"};
  if (tables.size() != cfg.num_workers) throw ConfigError{"one local table per worker is required"};
  if (cfg.buffer_capacity < 1 || cfg.file_capacity < 1) throw ConfigError{"capacities must be >= 1"};
  if (cfg.result_dir) fs::create_directories(*cfg.result_dir);

  auto t0 = std::chrono::steady_clock::now();
  detail::ScratchDir scratch{cfg.workdir};
  InProcTransport transport{cfg.num_workers};
  JobShared<App> shared{app, cfg, transport, AggregatorBoard<App>{app, cfg.num_workers}};

  std::vector<std::unique_ptr<Worker<App>>> workers;
  workers.reserve(cfg.num_workers);
  for (WorkerId w = 0; w < cfg.num_workers; ++w) {
    workers.push_back(std::make_unique<Worker<App>>(
        w, tables[w], shared, scratch.Path() / ("w" + std::to_string(w)) / "queue"));
  }

  std::vector<std::thread> responders;
  std::vector<std::thread> computers;
  for (auto &w : workers) {
    responders.emplace_back([&shared, wp = w.get()] {
      try {
        wp->Serve();
      } catch (...) {
        shared.Fail(std::current_exception());
      }
    });
  }
  for (auto &w : workers) {
    computers.emplace_back([&shared, wp = w.get()] {
      try {
        wp->Run();
      } catch (...) {
        shared.Fail(std::current_exception());
      }
    });
  }
  for (auto &t : computers) t.join();
  transport.Shutdown();
  for (auto &t : responders) t.join();
  if (shared.error) std::rethrow_exception(shared.error);

  JobResult<App> result;
  result.aggregate = app.AggregateZero();
  for (auto &w : workers) {
    app.AggregateMerge(result.aggregate, w->LocalAggregate());
    result.workers.push_back(w->Metrics());
    auto &r = w->Results();
    result.results.insert(result.results.end(), std::make_move_iterator(r.begin()),
                          std::make_move_iterator(r.end()));
    if (cfg.trace) result.traces.push_back(std::move(w->Trace()));
  }
  result.transport = transport.Stats();
  result.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

/// Partitions an in-memory graph and runs the job.
template <MiningApp App>
JobResult<App>
RunJob(std::vector<Vertex> graph, const App &app, const EngineConfig &cfg)
{
  return RunJob(PartitionGraph(std::move(graph), cfg.num_workers), app, cfg);
}

}  // namespace submine

#endif  // SUBMINE_ENGINE_HPP
