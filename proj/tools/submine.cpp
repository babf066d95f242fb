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


#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submine/generators.hpp"
#include "submine/local_table.hpp"
#include "submine/run_config.hpp"

namespace
{
namespace fs = std::filesystem;
using submine::RunConfig;

void
AddRunOptions(CLI::App &cmd, RunConfig &c, std::string &app, std::string &queue)
{
  cmd.add_option("--app", app, "triangle | maxclique | maximalcliques | quasiclique | gmatch")
      ->check(CLI::IsMember({"triangle", "maxclique", "maximalcliques", "quasiclique", "gmatch"}));
  cmd.add_option("--input", c.input, "graph file (one vertex per line)");
  cmd.add_option("--workers", c.workers, "worker count")->check(CLI::PositiveNumber);
  cmd.add_option("--buffer-capacity", c.buffer_capacity, "task buffer capacity")->check(CLI::PositiveNumber);
  cmd.add_option("--file-capacity", c.file_capacity, "tasks per spilled file (C)")->check(CLI::PositiveNumber);
  cmd.add_option("--cache-capacity", c.cache_capacity, "remote vertices cached per worker");
  cmd.add_option("--queue", queue, "stream | lsh")->check(CLI::IsMember({"stream", "lsh"}));
  cmd.add_option("--ell", c.ell, "MinHash functions per key")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", c.seed, "run seed");
  auto *rounds = cmd.add_option("--sync-rounds", c.sync_rounds, "publish the aggregator every N rounds");
  cmd.add_option("--sync-ms", c.sync_ms, "publish the aggregator every N milliseconds")->excludes(rounds);
  cmd.add_option("--gamma", c.gamma, "quasi-clique degree ratio")->check(CLI::Range(0.5, 1.0));
  cmd.add_option("--min-size", c.min_size, "quasi-clique minimum size")->check(CLI::PositiveNumber);
  cmd.add_option("--query", c.query, "gmatch query file (default: the built-in five-vertex query)");
  cmd.add_option("--workdir", c.workdir, "directory for spilled task files (default: private temp dir)");
  cmd.add_flag("--trace", c.trace, "record trace events (written as trace.ndjson under --out)");
}

void
Finish(RunConfig &c, const std::string &app, const std::string &queue)
{
  c.app = submine::ParseAppKind(app);
  c.queue = submine::ParseQueueKind(queue);
}

int
DoRun(RunConfig c)
{
  c.Validate();
  submine::GraphConfig g;
  g.input_path = c.input;
  g.num_workers = c.workers;
  auto graph = submine::ReadGraphFile(c.input);
  submine::ValidateUndirected(graph);
  submine::FillGraphStats(g, graph);

  std::optional<fs::path> result_dir;
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    result_dir = fs::path{c.out};
  }
  auto report = submine::ExecuteRun(c, std::move(graph), result_dir);
  std::cout << report.aggregate << std::endl;

  if (!c.out.empty()) {
    auto write = [&](const std::string &name, const std::string &text) {
      std::ofstream f{fs::path{c.out} / name};
      f << text;
      if (!f) throw submine::IoError{"cannot write '" + (fs::path{c.out} / name).string() + "'"};
    };
    write("manifest.txt", submine::FormatManifest(c, g));
    write("metrics.tsv", report.MetricsText());
    if (c.trace) {
      std::ofstream f{fs::path{c.out} / "trace.ndjson"};
      submine::TraceLog::Concat(report.traces).WriteNdjson(f);
    }
  }
  for (const auto &why : report.check_failures) std::cerr << "self-check failed: " << why << "\n";
  return report.Ok() ? EXIT_SUCCESS : 3;
}

int
DoBench(RunConfig c, std::size_t trials)
{
  c.Validate();
  auto graph = submine::ReadGraphFile(c.input);
  submine::ValidateUndirected(graph);
  std::cout << "queue\ttrial\truntime_ms\tcache_hit_rate\trandom_reads\trandom_writes\tmessages\tmessage_bytes"
               "\taggregate\n";
  std::map<std::string, std::vector<double>> hit_rates;
  std::optional<std::string> aggregate;
  bool same = true;
  for (auto kind : {submine::QueueKind::kStream, submine::QueueKind::kLsh}) {
    for (std::size_t t = 0; t < trials; ++t) {
      auto rc = c;
      rc.queue = kind;
      rc.seed = c.seed + t;
      auto r = submine::ExecuteRun(rc, graph, std::nullopt);
      const auto &m = r.totals;
      std::cout << submine::QueueKindName(kind) << '\t' << t << '\t' << m.runtime_ms << '\t' << m.cache.HitRate()
                << '\t' << m.queue_io.random_reads << '\t' << m.queue_io.random_writes << '\t'
                << r.transport.frames << '\t' << r.transport.bytes << '\t'
                << r.aggregate << '\n';
      hit_rates[submine::QueueKindName(kind)].push_back(m.cache.HitRate());
      if (!aggregate) aggregate = r.aggregate;
      same = same && *aggregate == r.aggregate && r.Ok();
    }
  }
  for (const auto &[kind, rates] : hit_rates) {
    double sum = 0;
    for (auto x : rates) sum += x;
    std::cout << "# mean_cache_hit_rate\t" << kind << '\t' << sum / static_cast<double>(rates.size()) << '\n';
  }
  if (!same) {
    std::cerr << "aggregates differ between runs or a self-check failed\n";
    return 3;
  }
  return EXIT_SUCCESS;
}

int
DoGen(const std::string &model, std::size_t n, double p, std::uint64_t seed, const std::string &labels,
      std::size_t clusters, double p_out, const std::string &out)
{
  std::vector<submine::Vertex> g;
  if (model == "gnp") {
    g = submine::gen::Gnp(n, p, seed);
  } else if (model == "complete") {
    g = submine::gen::Complete(n);
  } else if (model == "hub-cluster") {
    if (clusters < 1 || n % clusters != 0) throw submine::ConfigError{"--n must be a multiple of --clusters"};
    g = submine::gen::HubCluster(clusters, n / clusters, p, p_out, seed);
  } else {
    g = submine::gen::Gnp(n, p, seed);
  }
  if (model == "labeled-gnp" || !labels.empty()) {
    std::vector<std::string> alphabet;
    auto spec = labels.empty() ? std::string{"a..g"} : labels;
    if (spec.size() == 4 && spec.substr(1, 2) == "..") {
      for (char ch = spec[0]; ch <= spec[3]; ++ch) alphabet.emplace_back(1, ch);
    } else {
      std::stringstream ss{spec};
      for (std::string tok; std::getline(ss, tok, ',');) {
        if (!tok.empty()) alphabet.push_back(tok);
      }
    }
    if (alphabet.empty()) throw submine::ConfigError{"empty label alphabet '" + spec + "'"};
    submine::gen::AssignLabels(g, alphabet, seed ^ 0x5bd1e995ULL);
  }
  if (out.empty() || out == "-") {
    for (const auto &v : g) std::cout << submine::FormatVertexLine(v) << '\n';
  } else {
    submine::WriteGraphFile(out, g);
  }
  return EXIT_SUCCESS;
}

}  // namespace

int
main(int argc, char **argv)
{
  CLI::App cli{"submine: subgraph-centric graph mining on bounded-memory workers"};
  cli.require_subcommand(1);
  cli.set_config("--config", "", "key = value file with [run] / [bench-queues] sections; flags override it");
  cli.allow_config_extras(CLI::config_extras_mode::ignore);

  RunConfig run_cfg;
  std::string run_app = "triangle";
  std::string run_queue = "lsh";
  auto *run = cli.add_subcommand("run", "run one mining job");
  run->fallthrough();
  AddRunOptions(*run, run_cfg, run_app, run_queue);
  run->add_option("--out", run_cfg.out, "directory for manifest, metrics and result files");

  RunConfig bench_cfg;
  std::string bench_app = "triangle";
  std::string bench_queue = "lsh";
  std::size_t trials = 1;
  auto *bench = cli.add_subcommand("bench-queues", "run the same job under both queue kinds");
  bench->fallthrough();
  AddRunOptions(*bench, bench_cfg, bench_app, bench_queue);
  bench->add_option("--trials", trials, "runs per queue kind (run seeds seed..seed+trials-1)")
      ->check(CLI::PositiveNumber);

  std::string model = "gnp";
  std::size_t n = 100;
  double p = 0.1;
  double p_out = 0.01;
  std::size_t clusters = 10;
  std::uint64_t seed = 1;
  std::string labels;
  std::string out;
  auto *gen = cli.add_subcommand("gen", "write a synthetic graph");
  gen->add_option("--model", model, "gnp | hub-cluster | complete | labeled-gnp")
      ->check(CLI::IsMember({"gnp", "hub-cluster", "complete", "labeled-gnp"}));
  gen->add_option("--n", n, "vertex count")->check(CLI::NonNegativeNumber);
  gen->add_option("--p", p, "edge probability (inside clusters for hub-cluster)")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--p-out", p_out, "hub-cluster: edge probability across clusters")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--clusters", clusters, "hub-cluster: cluster count")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--labels", labels, "label alphabet, e.g. a..g or x,y,z");
  gen->add_option("--out", out, "output file (default: stdout)");

  CLI11_PARSE(cli, argc, argv);

  try {
    if (*run) {
      Finish(run_cfg, run_app, run_queue);
      return DoRun(run_cfg);
    }
    if (*bench) {
      Finish(bench_cfg, bench_app, bench_queue);
      return DoBench(bench_cfg, trials);
    }
    return DoGen(model, n, p, seed, labels, clusters, p_out, out);
  } catch (const submine::ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
