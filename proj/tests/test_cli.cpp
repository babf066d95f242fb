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


#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "submine/generators.hpp"
#include "submine/local_table.hpp"

namespace
{
namespace fs = std::filesystem;

struct Outcome {
  int code{-1};
  std::string out{};
};

Outcome
Cli(const std::string &args)
{
  std::string cmd = std::string{SUBMINE_CLI_PATH} + " " + args + " 2>&1";
  Outcome o;
  FILE *pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  int status = ::pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string
Slurp(const fs::path &p)
{
  std::ifstream in{p, std::ios::binary};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test
{
 protected:
  void
  SetUp() override
  {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("submine_cli_" + std::to_string(::getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  void
  TearDown() override
  {
    fs::remove_all(dir_);
  }

  std::string
  P(const std::string &name) const
  {
    return (dir_ / name).string();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenCompleteThenCountTriangles)
{
  auto gen = Cli("gen --model complete --n 4 --out " + P("k4.txt"));
  ASSERT_EQ(gen.code, 0) << gen.out;
  auto g = submine::ReadGraphFile(P("k4.txt"));
  EXPECT_EQ(g, submine::gen::Complete(4));

  auto run = Cli("run --app triangle --input " + P("k4.txt"));
  EXPECT_EQ(run.code, 0) << run.out;
  EXPECT_EQ(run.out, "4\n");
}

TEST_F(CliTest, MissingInputNamesPath)
{
  auto r = Cli("run --app triangle --input " + P("does_not_exist.txt"));
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find(P("does_not_exist.txt")), std::string::npos) << r.out;
}

TEST_F(CliTest, BadFlagsPrintUsage)
{
  auto r = Cli("run --no-such-flag");
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("--no-such-flag"), std::string::npos) << r.out;
  auto none = Cli("");
  EXPECT_NE(none.code, 0);
  auto no_input = Cli("run --app triangle");
  EXPECT_EQ(no_input.code, 2) << no_input.out;
  EXPECT_NE(no_input.out.find("--input"), std::string::npos);
  auto bad_app = Cli("run --app nope --input " + P("x.txt"));
  EXPECT_NE(bad_app.code, 0);
}

TEST_F(CliTest, QueueKindsPrintSameMaxClique)
{
  ASSERT_EQ(Cli("gen --model gnp --n 60 --p 0.3 --seed 3 --out " + P("g.txt")).code, 0);
  auto stream = Cli("run --app maxclique --input " + P("g.txt") + " --queue stream --buffer-capacity 4");
  auto lsh = Cli("run --app maxclique --input " + P("g.txt") + " --queue lsh --buffer-capacity 4");
  ASSERT_EQ(stream.code, 0) << stream.out;
  ASSERT_EQ(lsh.code, 0) << lsh.out;
  EXPECT_EQ(stream.out, lsh.out);
}

TEST_F(CliTest, GenIsDeterministic)
{
  ASSERT_EQ(Cli("gen --model gnp --n 100 --p 0.1 --seed 7 --out " + P("a.txt")).code, 0);
  ASSERT_EQ(Cli("gen --model gnp --n 100 --p 0.1 --seed 7 --out " + P("b.txt")).code, 0);
  EXPECT_EQ(Slurp(P("a.txt")), Slurp(P("b.txt")));
  EXPECT_FALSE(Slurp(P("a.txt")).empty());
  ASSERT_EQ(Cli("gen --model gnp --n 100 --p 0.1 --seed 8 --out " + P("c.txt")).code, 0);
  EXPECT_NE(Slurp(P("a.txt")), Slurp(P("c.txt")));
}

TEST_F(CliTest, LabeledGnpIsUniform)
{
  ASSERT_EQ(Cli("gen --model labeled-gnp --labels a..g --n 10000 --p 0 --seed 4 --out " + P("l.txt")).code, 0);
  std::map<std::string, std::size_t> freq;
  for (const auto &v : submine::ReadGraphFile(P("l.txt"))) ++freq[v.label.value_or("")];
  ASSERT_EQ(freq.size(), 7u);
  for (const auto &[label, count] : freq) {
    EXPECT_NEAR(static_cast<double>(count), 10000.0 / 7.0, 0.05 * 10000.0 / 7.0) << label;
  }
}

TEST_F(CliTest, OutputDirectoryAndConfigReplay)
{
  ASSERT_EQ(Cli("gen --model gnp --n 50 --p 0.2 --seed 2 --out " + P("g.txt")).code, 0);
  auto r = Cli("run --app maximalcliques --workers 3 --trace --input " + P("g.txt") + " --out " + P("out"));
  ASSERT_EQ(r.code, 0) << r.out;
  for (const char *name : {"manifest.txt", "metrics.tsv", "trace.ndjson", "results_w0.txt", "results_w2.txt"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / name)) << name;
  }
  std::size_t lines = 0;
  for (int w = 0; w < 3; ++w) {
    std::istringstream in{Slurp(dir_ / "out" / ("results_w" + std::to_string(w) + ".txt"))};
    for (std::string line; std::getline(in, line);) ++lines;
  }
  EXPECT_EQ(std::to_string(lines) + "\n", r.out);

  auto replay = Cli("run --config " + P("out/manifest.txt"));
  EXPECT_EQ(replay.code, 0) << replay.out;
  EXPECT_EQ(replay.out, r.out);
  auto override_app = Cli("run --config " + P("out/manifest.txt") + " --app triangle --workers 1");
  EXPECT_EQ(override_app.code, 0) << override_app.out;
  EXPECT_NE(override_app.out, r.out);
}

TEST_F(CliTest, GraphMatchingWithQueryFile)
{
  {
    std::ofstream g{P("fig.txt")};
    for (const auto &v : submine::gen::Figure4Data()) g << submine::FormatVertexLine(v) << '\n';
    std::ofstream q{P("q.txt")};
    q << "v 1 a\nv 2 c\nv 3 b\nv 4 b\nv 5 d\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 4 5\nstart 1\n";
  }
  auto r = Cli("run --app gmatch --input " + P("fig.txt") + " --query " + P("q.txt") + " --out " + P("o"));
  ASSERT_EQ(r.code, 0) << r.out;
  std::string all;
  for (const auto &e : fs::directory_iterator(dir_ / "o")) {
    if (e.path().filename().string().starts_with("results_")) all += Slurp(e.path());
  }
  EXPECT_NE(all.find("2 5 4 7 8\n"), std::string::npos) << all;
  EXPECT_EQ(all.find("2 5 1 7 8"), std::string::npos);
}

TEST_F(CliTest, BenchTinyJobHasNoRandomIo)
{
  ASSERT_EQ(Cli("gen --model complete --n 4 --out " + P("k4.txt")).code, 0);
  auto r = Cli("bench-queues --app triangle --input " + P("k4.txt"));
  ASSERT_EQ(r.code, 0) << r.out;
  std::istringstream in{r.out};
  std::string header;
  std::getline(in, header);
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.starts_with("#")) continue;
    std::istringstream f{line};
    std::string queue, trial, runtime, hit, reads, writes, messages, bytes, aggregate;
    f >> queue >> trial >> runtime >> hit >> reads >> writes >> messages >> bytes >> aggregate;
    EXPECT_EQ(reads, "0") << line;
    EXPECT_EQ(writes, "0") << line;
    EXPECT_EQ(aggregate, "4") << line;
    ++rows;
  }
  EXPECT_EQ(rows, 2u);
}

TEST_F(CliTest, BenchReportsBothQueuesAndAgrees)
{
  ASSERT_EQ(Cli("gen --model hub-cluster --n 120 --clusters 6 --p 0.5 --p-out 0.01 --seed 3 --out " + P("h.txt")).code,
            0);
  auto r = Cli("bench-queues --app triangle --workers 4 --buffer-capacity 8 --file-capacity 4 "
               "--cache-capacity 20 --trials 2 --input " +
               P("h.txt"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("# mean_cache_hit_rate\tlsh"), std::string::npos);
  EXPECT_NE(r.out.find("# mean_cache_hit_rate\tstream"), std::string::npos);
}

}  // namespace
