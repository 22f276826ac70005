// Copyright 2026 The GQRE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "gqre/errors.h"
#include "gqre/game_io.h"
#include "gqre/generators.h"
#include "gqre/random.h"
#include "harness/config.h"
#include "harness/csv.h"
#include "harness/hash.h"
#include "harness/runner.h"

namespace gqre::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("gqre_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find("\r\n", start);
    EXPECT_NE(end, std::string::npos) << "record without CRLF";
    if (end == std::string::npos) break;
    lines.push_back(text.substr(start, end - start));
    start = end + 2;
  }
  return lines;
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string f;
  while (std::getline(in, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.name = "small";
  GameSpec g;
  g.id = "mp";
  g.generator = "matching-pennies";
  c.games = {g};
  c.algorithms = {"smoothed_fw", "ogd"};
  c.schedule.mode = Schedule::Mode::kTheorem;
  c.schedule.samples_override = 100;
  c.iterations = 40;
  c.seed_count = 3;
  c.wall_clock = false;
  return c;
}

TEST(CsvTest, FormatsShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0 / 3.0), "0.3333333333333333");
  EXPECT_EQ(FormatDouble(1e-300), "1e-300");
  EXPECT_EQ(FormatDouble(-2.0), "-2");
  EXPECT_EQ(std::stod(FormatDouble(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(CsvTest, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(EscapeCsvField("plain"), "plain");
  EXPECT_EQ(EscapeCsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(EscapeCsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(EscapeCsvField("two\nlines"), "\"two\nlines\"");
}

TEST(CsvTest, WriterAndParserRoundTrip) {
  std::ostringstream out;
  CsvWriter w(out);
  w.Row({"id", "note"});
  w.Field("x,1").Field("he said \"no\"").EndRow();
  w.Field(std::int64_t{7}).Field(std::optional<double>()).EndRow();
  EXPECT_EQ(out.str(),
            "id,note\r\n\"x,1\",\"he said \"\"no\"\"\"\r\n7,\r\n");
  const auto rows = ParseCsv(out.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "x,1");
  EXPECT_EQ(rows[1][1], "he said \"no\"");
  EXPECT_EQ(rows[2][1], "");
  EXPECT_THROW(ParseCsv("\"open"), ValidationError);
}

TEST(HashTest, MatchesGitObjectIds) {
  // `git hash-object` of an empty file and of "hello\n".
  EXPECT_EQ(GitBlobSha1(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  EXPECT_EQ(GitBlobSha1("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST(ConfigTest, DefaultsAndBroadcast) {
  const json doc = json::parse(R"({
    "games": [{"generator": "monotone", "n": 4}],
    "regularizers": {"kind": "renyi", "lambda": 2.0, "alpha": 0.5}
  })");
  const ExperimentConfig c = ParseConfig(doc);
  ASSERT_EQ(c.games.size(), 1u);
  EXPECT_EQ(c.games[0].id, "monotone-4");
  EXPECT_EQ(c.algorithms, std::vector<std::string>{"smoothed_fw"});
  EXPECT_EQ(c.seed_count, 20);
  EXPECT_EQ(c.mode, GradientMode::kOracle);
  const RegularizerSet regs = ExpandRegularizers(c, 2);
  ASSERT_EQ(regs.size(), 2u);
  EXPECT_EQ(regs[1].kind, DivergenceKind::kRenyi);
  EXPECT_EQ(regs[1].alpha, 0.5);
  EXPECT_EQ(regs[1].lambda, 2.0);
}

TEST(ConfigTest, PerPlayerRegularizers) {
  const json doc = json::parse(R"({
    "games": [{"generator": "matching-pennies"}],
    "regularizers": [{"kind": "tv", "lambda": 0.5}, {"kind": "sqmean"}]
  })");
  const ExperimentConfig c = ParseConfig(doc);
  const RegularizerSet regs = ExpandRegularizers(c, 2);
  EXPECT_EQ(regs[0].kind, DivergenceKind::kTotalVariation);
  EXPECT_EQ(regs[1].kind, DivergenceKind::kSquaredMean);
  EXPECT_THROW(ExpandRegularizers(c, 3), ValidationError);
}

TEST(ConfigTest, UnknownAlgorithmListsKnownNames) {
  const json doc = json::parse(R"({
    "games": [{"generator": "matching-pennies"}],
    "algorithms": ["smoothed_fw", "fictitious_play"]
  })");
  try {
    ParseConfig(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("fictitious_play"), std::string::npos);
    EXPECT_NE(what.find("adaptive_pgd"), std::string::npos);
    EXPECT_NE(what.find("extragradient"), std::string::npos);
  }
}

TEST(ConfigTest, RejectsInvalidDocuments) {
  const char* bad[] = {
      R"({"games": []})",
      R"({"games": [{"generator": "matching-pennies"}], "algorithms": []})",
      R"({"games": [{"generator": "matching-pennies"}], "seeds": {"count": 0}})",
      R"({"games": [{"generator": "matching-pennies"}], "colour": 1})",
      R"({"games": [{"file": "no/such/file.json"}]})",
      R"({"games": [{"generator": "matching-pennies", "file": "x.json"}]})",
      R"({"games": [{"generator": "matching-pennies"}], "iterations": "ten"})",
      R"({"games": [{"generator": "matching-pennies"}], "schema_version": 9})",
      R"({"games": [{"generator": "matching-pennies"}],
          "regularizers": {"kind": "renyi", "alpha": 1.5}})",
      R"({"games": [{"id": "a", "generator": "matching-pennies"},
                    {"id": "a", "generator": "matching-pennies"}]})",
  };
  for (const char* text : bad) {
    EXPECT_THROW(ParseConfig(json::parse(text)), ValidationError) << text;
  }
}

TEST(ConfigTest, CanonicalFormRoundTrips) {
  ExperimentConfig c = DefaultBenchConfig();
  c.init = std::vector<std::vector<double>>{{0.7, 0.3}, {0.4, 0.6}};
  c.constant_step = 0.1;
  const json once = ConfigToJson(c);
  const json twice = ConfigToJson(ParseConfig(once));
  EXPECT_EQ(once, twice);
}

TEST(ConfigTest, ShippedProtocolMatchesBuiltInDefault) {
  const ExperimentConfig shipped =
      LoadConfig(std::string(GQRE_SOURCE_DIR) + "/configs/default_protocol.json");
  EXPECT_EQ(ConfigToJson(shipped), ConfigToJson(DefaultBenchConfig()));
  for (const char* name :
       {"matching_pennies_fw.json", "theorem_schedule.json"}) {
    EXPECT_NO_THROW(LoadConfig(std::string(GQRE_SOURCE_DIR) + "/configs/" + name))
        << name;
  }
}

TEST(ConfigTest, DefaultProtocolValues) {
  const ExperimentConfig c = DefaultBenchConfig();
  ASSERT_EQ(c.games.size(), 5u);
  EXPECT_EQ(c.games[0].generator, "matching-pennies");
  std::vector<int> sizes;
  for (std::size_t k = 1; k < c.games.size(); ++k) sizes.push_back(c.games[k].n);
  EXPECT_EQ(sizes, (std::vector<int>{10, 20, 100, 200}));
  EXPECT_EQ(c.iterations, 1000);
  EXPECT_EQ(c.seed_count, 20);
  EXPECT_EQ(*c.schedule.samples_override, 100);
  EXPECT_EQ(c.schedule.eta, 1.0);
  EXPECT_EQ(c.regularizers[0].lambda, 1.0);
  EXPECT_EQ(c.algorithms.size(), 5u);
  ExperimentConfig large = c;
  AddLargeGames(large);
  EXPECT_EQ(large.games.back().n, 1000);
  EXPECT_TRUE(large.games.back().metric_every.has_value());
}

TEST(RunnerTest, WritesOneRowPerSeedAndIteration) {
  const fs::path dir = ScratchDir("rows");
  RunnerOptions opts;
  opts.output_dir = dir.string();
  opts.workers = 2;
  const ExperimentOutputs out = RunExperiment(SmallConfig(), opts);
  EXPECT_EQ(out.rows, 2 * 3 * 40);

  const std::vector<std::string> lines = SplitLines(Slurp(out.trajectories_path));
  ASSERT_EQ(lines.size(), 1u + 240u);
  EXPECT_EQ(lines[0],
            "run_id,algorithm,game_id,seed,iteration,gamma,epsilon,M,"
            "smoothed_gap,nash_gap,wall_ms");
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::vector<std::string> f = SplitFields(lines[k]);
    ASSERT_EQ(f.size(), 11u) << lines[k];
    EXPECT_EQ(f[2], "mp");
    EXPECT_EQ(std::stoi(f[4]), static_cast<int>((k - 1) % 40) + 1);
    EXPECT_EQ(f[7], "100");
    EXPECT_FALSE(f[8].empty());
    EXPECT_FALSE(f[9].empty());
    EXPECT_TRUE(f[10].empty());
  }
  // Rows are grouped by run in config order.
  EXPECT_EQ(SplitFields(lines[1])[0], "mp/smoothed_fw/s00");
  EXPECT_EQ(SplitFields(lines[121])[0], "mp/ogd/s00");
  EXPECT_TRUE(out.summary_path.empty());
}

TEST(RunnerTest, ByteIdenticalAcrossRunsAndWorkerCounts) {
  const fs::path a = ScratchDir("det_a");
  const fs::path b = ScratchDir("det_b");
  RunnerOptions opts;
  opts.output_dir = a.string();
  opts.workers = 1;
  RunExperiment(SmallConfig(), opts);
  opts.output_dir = b.string();
  opts.workers = 4;
  RunExperiment(SmallConfig(), opts);
  EXPECT_EQ(Slurp(a / "trajectories.csv"), Slurp(b / "trajectories.csv"));
  EXPECT_EQ(Slurp(a / "manifest.json"), Slurp(b / "manifest.json"));
}

TEST(RunnerTest, ManifestMakesRowsAttributable) {
  const fs::path dir = ScratchDir("manifest");
  RunnerOptions opts;
  opts.output_dir = dir.string();
  const ExperimentOutputs out = RunExperiment(SmallConfig(), opts);
  const json m = json::parse(Slurp(out.manifest_path));
  EXPECT_EQ(m["trajectory_schema"]["version"], kTrajectorySchemaVersion);
  EXPECT_EQ(m["trajectory_schema"]["columns"].size(), 11u);
  EXPECT_EQ(m["config"]["iterations"], 40);
  EXPECT_EQ(m["config"]["seeds"]["count"], 3);
  ASSERT_EQ(m["games"].size(), 1u);
  const std::string game_path = (dir / m["games"][0]["path"].get<std::string>()).string();
  EXPECT_EQ(m["games"][0]["git_blob_sha1"], GitBlobSha1(Slurp(game_path)));
  EXPECT_EQ(m["games"][0]["metric_every"], 1);
  EXPECT_NO_THROW(ReadGame(game_path));
  ASSERT_EQ(m["runs"].size(), 6u);
  const json& run = m["runs"][4];
  EXPECT_EQ(run["run_id"], "mp/ogd/s01");
  EXPECT_EQ(run["seed"].get<std::uint64_t>(), DeriveSeed(2024, 1));
  EXPECT_EQ(run["rows"], 40);
  const auto rows = ParseCsv(Slurp(out.trajectories_path));
  bool found = false;
  for (const auto& r : rows) {
    if (r[0] == "mp/ogd/s01") {
      EXPECT_EQ(r[3], std::to_string(DeriveSeed(2024, 1)));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(RunnerTest, SummaryAggregatesFinalGaps) {
  const fs::path dir = ScratchDir("summary");
  RunnerOptions opts;
  opts.output_dir = dir.string();
  opts.write_summary = true;
  const ExperimentOutputs out = RunExperiment(SmallConfig(), opts);
  const auto rows = ParseCsv(Slurp(out.trajectories_path));
  double total = 0.0;
  int count = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k][1] == "smoothed_fw" && rows[k][4] == "40") {
      total += std::stod(rows[k][9]);
      ++count;
    }
  }
  ASSERT_EQ(count, 3);
  ASSERT_EQ(out.summary.size(), 2u);
  EXPECT_EQ(out.summary[0].runs, 3);
  EXPECT_NEAR(*out.summary[0].nash_gap_mean, total / 3.0, 1e-15);
  const auto summary = ParseCsv(Slurp(out.summary_path));
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_EQ(summary[0], SummaryColumns());
  EXPECT_EQ(summary[2][1], "ogd");
}

TEST(RunnerTest, FileGamesAndInitFromConfig) {
  const fs::path dir = ScratchDir("file");
  WriteGame((dir / "pennies.json").string(), MatchingPennies());
  const json doc = json::parse(R"({
    "games": [{"file": "pennies.json"}],
    "algorithms": ["smoothed_fw"],
    "gradient": "exact",
    "schedule": {"mode": "fixed", "gamma": 0.1, "epsilon": 0.01},
    "iterations": 2000,
    "seeds": {"count": 1},
    "init": [[0.7, 0.3], [0.4, 0.6]],
    "metrics": {"every": 500, "wall_clock": false}
  })");
  const ExperimentConfig c = ParseConfig(doc, dir.string());
  EXPECT_EQ(c.games[0].id, "pennies");
  RunnerOptions opts;
  opts.output_dir = (dir / "out").string();
  opts.write_summary = true;
  const ExperimentOutputs out = RunExperiment(c, opts);
  ASSERT_EQ(out.summary.size(), 1u);
  EXPECT_LE(*out.summary[0].smoothed_gap_mean, 1e-6);
  const auto rows = ParseCsv(Slurp(out.trajectories_path));
  EXPECT_EQ(rows[1][7], "0");
  EXPECT_TRUE(rows[1][9].empty());
  EXPECT_FALSE(rows[500][9].empty());
}

TEST(RunnerTest, OutputDirectoryResolution) {
  ExperimentConfig c = SmallConfig();
  ::setenv("GQRE_OUTPUT_DIR", "/tmp/from-env", 1);
  EXPECT_EQ(ResolveOutputDir(std::nullopt, c), "/tmp/from-env");
  c.output_dir = "from-config";
  EXPECT_EQ(ResolveOutputDir(std::nullopt, c), "from-config");
  EXPECT_EQ(ResolveOutputDir(std::string("explicit"), c), "explicit");
  ::unsetenv("GQRE_OUTPUT_DIR");
  c.output_dir.reset();
  EXPECT_EQ(ResolveOutputDir(std::nullopt, c), "gqre_out");
}

TEST(RunnerTest, BadScheduleFailsBeforeRunning) {
  ExperimentConfig c = SmallConfig();
  c.schedule.mode = Schedule::Mode::kFixed;
  c.schedule.epsilon = 0.9;
  RunnerOptions opts;
  opts.output_dir = ScratchDir("bad").string();
  EXPECT_THROW(RunExperiment(c, opts), ValidationError);
}

}  // namespace
}  // namespace gqre::harness
