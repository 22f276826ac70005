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

#include "harness/runner.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <utility>

#include <nlohmann/json.hpp>

#include "gqre/baselines.h"
#include "gqre/errors.h"
#include "gqre/game_io.h"
#include "gqre/payoff.h"
#include "gqre/random.h"
#include "harness/csv.h"
#include "harness/hash.h"

namespace gqre::harness {
namespace {

using nlohmann::json;

struct PreparedGame {
  GameSpec spec;
  Game game;
  RegularizerSet regs;
  std::string path;
  std::string sha1;
  int metric_every = 1;
};

struct Cell {
  std::string run_id;
  std::size_t game = 0;
  std::string algorithm;
  int seed_index = 0;
  std::uint64_t seed = 0;
};

int ResolveCadence(const ExperimentConfig& config, const GameSpec& spec) {
  if (spec.metric_every) return *spec.metric_every;
  if (config.metric_every > 0) return config.metric_every;
  return config.iterations <= 2000 ? 1 : 10;
}

std::string SeedLabel(int index, int count) {
  const int width = std::max<int>(2, std::to_string(count - 1).size());
  std::string s = std::to_string(index);
  return std::string(width - std::min<int>(width, s.size()), '0') + s;
}

StrategyProfile InitFromConfig(const ExperimentConfig& config,
                               const Game& game) {
  StrategyProfile p;
  for (const std::vector<double>& d : *config.init) {
    p.distributions.push_back(
        Eigen::Map<const Eigen::VectorXd>(d.data(), d.size()));
  }
  ValidateProfileForGame(game, p, 1e-9);
  return p;
}

void WriteTrajectoryRows(CsvWriter& csv, const Cell& cell,
                         const PreparedGame& game, const Trajectory& t,
                         bool wall_clock) {
  for (const IterationRecord& r : t.records) {
    csv.Field(cell.run_id)
        .Field(cell.algorithm)
        .Field(game.spec.id)
        .Field(std::to_string(cell.seed))
        .Field(static_cast<std::int64_t>(r.iteration))
        .Field(r.gamma)
        .Field(r.epsilon)
        .Field(r.samples)
        .Field(r.smoothed_gap)
        .Field(r.nash_gap)
        .Field(wall_clock ? std::optional<double>(r.wall_ms) : std::nullopt);
    csv.EndRow();
  }
}

void MeanAndInterval(const std::vector<double>& values,
                     std::optional<double>* mean,
                     std::optional<double>* half_width) {
  if (values.empty()) return;
  double m = 0.0;
  for (double v : values) m += v;
  m /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - m) * (v - m);
  *mean = m;
  *half_width =
      values.size() > 1
          ? 1.96 * std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                std::sqrt(static_cast<double>(values.size()))
          : 0.0;
}

}  // namespace

const std::vector<std::string>& TrajectoryColumns() {
  static const std::vector<std::string> kColumns = {
      "run_id", "algorithm",    "game_id",  "seed",    "iteration", "gamma",
      "epsilon", "M", "smoothed_gap", "nash_gap", "wall_ms"};
  return kColumns;
}

const std::vector<std::string>& SummaryColumns() {
  static const std::vector<std::string> kColumns = {
      "game_id",           "algorithm",         "runs",
      "iteration",         "nash_gap_mean",     "nash_gap_ci95",
      "smoothed_gap_mean", "smoothed_gap_ci95", "oracle_calls_mean",
      "plays_mean"};
  return kColumns;
}

std::string ResolveOutputDir(const std::optional<std::string>& explicit_dir,
                             const ExperimentConfig& config) {
  if (explicit_dir && !explicit_dir->empty()) return *explicit_dir;
  if (config.output_dir && !config.output_dir->empty()) {
    return *config.output_dir;
  }
  if (const char* env = std::getenv("GQRE_OUTPUT_DIR"); env && *env) {
    return env;
  }
  return "gqre_out";
}

ExperimentOutputs RunExperiment(const ExperimentConfig& config,
                                const RunnerOptions& options) {
  ValidateConfig(config);
  namespace fs = std::filesystem;
  const fs::path dir(options.output_dir);
  fs::create_directories(dir / "games");

  ExperimentOutputs out;
  std::vector<PreparedGame> games;
  for (const GameSpec& spec : config.games) {
    PreparedGame g;
    g.spec = spec;
    std::string bytes;
    if (spec.file.empty()) {
      g.game = GenerateGame(spec);
      bytes = SerializeGame(g.game);
      g.path = (dir / "games" / (spec.id + ".json")).string();
      WriteTextFile(g.path, bytes);
    } else {
      bytes = ReadTextFile(spec.file);
      g.game = ParseGame(bytes);
      g.path = spec.file;
    }
    g.sha1 = GitBlobSha1(bytes);
    g.regs = ExpandRegularizers(config, g.game.num_players());
    ValidateRegularizerSet(g.game, g.regs);
    ValidateSchedule(config.schedule, g.game.max_actions());
    g.metric_every = ResolveCadence(config, spec);
    if (config.init) InitFromConfig(config, g.game);
    out.game_paths.push_back(g.path);
    games.push_back(std::move(g));
  }

  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < games.size(); ++gi) {
    for (const std::string& alg : config.algorithms) {
      for (int s = 0; s < config.seed_count; ++s) {
        Cell c;
        c.game = gi;
        c.algorithm = alg;
        c.seed_index = s;
        c.seed = DeriveSeed(config.base_seed, static_cast<std::uint64_t>(s));
        c.run_id = games[gi].spec.id + "/" + alg + "/s" +
                   SeedLabel(s, config.seed_count);
        cells.push_back(std::move(c));
      }
    }
  }

  // Each worker fills its own slots; rows are emitted afterwards in cell
  // order, so the output does not depend on scheduling.
  std::vector<Trajectory> results(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex log_mutex;
  int workers = options.workers > 0 ? options.workers : config.workers;
  if (workers <= 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min<int>(workers, std::max<std::size_t>(1, cells.size()));
  auto work = [&]() {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      const Cell& cell = cells[k];
      const PreparedGame& g = games[cell.game];
      try {
        RunOptions run;
        run.iterations = config.iterations;
        run.mode = config.mode;
        run.record_smoothed_gap = config.smoothed_gap;
        run.record_nash_gap = config.nash_gap;
        run.metric_every = g.metric_every;
        run.constant_step = config.constant_step;
        if (config.init) run.init = InitFromConfig(config, g.game);
        Rng rng(cell.seed);
        results[k] = RunAlgorithm(cell.algorithm, g.game, g.regs,
                                  config.schedule, run, rng);
      } catch (...) {
        errors[k] = std::current_exception();
      }
      const std::size_t finished = ++done;
      if (options.log != nullptr) {
        std::lock_guard<std::mutex> lock(log_mutex);
        *options.log << "[" << options.command << "] " << finished << "/"
                     << cells.size() << " " << cell.run_id << "\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  out.trajectories_path = (dir / "trajectories.csv").string();
  {
    std::ofstream csv_file(out.trajectories_path, std::ios::binary);
    if (!csv_file) {
      throw ValidationError("cannot write " + out.trajectories_path);
    }
    CsvWriter csv(csv_file);
    csv.Row(TrajectoryColumns());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      WriteTrajectoryRows(csv, cells[k], games[cells[k].game], results[k],
                          config.wall_clock);
      out.rows += static_cast<std::int64_t>(results[k].records.size());
    }
  }

  // Summary of final-iteration gaps per (game, algorithm).
  for (std::size_t gi = 0; gi < games.size(); ++gi) {
    for (const std::string& alg : config.algorithms) {
      SummaryRow row;
      row.game_id = games[gi].spec.id;
      row.algorithm = alg;
      std::vector<double> nash, smooth;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k].game != gi || cells[k].algorithm != alg) continue;
        const IterationRecord& last = results[k].records.back();
        ++row.runs;
        row.iteration = last.iteration;
        if (last.nash_gap) nash.push_back(*last.nash_gap);
        if (last.smoothed_gap) smooth.push_back(*last.smoothed_gap);
        row.oracle_calls_mean += static_cast<double>(last.oracle_calls);
        row.plays_mean += static_cast<double>(last.plays);
      }
      row.oracle_calls_mean /= row.runs;
      row.plays_mean /= row.runs;
      MeanAndInterval(nash, &row.nash_gap_mean, &row.nash_gap_ci95);
      MeanAndInterval(smooth, &row.smoothed_gap_mean, &row.smoothed_gap_ci95);
      out.summary.push_back(row);
    }
  }
  if (options.write_summary) {
    out.summary_path = (dir / "summary.csv").string();
    std::ofstream file(out.summary_path, std::ios::binary);
    if (!file) throw ValidationError("cannot write " + out.summary_path);
    CsvWriter csv(file);
    csv.Row(SummaryColumns());
    for (const SummaryRow& r : out.summary) {
      csv.Field(r.game_id)
          .Field(r.algorithm)
          .Field(static_cast<std::int64_t>(r.runs))
          .Field(static_cast<std::int64_t>(r.iteration))
          .Field(r.nash_gap_mean)
          .Field(r.nash_gap_ci95)
          .Field(r.smoothed_gap_mean)
          .Field(r.smoothed_gap_ci95)
          .Field(r.oracle_calls_mean)
          .Field(r.plays_mean);
      csv.EndRow();
    }
  }

  json manifest;
  manifest["manifest_schema_version"] = kManifestSchemaVersion;
  manifest["tool"] = {{"name", "gqre"}, {"version", GQRE_VERSION_STRING}};
  manifest["command"] = options.command;
  manifest["trajectory_schema"] = {{"version", kTrajectorySchemaVersion},
                                   {"columns", TrajectoryColumns()},
                                   {"file", "trajectories.csv"}};
  if (options.write_summary) {
    manifest["summary_schema"] = {{"columns", SummaryColumns()},
                                  {"file", "summary.csv"},
                                  {"interval", "normal 95% over seeds"}};
  }
  json config_json = ConfigToJson(config);
  config_json.erase("workers");
  config_json.erase("output_dir");
  manifest["config"] = config_json;
  manifest["seed_rule"] =
      "seed = DeriveSeed(seeds.base, seed_index), shared by every game and "
      "algorithm";
  manifest["games"] = json::array();
  for (const PreparedGame& g : games) {
    manifest["games"].push_back(
        {{"id", g.spec.id},
         {"source", g.spec.file.empty() ? "generator" : "file"},
         {"path", g.spec.file.empty()
                      ? fs::path(g.path).lexically_relative(dir).string()
                      : g.path},
         {"git_blob_sha1", g.sha1},
         {"action_counts", g.game.action_counts},
         {"metric_every", g.metric_every}});
  }
  manifest["runs"] = json::array();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    manifest["runs"].push_back(
        {{"run_id", cells[k].run_id},
         {"game_id", games[cells[k].game].spec.id},
         {"algorithm", cells[k].algorithm},
         {"seed_index", cells[k].seed_index},
         {"seed", cells[k].seed},
         {"init_clipped", results[k].init_clipped},
         {"rows", results[k].records.size()}});
  }
  out.manifest_path = (dir / "manifest.json").string();
  WriteTextFile(out.manifest_path, manifest.dump(2) + "\n");
  return out;
}

}  // namespace gqre::harness
