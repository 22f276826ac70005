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

// gqre: generate games, run solvers and baselines, verify equilibria and
// evaluate single quantal responses.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "gqre/errors.h"
#include "gqre/game_io.h"
#include "gqre/metrics.h"
#include "gqre/regularizers.h"
#include "harness/config.h"
#include "harness/runner.h"

namespace {

using gqre::harness::ExperimentConfig;

constexpr int kUsageError = 2;

std::vector<double> ParseNumberList(const std::string& text,
                                    const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument(item);
      }
    } catch (const std::logic_error&) {
      throw gqre::ValidationError(what + ": cannot read '" + item +
                                  "' as a number");
    }
  }
  if (out.empty()) throw gqre::ValidationError(what + " is empty");
  return out;
}

Eigen::VectorXd ToVector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

struct RegularizerFlags {
  std::string kind = "entropy";
  double lambda = 1.0;
  double alpha = 0.5;
  std::string reference;
  std::string support;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--kind", kind,
                    "entropy, tv, renyi, hellinger or sqmean")
        ->capture_default_str();
    cmd->add_option("--lambda", lambda, "Rationality parameter")
        ->capture_default_str();
    cmd->add_option("--alpha", alpha, "Renyi order in (0, 1]")
        ->capture_default_str();
    cmd->add_option("--reference", reference,
                    "Comma-separated reference distribution (default uniform)");
    cmd->add_option("--support", support,
                    "Comma-separated support points for sqmean (default 1..n)");
  }

  gqre::Regularizer Build() const {
    gqre::Regularizer reg;
    reg.kind = gqre::ParseDivergence(kind);
    reg.lambda = lambda;
    reg.alpha = reg.kind == gqre::DivergenceKind::kRenyi ? alpha : 1.0;
    if (!reference.empty()) {
      reg.reference = ToVector(ParseNumberList(reference, "--reference"));
    }
    if (!support.empty()) {
      reg.support_points = ToVector(ParseNumberList(support, "--support"));
    }
    return reg;
  }
};

struct RunFlags {
  std::string config;
  std::string out;
  int workers = 0;
  std::optional<int> seeds;
  std::optional<int> iterations;
  bool no_wall_clock = false;
  bool quiet = false;

  void Attach(CLI::App* cmd) {
    cmd->add_option("--out", out,
                    "Output directory (default: config, then $GQRE_OUTPUT_DIR, "
                    "then ./gqre_out)");
    cmd->add_option("--workers", workers,
                    "Worker threads (default: config, then all cores)");
    cmd->add_option("--seeds", seeds, "Override the seed count");
    cmd->add_option("--iterations", iterations, "Override T");
    cmd->add_flag("--no-wall-clock", no_wall_clock,
                  "Leave the wall_ms column empty");
    cmd->add_flag("-q,--quiet", quiet, "No progress output");
  }

  int Run(ExperimentConfig config, const std::string& command,
          bool summary) const {
    if (seeds) config.seed_count = *seeds;
    if (iterations) config.iterations = *iterations;
    if (no_wall_clock) config.wall_clock = false;
    gqre::harness::RunnerOptions opts;
    opts.output_dir = gqre::harness::ResolveOutputDir(
        out.empty() ? std::nullopt : std::optional<std::string>(out), config);
    opts.workers = workers;
    opts.write_summary = summary;
    opts.command = command;
    opts.log = quiet ? nullptr : &std::cerr;
    const gqre::harness::ExperimentOutputs result =
        gqre::harness::RunExperiment(config, opts);
    std::cout << "wrote " << result.rows << " rows to "
              << result.trajectories_path << "\n"
              << "manifest " << result.manifest_path << "\n";
    if (summary) {
      std::cout << "summary " << result.summary_path << "\n";
      std::printf("%-20s %-14s %12s %12s\n", "game", "algorithm",
                  "nash_gap", "ci95");
      for (const auto& row : result.summary) {
        std::printf("%-20s %-14s %12.4e %12.2e\n", row.game_id.c_str(),
                    row.algorithm.c_str(), row.nash_gap_mean.value_or(NAN),
                    row.nash_gap_ci95.value_or(NAN));
      }
    }
    return 0;
  }
};

int Generate(const std::string& name, int n, double mu, double skew, int m,
             int k, std::uint64_t seed, const std::string& out) {
  gqre::harness::GameSpec spec;
  spec.generator = name;
  spec.n = n;
  spec.mu = mu;
  spec.skew = skew;
  spec.m = m;
  spec.k = k;
  spec.seed = seed;
  const std::string text = gqre::SerializeGame(gqre::harness::GenerateGame(spec));
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    gqre::WriteTextFile(out, text);
  }
  return 0;
}

int Verify(const std::string& game_path, const std::string& profile_path,
           const RegularizerFlags& flags, double eta, double tol,
           const std::string& out) {
  const gqre::Game game = gqre::ReadGame(game_path);
  const gqre::StrategyProfile profile = gqre::ReadProfile(profile_path);
  gqre::ValidateProfileForGame(game, profile, 1e-9);
  const gqre::RegularizerSet regs(game.num_players(), flags.Build());
  const gqre::GapReport report =
      gqre::EvaluateGaps(game, regs, profile, eta, tol);
  nlohmann::json doc;
  doc["is_gqre"] = report.is_gqre;
  doc["epsilon"] = report.epsilon;
  doc["smoothed_gap"] = report.smoothed_gap ? nlohmann::json(*report.smoothed_gap)
                                            : nlohmann::json(nullptr);
  doc["tolerance"] = tol;
  doc["eta"] = eta;
  doc["per_player"] = nlohmann::json::array();
  for (const gqre::PlayerGapReport& p : report.players) {
    doc["per_player"].push_back(
        {{"V_i", p.smoothed_gap ? nlohmann::json(*p.smoothed_gap)
                                : nlohmann::json(nullptr)},
         {"epsilon_i", p.epsilon},
         {"max_pure_slack", std::isfinite(p.max_pure_slack)
                                ? nlohmann::json(p.max_pure_slack)
                                : nlohmann::json(nullptr)}});
  }
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    gqre::WriteTextFile(out, text);
  }
  return 0;
}

int Respond(const std::string& utilities, const RegularizerFlags& flags,
            int precision) {
  const Eigen::VectorXd u = ToVector(ParseNumberList(utilities, "--u"));
  const gqre::Regularizer reg = flags.Build();
  gqre::ValidateRegularizer(reg, static_cast<int>(u.size()));
  const Eigen::VectorXd p = gqre::QuantalResponse(reg, u);
  for (Eigen::Index a = 0; a < p.size(); ++a) {
    std::printf(a == 0 ? "%.*f" : ", %.*f", precision, p[a]);
  }
  std::printf("\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gqre: generalized quantal response equilibria"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GQRE_VERSION_STRING);

  CLI::App* gen = app.add_subcommand("gen", "Write a game as JSON");
  std::string gen_name, gen_out;
  int gen_n = 10, gen_m = 5, gen_k = 3;
  double gen_mu = 1.0, gen_skew = 0.3;
  std::uint64_t gen_seed = 0;
  gen->add_option("--game", gen_name, "matching-pennies, monotone or rank-k")
      ->required();
  gen->add_option("--n", gen_n, "Actions per player (monotone)")
      ->capture_default_str();
  gen->add_option("--mu", gen_mu, "Strong monotonicity (monotone)")
      ->capture_default_str();
  gen->add_option("--skew", gen_skew, "Skew-symmetric scale (monotone)")
      ->capture_default_str();
  gen->add_option("--m", gen_m, "Actions per player (rank-k)")
      ->capture_default_str();
  gen->add_option("--k", gen_k, "Rank of A + B (rank-k)")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  CLI::App* solve =
      app.add_subcommand("solve", "Run the algorithms of a config file");
  RunFlags solve_flags;
  solve->add_option("--config", solve_flags.config, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  solve_flags.Attach(solve);

  CLI::App* verify =
      app.add_subcommand("verify", "Report equilibrium gaps of a profile");
  std::string verify_game, verify_profile, verify_out;
  double verify_eta = 1.0, verify_tol = 1e-6;
  RegularizerFlags verify_reg;
  verify->add_option("--game", verify_game, "Game file")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--profile", verify_profile, "Profile file")
      ->required()
      ->check(CLI::ExistingFile);
  verify->add_option("--eta", verify_eta, "Smoothing of the gap V")
      ->capture_default_str();
  verify->add_option("--tol", verify_tol, "Acceptance tolerance")
      ->capture_default_str();
  verify->add_option("--out", verify_out, "Report file (default stdout)");
  verify_reg.Attach(verify);

  CLI::App* respond =
      app.add_subcommand("respond", "Print one quantal response");
  std::string respond_u;
  int respond_precision = 5;
  RegularizerFlags respond_reg;
  respond->add_option("--u", respond_u, "Comma-separated utilities")
      ->required();
  respond->add_option("--precision", respond_precision, "Decimal places")
      ->capture_default_str();
  respond_reg.Attach(respond);

  CLI::App* bench = app.add_subcommand(
      "bench", "Run the benchmark matrix and summarize final gaps");
  RunFlags bench_flags;
  bool bench_large = false;
  bench->add_option("--config", bench_flags.config,
                    "Experiment config (default: built-in protocol)")
      ->check(CLI::ExistingFile);
  bench->add_flag("--large", bench_large,
                  "Add the 1000-action monotone game");
  bench_flags.Attach(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      return Generate(gen_name, gen_n, gen_mu, gen_skew, gen_m, gen_k,
                      gen_seed, gen_out);
    }
    if (*solve) {
      return solve_flags.Run(gqre::harness::LoadConfig(solve_flags.config),
                             "solve", false);
    }
    if (*verify) {
      return Verify(verify_game, verify_profile, verify_reg, verify_eta,
                    verify_tol, verify_out);
    }
    if (*respond) return Respond(respond_u, respond_reg, respond_precision);
    if (*bench) {
      ExperimentConfig config =
          bench_flags.config.empty()
              ? gqre::harness::DefaultBenchConfig()
              : gqre::harness::LoadConfig(bench_flags.config);
      if (bench_large) gqre::harness::AddLargeGames(config);
      return bench_flags.Run(config, "bench", true);
    }
  } catch (const gqre::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kUsageError;
  } catch (const gqre::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
