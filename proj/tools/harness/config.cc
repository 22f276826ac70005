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

#include "harness/config.h"

#include <filesystem>
#include <set>
#include <string_view>
#include <utility>

#include "gqre/baselines.h"
#include "gqre/errors.h"
#include "gqre/game_io.h"
#include "gqre/generators.h"
#include "gqre/random.h"

namespace gqre::harness {
namespace {

using nlohmann::json;

void RejectUnknownKeys(const json& obj, std::string_view where,
                       const std::set<std::string>& known) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) {
      throw ValidationError("unknown key '" + it.key() + "' in " +
                            std::string(where));
    }
  }
}

template <typename T>
T Get(const json& obj, const char* key, T fallback, std::string_view where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("key '" + std::string(key) + "' in " +
                          std::string(where) + " has the wrong type");
  }
}

json ToJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd ToVector(const json& doc, std::string_view what) {
  std::vector<double> values;
  try {
    values = doc.get<std::vector<double>>();
  } catch (const json::exception&) {
    throw ValidationError(std::string(what) + " must be an array of numbers");
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

GameSpec ParseGameSpec(const json& doc, const std::string& base_dir,
                       std::size_t index) {
  const std::string where = "games[" + std::to_string(index) + "]";
  if (!doc.is_object()) throw ValidationError(where + " must be an object");
  RejectUnknownKeys(doc, where,
                    {"id", "generator", "file", "n", "mu", "skew", "m", "k",
                     "seed", "metric_every"});
  GameSpec spec;
  spec.generator = Get<std::string>(doc, "generator", "", where);
  spec.file = Get<std::string>(doc, "file", "", where);
  if (spec.generator.empty() == spec.file.empty()) {
    throw ValidationError(where + " needs exactly one of 'generator' or 'file'");
  }
  if (!spec.file.empty()) {
    std::filesystem::path path(spec.file);
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    if (!std::filesystem::exists(path)) {
      throw ValidationError(where + " file does not exist: " + path.string());
    }
    spec.file = path.lexically_normal().string();
  }
  spec.n = Get<int>(doc, "n", spec.n, where);
  spec.mu = Get<double>(doc, "mu", spec.mu, where);
  spec.skew = Get<double>(doc, "skew", spec.skew, where);
  spec.m = Get<int>(doc, "m", spec.m, where);
  spec.k = Get<int>(doc, "k", spec.k, where);
  spec.seed = Get<std::uint64_t>(doc, "seed", spec.seed, where);
  if (doc.contains("metric_every") && !doc.at("metric_every").is_null()) {
    spec.metric_every = Get<int>(doc, "metric_every", 0, where);
  }
  std::string default_id = spec.generator;
  if (spec.generator == "monotone") default_id += "-" + std::to_string(spec.n);
  if (spec.generator == "rank-k") {
    default_id += "-" + std::to_string(spec.m) + "-" + std::to_string(spec.k);
  }
  if (!spec.file.empty()) {
    default_id = std::filesystem::path(spec.file).stem().string();
  }
  spec.id = Get<std::string>(doc, "id", default_id, where);
  return spec;
}

json GameSpecToJson(const GameSpec& spec) {
  json doc;
  doc["id"] = spec.id;
  if (spec.file.empty()) {
    doc["generator"] = spec.generator;
    if (spec.generator == "monotone") {
      doc["n"] = spec.n;
      doc["mu"] = spec.mu;
      doc["skew"] = spec.skew;
      doc["seed"] = spec.seed;
    } else if (spec.generator == "rank-k") {
      doc["m"] = spec.m;
      doc["k"] = spec.k;
      doc["seed"] = spec.seed;
    }
  } else {
    doc["file"] = spec.file;
  }
  doc["metric_every"] =
      spec.metric_every ? json(*spec.metric_every) : json(nullptr);
  return doc;
}

}  // namespace

Game GenerateGame(const GameSpec& spec) {
  if (spec.generator == "matching-pennies") return MatchingPennies();
  Rng rng(spec.seed);
  if (spec.generator == "monotone") {
    return StronglyMonotone(spec.n, spec.mu, spec.skew, rng);
  }
  if (spec.generator == "rank-k") return RankK(spec.m, spec.k, rng);
  throw ValidationError("unknown generator '" + spec.generator +
                        "' (known: matching-pennies, monotone, rank-k)");
}

nlohmann::json RegularizerToJson(const Regularizer& reg) {
  json doc;
  doc["kind"] = std::string(DivergenceName(reg.kind));
  doc["lambda"] = reg.lambda;
  if (reg.kind == DivergenceKind::kRenyi) doc["alpha"] = reg.alpha;
  doc["reference"] = reg.reference.size() ? ToJson(reg.reference) : json(nullptr);
  if (reg.kind == DivergenceKind::kSquaredMean) {
    doc["support"] = reg.support_points.size() ? ToJson(reg.support_points)
                                               : json(nullptr);
  }
  return doc;
}

Regularizer RegularizerFromJson(const nlohmann::json& doc) {
  const std::string where = "regularizer";
  if (!doc.is_object()) throw ValidationError("regularizer must be an object");
  RejectUnknownKeys(doc, where,
                    {"kind", "lambda", "alpha", "reference", "support"});
  Regularizer reg;
  reg.kind = ParseDivergence(Get<std::string>(doc, "kind", "entropy", where));
  reg.lambda = Get<double>(doc, "lambda", 1.0, where);
  reg.alpha = Get<double>(doc, "alpha", 1.0, where);
  if (doc.contains("reference") && !doc.at("reference").is_null()) {
    reg.reference = ToVector(doc.at("reference"), "reference");
  }
  if (doc.contains("support") && !doc.at("support").is_null()) {
    reg.support_points = ToVector(doc.at("support"), "support");
  }
  if (!(reg.lambda >= 0.0)) throw ValidationError("lambda must be >= 0");
  if (reg.kind == DivergenceKind::kRenyi &&
      !(reg.alpha > 0.0 && reg.alpha <= 1.0)) {
    throw ValidationError("renyi alpha must lie in (0, 1]");
  }
  return reg;
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.games.empty()) throw ValidationError("config lists no games");
  std::set<std::string> ids;
  for (const GameSpec& g : config.games) {
    if (g.id.empty()) throw ValidationError("game id must not be empty");
    if (!ids.insert(g.id).second) {
      throw ValidationError("duplicate game id '" + g.id + "'");
    }
    if (g.metric_every && *g.metric_every < 1) {
      throw ValidationError("metric_every must be >= 1");
    }
  }
  if (config.algorithms.empty()) {
    throw ValidationError("algorithm list is empty");
  }
  std::string known;
  for (std::string_view n : AlgorithmNames()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  std::set<std::string> seen;
  for (const std::string& name : config.algorithms) {
    bool ok = false;
    for (std::string_view n : AlgorithmNames()) ok = ok || name == n;
    if (!ok) {
      throw ValidationError("unknown algorithm '" + name +
                            "' (known: " + known + ")");
    }
    if (!seen.insert(name).second) {
      throw ValidationError("algorithm '" + name + "' listed twice");
    }
  }
  if (config.regularizers.empty()) {
    throw ValidationError("config lists no regularizers");
  }
  if (config.seed_count < 1) throw ValidationError("seeds.count must be >= 1");
  if (config.iterations < 1) throw ValidationError("iterations must be >= 1");
  if (config.metric_every < 0) throw ValidationError("metrics.every must be >= 0");
  if (config.workers < 0) throw ValidationError("workers must be >= 0");
  if (config.constant_step && !(*config.constant_step > 0.0)) {
    throw ValidationError("constant_step must be positive");
  }
  if (!(config.schedule.eta > 0.0)) throw ValidationError("eta must be positive");
}

RegularizerSet ExpandRegularizers(const ExperimentConfig& config,
                                  int num_players) {
  if (config.regularizers.size() == 1) {
    return RegularizerSet(num_players, config.regularizers.front());
  }
  if (static_cast<int>(config.regularizers.size()) != num_players) {
    throw ValidationError(
        "config gives " + std::to_string(config.regularizers.size()) +
        " regularizers for a " + std::to_string(num_players) +
        "-player game");
  }
  return config.regularizers;
}

ExperimentConfig ParseConfig(const nlohmann::json& doc,
                             const std::string& base_dir) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  RejectUnknownKeys(doc, "config",
                    {"schema_version", "name", "games", "regularizers",
                     "algorithms", "gradient", "schedule", "constant_step",
                     "iterations", "seeds", "metrics", "init", "workers",
                     "output_dir"});
  const int version =
      Get<int>(doc, "schema_version", kConfigSchemaVersion, "config");
  if (version != kConfigSchemaVersion) {
    throw ValidationError("unsupported schema_version " +
                          std::to_string(version));
  }
  ExperimentConfig c;
  c.name = Get<std::string>(doc, "name", c.name, "config");

  if (!doc.contains("games") || !doc.at("games").is_array()) {
    throw ValidationError("config needs a 'games' array");
  }
  for (std::size_t k = 0; k < doc.at("games").size(); ++k) {
    c.games.push_back(ParseGameSpec(doc.at("games")[k], base_dir, k));
  }

  if (doc.contains("regularizers")) {
    const json& regs = doc.at("regularizers");
    c.regularizers.clear();
    if (regs.is_array()) {
      for (const json& r : regs) c.regularizers.push_back(RegularizerFromJson(r));
    } else {
      c.regularizers.push_back(RegularizerFromJson(regs));
    }
  }

  if (doc.contains("algorithms")) {
    c.algorithms = Get<std::vector<std::string>>(doc, "algorithms", {}, "config");
  }
  c.mode = ParseGradientMode(Get<std::string>(doc, "gradient", "oracle", "config"));

  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    if (!s.is_object()) throw ValidationError("schedule must be an object");
    RejectUnknownKeys(s, "schedule",
                      {"mode", "gamma", "epsilon", "samples", "eta"});
    c.schedule.mode =
        ParseScheduleMode(Get<std::string>(s, "mode", "fixed", "schedule"));
    c.schedule.gamma = Get<double>(s, "gamma", c.schedule.gamma, "schedule");
    c.schedule.epsilon = Get<double>(s, "epsilon", c.schedule.epsilon, "schedule");
    c.schedule.eta = Get<double>(s, "eta", c.schedule.eta, "schedule");
    const bool has_samples = s.contains("samples") && !s.at("samples").is_null();
    if (c.schedule.mode == Schedule::Mode::kTheorem) {
      if (has_samples) {
        c.schedule.samples_override =
            Get<std::int64_t>(s, "samples", 0, "schedule");
      }
    } else {
      c.schedule.samples =
          Get<std::int64_t>(s, "samples", c.schedule.samples, "schedule");
    }
  }
  if (doc.contains("constant_step") && !doc.at("constant_step").is_null()) {
    c.constant_step = Get<double>(doc, "constant_step", 0.0, "config");
  }
  c.iterations = Get<int>(doc, "iterations", c.iterations, "config");

  if (doc.contains("seeds")) {
    const json& s = doc.at("seeds");
    if (!s.is_object()) throw ValidationError("seeds must be an object");
    RejectUnknownKeys(s, "seeds", {"count", "base"});
    c.seed_count = Get<int>(s, "count", c.seed_count, "seeds");
    c.base_seed = Get<std::uint64_t>(s, "base", c.base_seed, "seeds");
  }
  if (doc.contains("metrics")) {
    const json& m = doc.at("metrics");
    if (!m.is_object()) throw ValidationError("metrics must be an object");
    RejectUnknownKeys(m, "metrics",
                      {"smoothed_gap", "nash_gap", "every", "wall_clock"});
    c.smoothed_gap = Get<bool>(m, "smoothed_gap", c.smoothed_gap, "metrics");
    c.nash_gap = Get<bool>(m, "nash_gap", c.nash_gap, "metrics");
    c.metric_every = Get<int>(m, "every", c.metric_every, "metrics");
    c.wall_clock = Get<bool>(m, "wall_clock", c.wall_clock, "metrics");
  }
  if (doc.contains("init") && !doc.at("init").is_null()) {
    c.init = Get<std::vector<std::vector<double>>>(doc, "init", {}, "config");
  }
  c.workers = Get<int>(doc, "workers", c.workers, "config");
  if (doc.contains("output_dir") && !doc.at("output_dir").is_null()) {
    c.output_dir = Get<std::string>(doc, "output_dir", "", "config");
  }
  ValidateConfig(c);
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  const std::string text = ReadTextFile(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("cannot parse " + path + ": " + e.what());
  }
  const std::filesystem::path parent =
      std::filesystem::path(path).parent_path();
  return ParseConfig(doc, parent.empty() ? "." : parent.string());
}

nlohmann::json ConfigToJson(const ExperimentConfig& c) {
  json doc;
  doc["schema_version"] = kConfigSchemaVersion;
  doc["name"] = c.name;
  doc["games"] = json::array();
  for (const GameSpec& g : c.games) doc["games"].push_back(GameSpecToJson(g));
  doc["regularizers"] = json::array();
  for (const Regularizer& r : c.regularizers) {
    doc["regularizers"].push_back(RegularizerToJson(r));
  }
  doc["algorithms"] = c.algorithms;
  doc["gradient"] = std::string(GradientModeName(c.mode));
  json s;
  s["mode"] = std::string(ScheduleModeName(c.schedule.mode));
  s["eta"] = c.schedule.eta;
  if (c.schedule.mode == Schedule::Mode::kTheorem) {
    s["samples"] = c.schedule.samples_override
                       ? json(*c.schedule.samples_override)
                       : json(nullptr);
  } else {
    s["gamma"] = c.schedule.gamma;
    s["epsilon"] = c.schedule.epsilon;
    s["samples"] = c.schedule.samples;
  }
  doc["schedule"] = s;
  doc["constant_step"] = c.constant_step ? json(*c.constant_step) : json(nullptr);
  doc["iterations"] = c.iterations;
  doc["seeds"] = {{"count", c.seed_count}, {"base", c.base_seed}};
  doc["metrics"] = {{"smoothed_gap", c.smoothed_gap},
                    {"nash_gap", c.nash_gap},
                    {"every", c.metric_every},
                    {"wall_clock", c.wall_clock}};
  doc["init"] = c.init ? json(*c.init) : json(nullptr);
  doc["workers"] = c.workers;
  doc["output_dir"] = c.output_dir ? json(*c.output_dir) : json(nullptr);
  return doc;
}

ExperimentConfig DefaultBenchConfig() {
  ExperimentConfig c;
  c.name = "default-protocol";
  GameSpec pennies;
  pennies.id = "matching-pennies";
  pennies.generator = "matching-pennies";
  c.games.push_back(pennies);
  for (int n : {10, 20, 100, 200}) {
    GameSpec g;
    g.generator = "monotone";
    g.id = "monotone-" + std::to_string(n);
    g.n = n;
    g.mu = 1.0;
    g.skew = 0.3;
    g.seed = 7;
    c.games.push_back(g);
  }
  c.regularizers = {Regularizer::Entropy(1.0)};
  c.algorithms.assign(AlgorithmNames().begin(), AlgorithmNames().end());
  c.mode = GradientMode::kOracle;
  c.schedule.mode = Schedule::Mode::kTheorem;
  c.schedule.samples_override = 100;
  c.schedule.eta = 1.0;
  c.iterations = 1000;
  c.seed_count = 20;
  c.base_seed = 2024;
  return c;
}

void AddLargeGames(ExperimentConfig& config) {
  GameSpec g;
  g.generator = "monotone";
  g.id = "monotone-1000";
  g.n = 1000;
  g.mu = 1.0;
  g.skew = 0.3;
  g.seed = 7;
  g.metric_every = 50;
  config.games.push_back(g);
}

}  // namespace gqre::harness
