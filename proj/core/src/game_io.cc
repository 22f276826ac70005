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

#include "gqre/game_io.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gqre/errors.h"

namespace gqre {
namespace {

using nlohmann::json;

template <typename T>
json OptionalToJson(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> OptionalFromJson(const json& object, const char* key) {
  if (!object.contains(key) || object.at(key).is_null()) return std::nullopt;
  return object.at(key).get<T>();
}

json Parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

std::string SerializeGame(const Game& game) {
  ValidateGame(game);
  json meta = {
      {"generator", game.metadata.generator},
      {"seed", OptionalToJson(game.metadata.seed)},
      {"mu", OptionalToJson(game.metadata.mu)},
      {"skew", OptionalToJson(game.metadata.skew)},
      {"k", OptionalToJson(game.metadata.k)},
  };
  if (game.metadata.pre_normalization) {
    meta["pre_normalization"] = *game.metadata.pre_normalization;
  }
  json doc = {
      {"players", game.num_players()},
      {"action_counts", game.action_counts},
      {"utilities", game.utilities},
      {"normalized", game.normalized},
      {"metadata", std::move(meta)},
  };
  return doc.dump(2) + "\n";
}

Game ParseGame(std::string_view text) {
  const json doc = Parse(text, "game document");
  Game game;
  try {
    game.action_counts = doc.at("action_counts").get<std::vector<int>>();
    game.utilities =
        doc.at("utilities").get<std::vector<std::vector<double>>>();
    game.normalized = doc.value("normalized", false);
    if (doc.contains("players") &&
        doc.at("players").get<int>() != game.num_players()) {
      throw ValidationError("players does not match action_counts");
    }
    if (doc.contains("metadata")) {
      const json& meta = doc.at("metadata");
      game.metadata.generator = meta.value("generator", "custom");
      game.metadata.seed = OptionalFromJson<std::uint64_t>(meta, "seed");
      game.metadata.mu = OptionalFromJson<double>(meta, "mu");
      game.metadata.skew = OptionalFromJson<double>(meta, "skew");
      game.metadata.k = OptionalFromJson<int>(meta, "k");
      game.metadata.pre_normalization =
          OptionalFromJson<std::vector<std::vector<double>>>(
              meta, "pre_normalization");
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid game document: ") + e.what());
  }
  ValidateGame(game);
  return game;
}

std::string SerializeProfile(const StrategyProfile& profile) {
  json dists = json::array();
  for (const Eigen::VectorXd& d : profile.distributions) {
    dists.push_back(std::vector<double>(d.data(), d.data() + d.size()));
  }
  json doc = {{"distributions", std::move(dists)}, {"floor", profile.floor}};
  return doc.dump(2) + "\n";
}

StrategyProfile ParseProfile(std::string_view text) {
  const json doc = Parse(text, "profile document");
  StrategyProfile profile;
  try {
    const json& dists = doc.is_array() ? doc : doc.at("distributions");
    for (const json& d : dists) {
      const auto values = d.get<std::vector<double>>();
      profile.distributions.push_back(
          Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()));
    }
    if (doc.is_object()) profile.floor = doc.value("floor", 0.0);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid profile document: ") +
                          e.what());
  }
  return profile;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ValidationError("short write to " + path);
}

}  // namespace gqre
