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

#ifndef GQRE_GAME_IO_H_
#define GQRE_GAME_IO_H_

#include <string>
#include <string_view>

#include "gqre/game.h"

namespace gqre {

// Game documents look like
//
//   {"players": 2, "action_counts": [2, 2],
//    "utilities": [[...], [...]], "normalized": true,
//    "metadata": {"generator": "monotone", "seed": 7, "mu": 1.0,
//                 "skew": 0.3, "k": null, "pre_normalization": [[...], ...]}}
//
// with each utility tensor flattened row-major (last player fastest).
std::string SerializeGame(const Game& game);
Game ParseGame(std::string_view text);

// Profile documents: {"distributions": [[...], ...], "floor": 0.0}. A bare
// array of arrays is accepted as well.
std::string SerializeProfile(const StrategyProfile& profile);
StrategyProfile ParseProfile(std::string_view text);

// File helpers; throw ValidationError when the file cannot be read or
// written.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

inline Game ReadGame(const std::string& path) {
  return ParseGame(ReadTextFile(path));
}
inline void WriteGame(const std::string& path, const Game& game) {
  WriteTextFile(path, SerializeGame(game));
}
inline StrategyProfile ReadProfile(const std::string& path) {
  return ParseProfile(ReadTextFile(path));
}

}  // namespace gqre

#endif  // GQRE_GAME_IO_H_
