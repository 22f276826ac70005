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

#ifndef GQRE_RANDOM_H_
#define GQRE_RANDOM_H_

#include <cstdint>
#include <random>

namespace gqre {

// Seedable generator with platform-independent output. The engine is
// std::mt19937_64 (whose raw stream is fixed by the standard); uniform and
// normal variates are derived here instead of through the
// implementation-defined <random> distributions so that a seed yields the same
// stream with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the Box-Muller transform.
  double Normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer; used to derive independent per-run seeds from a base
// seed and a run index.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t index);

}  // namespace gqre

#endif  // GQRE_RANDOM_H_
