// Copyright 2026 The coalloc Authors
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

#ifndef COALLOC_RNG_HPP
#define COALLOC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace coalloc {

/// Seeded generator with hand-rolled draws. std:: distributions are
/// implementation-defined, so they cannot back seeded outputs that must be
/// byte-stable across toolchains; mt19937_64 itself is fully specified.
class rng {
 public:
  explicit rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard exponential draw.
  double exponential() { return -std::log1p(-uniform01()); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace coalloc

#endif  // COALLOC_RNG_HPP
