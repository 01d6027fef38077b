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

#ifndef COALLOC_GAME_HPP
#define COALLOC_GAME_HPP

#include <cstddef>
#include <vector>

#include "coalloc/coalition.hpp"
#include "coalloc/rng.hpp"

namespace coalloc {

/// A transferable-utility game: one real value per coalition, stored as a
/// vector of length 2^n indexed by coalition bitmask. Values are immutable
/// after construction; all transforms return new games.
class game {
 public:
  game(int n, std::vector<double> values);

  static game zeros(int n);

  int n() const noexcept { return n_; }
  mask_t full() const noexcept { return full_mask(n_); }
  std::size_t size() const noexcept { return values_.size(); }

  double value(mask_t s) const {
    require_mask(s, n_);
    return values_[s];
  }
  double value(const coalition& s) const { return values_[s.mask()]; }

  const std::vector<double>& values() const noexcept { return values_; }

 private:
  int n_;
  std::vector<double> values_;
};

/// v(S ∪ {player}) − v(S). Rejects players already in S.
double marginal_contribution(const game& v, int player, mask_t s);

/// True iff v(S) ≤ v(T) for all S ⊆ T, checked over all covering pairs.
bool is_monotone(const game& v);

/// True iff v(S ∪ T) ≥ v(S) + v(T) for every disjoint pair, checked
/// exhaustively (3^n pairs).
bool is_superadditive(const game& v);

/// True iff every value is exactly 0 or 1.
bool is_binary(const game& v);

/// All coalitions S with v(S) > 0 and no proper subset of positive value,
/// in ascending bitmask order.
std::vector<mask_t> minimal_sets(const game& v);

/// Zeros the value of a minimal coalition; rejects non-minimal ones, since
/// monotonicity / superadditivity are only preserved for minimal sets.
game truncate(const game& v, mask_t s);

/// Two successive truncations, at s and then s ∪ {player}.
game pair_truncate(const game& v, mask_t s, int player);

/// Lifts a game on m players to n_target players through an injective
/// embedding (embedding[k] is the target player for source player k+1):
/// the lifted game reads v(S ∩ M), so players outside the image are null.
game extend(const game& vm, int n_target, const std::vector<int>& embedding);

/// Binary probe games used by the reasonableness falsifier. All of them are
/// superadditive (and hence monotone).
enum class probe_kind {
  carrier,                  // 1 iff the given player is a member
  unanimity,                // 1 iff s ⊆ T
  strict_superset,          // 1 iff s ⊊ T
  strict_superset_without,  // 1 iff s ⊊ T \ {player}
};

game probe_game(probe_kind kind, int n, mask_t s, int player = 0);

/// Every monotone binary game with v(∅) = 0, each exactly once, ordered by
/// the integer whose bit k encodes the value at mask k+1. Guarded to n ≤ 4.
std::vector<game> enumerate_monotone_binary_games(int n);

struct span_term {
  double coefficient;  // integral by construction
  game g;
};

/// Writes a monotone binary game with v(∅) = 0 as an exact integer
/// combination of unanimity games, which are binary and superadditive.
/// Terms appear in ascending bitmask order of their supporting coalition.
std::vector<span_term> span_decompose_monotone_binary(const game& v);

/// Monotone game with uniform [0,1) draws pushed up to their subset maxima.
/// Draws happen in ascending mask order, so the output is seed-stable.
game random_monotone_game(int n, rng& r);

}  // namespace coalloc

#endif  // COALLOC_GAME_HPP
