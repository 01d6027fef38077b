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

#ifndef COALLOC_COALITION_HPP
#define COALLOC_COALITION_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "coalloc/error.hpp"

namespace coalloc {

/// Coalitions are encoded as bitmasks: bit (p - 1) is set iff player p is a
/// member. Players are 1-based everywhere in the public interface.
using mask_t = std::uint32_t;

inline constexpr int max_players = 16;

inline mask_t player_bit(int player) {
  return mask_t{1} << (player - 1);
}

inline mask_t full_mask(int n) {
  return (mask_t{1} << n) - 1;
}

inline void require_player_count(int n) {
  if (n < 1 || n > max_players) {
    throw error(errc::invalid_argument,
                "player count must be between 1 and " +
                    std::to_string(max_players) + ", got " +
                    std::to_string(n));
  }
}

inline void require_player(int player, int n) {
  if (player < 1 || player > n) {
    throw error(errc::invalid_argument,
                "player " + std::to_string(player) +
                    " out of range for an " + std::to_string(n) +
                    "-player game");
  }
}

inline void require_mask(mask_t mask, int n) {
  if (mask >= (mask_t{1} << n)) {
    throw error(errc::invalid_argument,
                "coalition mask " + std::to_string(mask) +
                    " out of range for an " + std::to_string(n) +
                    "-player game");
  }
}

/// A validated coalition: a subset of {1, ..., n}.
class coalition {
 public:
  coalition(mask_t mask, int n) : mask_(mask), n_(n) {
    require_player_count(n);
    require_mask(mask, n);
  }

  static coalition empty(int n) { return coalition(0, n); }
  static coalition full(int n) { return coalition(full_mask(n), n); }
  static coalition single(int player, int n) {
    require_player_count(n);
    require_player(player, n);
    return coalition(player_bit(player), n);
  }

  mask_t mask() const noexcept { return mask_; }
  int n() const noexcept { return n_; }
  int size() const noexcept { return std::popcount(mask_); }
  bool is_empty() const noexcept { return mask_ == 0; }

  bool contains(int player) const {
    require_player(player, n_);
    return (mask_ & player_bit(player)) != 0;
  }

  coalition with(int player) const {
    require_player(player, n_);
    return coalition(mask_ | player_bit(player), n_);
  }
  coalition without(int player) const {
    require_player(player, n_);
    return coalition(mask_ & ~player_bit(player), n_);
  }

  coalition unite(const coalition& other) const {
    return coalition(mask_ | other.mask_, n_);
  }
  coalition intersect(const coalition& other) const {
    return coalition(mask_ & other.mask_, n_);
  }
  coalition minus(const coalition& other) const {
    return coalition(mask_ & ~other.mask_, n_);
  }

  bool subset_of(const coalition& other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  bool proper_subset_of(const coalition& other) const noexcept {
    return subset_of(other) && mask_ != other.mask_;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int p = 1; p <= n_; ++p) {
      if (mask_ & player_bit(p)) out.push_back(p);
    }
    return out;
  }

  /// Renders "{1,3}" ("{}" for the empty coalition).
  std::string label() const {
    std::string out = "{";
    bool first = true;
    for (int p : members()) {
      if (!first) out += ',';
      out += std::to_string(p);
      first = false;
    }
    out += '}';
    return out;
  }

  /// Parses labels of the form "{1,3}"; spaces around members are tolerated.
  static coalition parse_label(const std::string& text, int n);

  friend bool operator==(const coalition& a, const coalition& b) noexcept {
    return a.mask_ == b.mask_ && a.n_ == b.n_;
  }

 private:
  mask_t mask_;
  int n_;
};

inline coalition coalition::parse_label(const std::string& text, int n) {
  require_player_count(n);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto fail = [&](const std::string& why) -> void {
    throw error(errc::parse_error,
                "bad coalition label \"" + text + "\": " + why);
  };
  skip_ws();
  if (i >= text.size() || text[i] != '{') fail("expected '{'");
  ++i;
  mask_t mask = 0;
  skip_ws();
  if (i < text.size() && text[i] == '}') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      if (i >= text.size() || text[i] < '0' || text[i] > '9') {
        fail("expected a player number");
      }
      int player = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        player = player * 10 + (text[i] - '0');
        if (player > max_players) fail("player number too large");
        ++i;
      }
      if (player < 1 || player > n) fail("player out of range");
      if (mask & player_bit(player)) fail("duplicate player");
      mask |= player_bit(player);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == '}') {
        ++i;
        break;
      }
      fail("expected ',' or '}'");
    }
  }
  skip_ws();
  if (i != text.size()) fail("trailing characters");
  return coalition(mask, n);
}

}  // namespace coalloc

#endif  // COALLOC_COALITION_HPP
