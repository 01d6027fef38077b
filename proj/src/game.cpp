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

#include "coalloc/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace coalloc {

namespace {

std::string mask_label(mask_t s, int n) {
  return coalition(s, n).label();
}

bool minimal_in(const game& v, mask_t s) {
  if (!(v.value(s) > 0.0)) return false;
  if (s == 0) return true;  // no proper subsets
  for (mask_t t = (s - 1) & s;; t = (t - 1) & s) {
    if (v.values()[t] > 0.0) return false;
    if (t == 0) break;
  }
  return true;
}

}  // namespace

game::game(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  require_player_count(n_);
  const std::size_t want = std::size_t{1} << n_;
  if (values_.size() != want) {
    throw error(errc::invalid_argument,
                "game on " + std::to_string(n_) + " players needs " +
                    std::to_string(want) + " values, got " +
                    std::to_string(values_.size()));
  }
  for (double x : values_) {
    if (!std::isfinite(x)) {
      throw error(errc::invalid_argument, "game values must be finite");
    }
  }
}

game game::zeros(int n) {
  require_player_count(n);
  return game(n, std::vector<double>(std::size_t{1} << n, 0.0));
}

double marginal_contribution(const game& v, int player, mask_t s) {
  require_player(player, v.n());
  require_mask(s, v.n());
  const mask_t bit = player_bit(player);
  if (s & bit) {
    throw error(errc::invalid_argument,
                "marginal contribution of player " + std::to_string(player) +
                    " needs a coalition excluding that player, got " +
                    mask_label(s, v.n()));
  }
  return v.values()[s | bit] - v.values()[s];
}

bool is_monotone(const game& v) {
  const mask_t full = v.full();
  for (mask_t s = 0; s <= full; ++s) {
    for (int p = 1; p <= v.n(); ++p) {
      const mask_t bit = player_bit(p);
      if (s & bit) continue;
      if (v.values()[s] > v.values()[s | bit]) return false;
    }
  }
  return true;
}

bool is_superadditive(const game& v) {
  const mask_t full = v.full();
  for (mask_t s = 0; s <= full; ++s) {
    const mask_t rest = full & ~s;
    // All submasks of the complement, including the empty set.
    for (mask_t t = rest;; t = (t - 1) & rest) {
      if (v.values()[s | t] < v.values()[s] + v.values()[t]) return false;
      if (t == 0) break;
    }
  }
  return true;
}

bool is_binary(const game& v) {
  return std::all_of(v.values().begin(), v.values().end(),
                     [](double x) { return x == 0.0 || x == 1.0; });
}

std::vector<mask_t> minimal_sets(const game& v) {
  std::vector<mask_t> out;
  const mask_t full = v.full();
  for (mask_t s = 0; s <= full; ++s) {
    if (minimal_in(v, s)) out.push_back(s);
  }
  return out;
}

game truncate(const game& v, mask_t s) {
  require_mask(s, v.n());
  if (!minimal_in(v, s)) {
    throw error(errc::invalid_argument,
                "truncation requires a minimal coalition; " +
                    mask_label(s, v.n()) + " is not minimal");
  }
  std::vector<double> w = v.values();
  w[s] = 0.0;
  return game(v.n(), std::move(w));
}

game pair_truncate(const game& v, mask_t s, int player) {
  require_player(player, v.n());
  if (s & player_bit(player)) {
    throw error(errc::invalid_argument,
                "pair truncation needs the player outside the first "
                "truncating set; player " +
                    std::to_string(player) + " is in " +
                    mask_label(s, v.n()));
  }
  game first = truncate(v, s);
  const mask_t s2 = s | player_bit(player);
  if (!minimal_in(first, s2)) {
    throw error(errc::invalid_argument,
                "pair truncation requires " + mask_label(s2, v.n()) +
                    " to be minimal after truncating " + mask_label(s, v.n()));
  }
  std::vector<double> w = first.values();
  w[s2] = 0.0;
  return game(v.n(), std::move(w));
}

game extend(const game& vm, int n_target, const std::vector<int>& embedding) {
  require_player_count(n_target);
  if (vm.n() >= n_target) {
    throw error(errc::invalid_argument,
                "extension needs strictly more target players than source "
                "players");
  }
  if (static_cast<int>(embedding.size()) != vm.n()) {
    throw error(errc::invalid_argument,
                "embedding must list one target player per source player");
  }
  mask_t image = 0;
  for (int target : embedding) {
    require_player(target, n_target);
    if (image & player_bit(target)) {
      throw error(errc::invalid_argument, "embedding must be injective");
    }
    image |= player_bit(target);
  }
  const std::size_t width = std::size_t{1} << n_target;
  std::vector<double> out(width);
  for (mask_t s = 0; s < width; ++s) {
    mask_t pulled = 0;
    for (int k = 0; k < vm.n(); ++k) {
      if (s & player_bit(embedding[k])) pulled |= mask_t{1} << k;
    }
    out[s] = vm.values()[pulled];
  }
  return game(n_target, std::move(out));
}

game probe_game(probe_kind kind, int n, mask_t s, int player) {
  require_player_count(n);
  const std::size_t width = std::size_t{1} << n;
  std::vector<double> out(width, 0.0);
  switch (kind) {
    case probe_kind::carrier: {
      require_player(player, n);
      const mask_t bit = player_bit(player);
      for (mask_t t = 0; t < width; ++t) out[t] = (t & bit) ? 1.0 : 0.0;
      break;
    }
    case probe_kind::unanimity: {
      require_mask(s, n);
      if (s == 0) {
        throw error(errc::invalid_argument,
                    "unanimity probe needs a nonempty coalition");
      }
      for (mask_t t = 0; t < width; ++t) out[t] = ((t & s) == s) ? 1.0 : 0.0;
      break;
    }
    case probe_kind::strict_superset: {
      require_mask(s, n);
      if (s == 0) {
        throw error(errc::invalid_argument,
                    "strict-superset probe needs a nonempty coalition");
      }
      for (mask_t t = 0; t < width; ++t) {
        out[t] = ((t & s) == s && t != s) ? 1.0 : 0.0;
      }
      break;
    }
    case probe_kind::strict_superset_without: {
      require_mask(s, n);
      require_player(player, n);
      if (s == 0) {
        throw error(errc::invalid_argument,
                    "strict-superset probe needs a nonempty coalition");
      }
      if (s & player_bit(player)) {
        throw error(errc::invalid_argument,
                    "excluded player must lie outside the probe coalition");
      }
      const mask_t bit = player_bit(player);
      for (mask_t t = 0; t < width; ++t) {
        const mask_t stripped = t & ~bit;
        out[t] = ((stripped & s) == s && stripped != s) ? 1.0 : 0.0;
      }
      break;
    }
  }
  return game(n, std::move(out));
}

std::vector<game> enumerate_monotone_binary_games(int n) {
  require_player_count(n);
  if (n > 4) {
    throw error(errc::invalid_argument,
                "monotone binary enumeration is limited to n <= 4");
  }
  const std::size_t width = std::size_t{1} << n;
  const std::uint64_t candidates = std::uint64_t{1} << (width - 1);
  std::vector<game> out;
  std::vector<double> values(width);
  for (std::uint64_t c = 0; c < candidates; ++c) {
    values[0] = 0.0;
    for (std::size_t m = 1; m < width; ++m) {
      values[m] = (c >> (m - 1)) & 1 ? 1.0 : 0.0;
    }
    game g(n, values);
    if (is_monotone(g)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<span_term> span_decompose_monotone_binary(const game& v) {
  if (!is_binary(v)) {
    throw error(errc::invalid_argument,
                "span decomposition needs a binary game");
  }
  if (v.values()[0] != 0.0) {
    throw error(errc::invalid_argument,
                "span decomposition needs v(empty) = 0");
  }
  if (!is_monotone(v)) {
    throw error(errc::invalid_argument,
                "span decomposition needs a monotone game");
  }
  const std::size_t width = v.size();
  // Dividends over the unanimity games, computed exactly in integers:
  // d[s] = v(s) - sum of d over proper subsets.
  std::vector<std::int64_t> d(width, 0);
  for (mask_t s = 0; s < width; ++s) {
    std::int64_t acc = static_cast<std::int64_t>(v.values()[s]);
    if (s != 0) {
      for (mask_t t = (s - 1) & s;; t = (t - 1) & s) {
        acc -= d[t];
        if (t == 0) break;
      }
    }
    d[s] = acc;
  }
  std::vector<span_term> out;
  for (mask_t s = 1; s < width; ++s) {
    if (d[s] != 0) {
      out.push_back({static_cast<double>(d[s]),
                     probe_game(probe_kind::unanimity, v.n(), s)});
    }
  }
  return out;
}

game random_monotone_game(int n, rng& r) {
  require_player_count(n);
  const std::size_t width = std::size_t{1} << n;
  std::vector<double> values(width);
  values[0] = 0.0;
  for (std::size_t s = 1; s < width; ++s) values[s] = r.uniform01();
  for (mask_t s = 1; s < width; ++s) {
    for (int p = 1; p <= n; ++p) {
      const mask_t bit = player_bit(p);
      if (s & bit) values[s] = std::max(values[s], values[s ^ bit]);
    }
  }
  return game(n, std::move(values));
}

}  // namespace coalloc
