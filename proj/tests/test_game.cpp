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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "coalloc/game.hpp"
#include "oracles.hpp"

using namespace coalloc;

TEST_CASE("coalition arithmetic and labels") {
  coalition s({0b101}, 3);
  CHECK(s.size() == 2);
  CHECK(s.contains(1));
  CHECK(!s.contains(2));
  CHECK(s.contains(3));
  CHECK(s.label() == "{1,3}");
  CHECK(coalition::empty(3).label() == "{}");
  CHECK(coalition::parse_label("{1,3}", 3) == s);
  CHECK(coalition::parse_label("{ 3 , 1 }", 3) == s);
  CHECK(coalition::parse_label("{}", 3) == coalition::empty(3));
  CHECK(s.with(2).mask() == 0b111);
  CHECK(s.without(3).mask() == 0b001);
  CHECK(s.unite(coalition(0b010, 3)).mask() == 0b111);
  CHECK(s.intersect(coalition(0b011, 3)).mask() == 0b001);
  CHECK(s.minus(coalition(0b001, 3)).mask() == 0b100);
  CHECK(coalition(0b001, 3).proper_subset_of(s));
  CHECK(!s.proper_subset_of(s));

  CHECK_THROWS_AS(coalition(8, 3), error);
  CHECK_THROWS_AS(coalition::parse_label("{4}", 3), error);
  CHECK_THROWS_AS(coalition::parse_label("{1,1}", 3), error);
  CHECK_THROWS_AS(coalition::parse_label("1,2", 3), error);
}

TEST_CASE("game construction validates shape") {
  CHECK_THROWS_AS(game(3, {0, 0, 0}), error);
  CHECK_THROWS_AS(game(0, {}), error);
  CHECK_THROWS_AS(game(17, std::vector<double>(1u << 17, 0.0)), error);
  CHECK_THROWS_AS(game(1, {0.0, std::numeric_limits<double>::infinity()}),
                  error);
  CHECK(game::zeros(4).size() == 16);
}

TEST_CASE("marginal contributions") {
  const game v = oracles::maj3();
  CHECK(marginal_contribution(v, 1, 0b010) == 1.0);  // joins {2}
  CHECK(marginal_contribution(v, 1, 0) == 0.0);
  const game carrier2 = probe_game(probe_kind::carrier, 2, 0, 2);
  CHECK(marginal_contribution(carrier2, 2, 0b00) == 1.0);
  CHECK(marginal_contribution(carrier2, 2, 0b01) == 1.0);

  CHECK_THROWS_AS(marginal_contribution(v, 1, 0b001), error);  // already in
  CHECK_THROWS_AS(marginal_contribution(v, 4, 0), error);
}

TEST_CASE("monotonicity predicate") {
  CHECK(is_monotone(game::zeros(3)));
  CHECK(is_monotone(oracles::maj3()));
  CHECK(!is_monotone(game(2, {0, 1, 0, 0})));

  // Cover scan agrees with the all-pairs oracle on random signed games.
  rng r(11);
  for (int t = 0; t < 50; ++t) {
    const game g = oracles::random_signed_game(4, r);
    CHECK(is_monotone(g) == oracles::is_monotone(g));
  }
}

TEST_CASE("superadditivity predicate") {
  CHECK(is_superadditive(oracles::additive_game({1, 2, 3})));
  CHECK(is_superadditive(probe_game(probe_kind::unanimity, 3, 0b011)));
  CHECK(is_superadditive(oracles::maj3()));
  CHECK(!is_superadditive(game(2, {0, 1, 1, 1})));
  CHECK(!is_superadditive(game(2, {0.5, 0.5, 0.5, 1.0})));  // v(empty) > 0

  rng r(12);
  for (int t = 0; t < 50; ++t) {
    const game g = oracles::random_signed_game(3, r);
    CHECK(is_superadditive(g) == oracles::is_superadditive(g));
  }
}

TEST_CASE("minimal sets") {
  const auto mins = minimal_sets(oracles::maj3());
  CHECK(mins == std::vector<mask_t>{0b011, 0b101, 0b110});
  CHECK(minimal_sets(game::zeros(3)).empty());
  const game carrier1 = probe_game(probe_kind::carrier, 2, 0, 1);
  CHECK(minimal_sets(carrier1) == std::vector<mask_t>{0b01});
}

TEST_CASE("truncation") {
  const game v = oracles::maj3();
  const game w = truncate(v, 0b011);
  CHECK(w.value(mask_t{0b011}) == 0.0);
  CHECK(w.value(mask_t{0b101}) == 1.0);
  CHECK(is_monotone(w));

  CHECK_THROWS_AS(truncate(game::zeros(3), 0b001), error);  // nothing minimal
  CHECK_THROWS_AS(truncate(v, 0b111), error);               // not minimal

  // Truncating the unanimity probe at its own coalition gives the
  // strict-superset probe.
  for (int n = 2; n <= 4; ++n) {
    for (mask_t s = 1; s <= full_mask(n); ++s) {
      const game ua = probe_game(probe_kind::unanimity, n, s);
      const game uc = probe_game(probe_kind::strict_superset, n, s);
      CHECK(truncate(ua, s).values() == uc.values());
    }
  }
}

TEST_CASE("pair truncation") {
  // Pair-truncating the unanimity probe at (S, S∪{i}) gives the probe that
  // excludes i.
  for (int n = 2; n <= 4; ++n) {
    for (mask_t s = 1; s < full_mask(n); ++s) {
      for (int i = 1; i <= n; ++i) {
        if (s & player_bit(i)) continue;
        const game a = probe_game(probe_kind::unanimity, n, s);
        const game b = probe_game(probe_kind::strict_superset_without, n, s, i);
        CHECK(pair_truncate(a, s, i).values() == b.values());
      }
    }
  }

  // A binary game where some player contributes nothing keeps that property
  // through a pair truncation.
  const game carrier2 = probe_game(probe_kind::carrier, 3, 0, 2);
  const game w = pair_truncate(carrier2, 0b010, 1);
  for (mask_t t = 0; t <= full_mask(3); ++t) {
    if (t & player_bit(1)) continue;
    CHECK(marginal_contribution(w, 1, t) == 0.0);
  }

  CHECK_THROWS_AS(pair_truncate(oracles::maj3(), 0b011, 1), error);  // 1 in S
  CHECK_THROWS_AS(pair_truncate(game::zeros(3), 0b001, 2), error);
}

TEST_CASE("extension") {
  // Unanimity on {1,2} lifted to three players.
  const game um = probe_game(probe_kind::unanimity, 2, 0b11);
  const game un = extend(um, 3, {1, 2});
  for (mask_t s = 0; s <= full_mask(3); ++s) {
    CHECK(un.value(s) == ((s & 0b011) == 0b011 ? 1.0 : 0.0));
  }

  // Players outside the image are null.
  const game shifted = extend(um, 3, {3, 1});
  for (mask_t t = 0; t <= full_mask(3); ++t) {
    if (t & player_bit(2)) continue;
    CHECK(marginal_contribution(shifted, 2, t) == 0.0);
  }
  CHECK(is_monotone(shifted));

  // The lifted game reads the source through the embedding.
  CHECK(shifted.value(mask_t{0b100}) == um.value(mask_t{0b01}));
  CHECK(shifted.value(mask_t{0b101}) == um.value(mask_t{0b11}));

  CHECK_THROWS_AS(extend(um, 3, {1, 1}), error);  // not injective
  CHECK_THROWS_AS(extend(um, 2, {1, 2}), error);  // no room
  CHECK_THROWS_AS(extend(um, 3, {1, 4}), error);  // target out of range
}

TEST_CASE("probe games") {
  const game c1 = probe_game(probe_kind::carrier, 2, 0, 1);
  CHECK(c1.values() == std::vector<double>{0, 1, 0, 1});

  const game ua = probe_game(probe_kind::unanimity, 3, 0b011);
  CHECK(ua.values() == std::vector<double>{0, 0, 0, 1, 0, 0, 0, 1});

  // Frozen from the definition: 1 exactly where {2} is a strict subset of
  // T \ {1}, which happens at {2,3} and {1,2,3}.
  const game ub = probe_game(probe_kind::strict_superset_without, 3, 0b010, 1);
  CHECK(ub.values() == std::vector<double>{0, 0, 0, 0, 0, 0, 1, 1});

  for (int n = 2; n <= 4; ++n) {
    for (int m = 1; m <= n; ++m) {
      CHECK(is_superadditive(probe_game(probe_kind::carrier, n, 0, m)));
    }
    for (mask_t s = 1; s <= full_mask(n); ++s) {
      CHECK(is_superadditive(probe_game(probe_kind::unanimity, n, s)));
      CHECK(is_superadditive(probe_game(probe_kind::strict_superset, n, s)));
      for (int i = 1; i <= n; ++i) {
        if (s & player_bit(i)) continue;
        CHECK(is_superadditive(
            probe_game(probe_kind::strict_superset_without, n, s, i)));
      }
    }
  }

  CHECK_THROWS_AS(probe_game(probe_kind::strict_superset_without, 3, 0b001, 1),
                  error);
  CHECK_THROWS_AS(probe_game(probe_kind::unanimity, 3, 0), error);
  CHECK_THROWS_AS(probe_game(probe_kind::carrier, 3, 0, 5), error);
}

TEST_CASE("monotone binary enumeration") {
  CHECK(enumerate_monotone_binary_games(1).size() == 2);
  CHECK(enumerate_monotone_binary_games(2).size() == 5);
  CHECK(enumerate_monotone_binary_games(3).size() == 19);
  CHECK(enumerate_monotone_binary_games(4).size() == 167);
  CHECK_THROWS_AS(enumerate_monotone_binary_games(5), error);

  const auto games = enumerate_monotone_binary_games(3);
  for (const game& g : games) {
    CHECK(is_binary(g));
    CHECK(is_monotone(g));
    CHECK(g.value(mask_t{0}) == 0.0);
  }
  // Deterministic order: the zero game comes first, the full carrier last.
  CHECK(games.front().values() == game::zeros(3).values());
}

TEST_CASE("binary superadditive games are monotone") {
  for (int n = 1; n <= 4; ++n) {
    const std::size_t width = std::size_t{1} << n;
    std::vector<double> values(width);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << (width - 1)); ++c) {
      values[0] = 0.0;
      for (std::size_t m = 1; m < width; ++m) {
        values[m] = (c >> (m - 1)) & 1 ? 1.0 : 0.0;
      }
      const game g(n, values);
      if (is_superadditive(g)) CHECK(is_monotone(g));
    }
  }
}

TEST_CASE("span decomposition") {
  // Hand-reconstructed two-player case: the non-superadditive monotone game
  // splits into the two singleton unanimity games minus the pair game.
  const game v(2, {0, 1, 1, 1});
  const auto terms = span_decompose_monotone_binary(v);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].coefficient == 1.0);
  CHECK(terms[0].g.values() == std::vector<double>{0, 1, 0, 1});
  CHECK(terms[1].coefficient == 1.0);
  CHECK(terms[1].g.values() == std::vector<double>{0, 0, 1, 1});
  CHECK(terms[2].coefficient == -1.0);
  CHECK(terms[2].g.values() == std::vector<double>{0, 0, 0, 1});

  // A unanimity game spans itself.
  const game ua = probe_game(probe_kind::unanimity, 3, 0b011);
  const auto self = span_decompose_monotone_binary(ua);
  REQUIRE(self.size() == 1);
  CHECK(self[0].coefficient == 1.0);
  CHECK(self[0].g.values() == ua.values());

  CHECK(span_decompose_monotone_binary(game::zeros(3)).empty());

  CHECK_THROWS_AS(span_decompose_monotone_binary(game(2, {0, 0.5, 0, 1})),
                  error);
  CHECK_THROWS_AS(span_decompose_monotone_binary(game(2, {0, 1, 0, 0})),
                  error);

  // Every monotone binary game reconstructs exactly, with superadditive
  // binary terms throughout.
  for (const game& g : enumerate_monotone_binary_games(3)) {
    const auto decomposition = span_decompose_monotone_binary(g);
    std::vector<double> rebuilt(g.size(), 0.0);
    for (const auto& term : decomposition) {
      CHECK(is_binary(term.g));
      CHECK(is_superadditive(term.g));
      CHECK(term.coefficient == static_cast<double>(
                                    static_cast<long long>(term.coefficient)));
      for (std::size_t s = 0; s < g.size(); ++s) {
        rebuilt[s] += term.coefficient * term.g.values()[s];
      }
    }
    CHECK(rebuilt == g.values());
  }
}

TEST_CASE("random monotone games are monotone and seed-stable") {
  rng r1(99), r2(99);
  for (int t = 0; t < 20; ++t) {
    const game a = random_monotone_game(4, r1);
    const game b = random_monotone_game(4, r2);
    CHECK(a.values() == b.values());
    CHECK(a.value(mask_t{0}) == 0.0);
    CHECK(is_monotone(a));
  }
}

TEST_CASE("truncation preserves the predicates on small families") {
  for (int n = 2; n <= 3; ++n) {
    for (const game& g : enumerate_monotone_binary_games(n)) {
      for (mask_t s : minimal_sets(g)) {
        CHECK(is_monotone(truncate(g, s)));
      }
    }
  }
  rng r(5);
  for (int t = 0; t < 25; ++t) {
    const game g = oracles::random_superadditive_game(4, r);
    REQUIRE(is_superadditive(g));
    for (mask_t s : minimal_sets(g)) {
      CHECK(is_superadditive(truncate(g, s)));
    }
  }
}
