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

#include "coalloc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coalloc {

namespace {

constexpr int shapley_max_players = 12;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;  // exact in a double up to 12!
}

}  // namespace

set_chain::set_chain(std::vector<int> permutation)
    : permutation_(std::move(permutation)) {
  const int n = static_cast<int>(permutation_.size());
  require_player_count(n);
  mask_t seen = 0;
  for (int p : permutation_) {
    require_player(p, n);
    if (seen & player_bit(p)) {
      throw error(errc::invalid_argument,
                  "chain permutation repeats player " + std::to_string(p));
    }
    seen |= player_bit(p);
  }
}

mask_t set_chain::set_at(int k) const {
  if (k < 0 || k > n()) {
    throw error(errc::invalid_argument, "chain index out of range");
  }
  mask_t m = 0;
  for (int i = 0; i < k; ++i) m |= player_bit(permutation_[i]);
  return m;
}

allocation_matrix::allocation_matrix(int n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  require_player_count(n_);
  const std::size_t want = static_cast<std::size_t>(n_) << n_;
  if (entries_.size() != want) {
    throw error(errc::invalid_argument,
                "allocation matrix on " + std::to_string(n_) +
                    " players needs " + std::to_string(want) +
                    " entries, got " + std::to_string(entries_.size()));
  }
  for (double x : entries_) {
    if (!std::isfinite(x)) {
      throw error(errc::invalid_argument,
                  "allocation entries must be finite");
    }
  }
}

allocation_matrix allocation_matrix::zeros(int n) {
  require_player_count(n);
  return allocation_matrix(
      n, std::vector<double>(static_cast<std::size_t>(n) << n, 0.0));
}

void allocation_matrix::add_scaled(const allocation_matrix& other,
                                   double factor) {
  if (other.n_ != n_) {
    throw error(errc::invalid_argument,
                "allocation matrices must have the same player count");
  }
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    entries_[k] += factor * other.entries_[k];
  }
}

double allocation_matrix::max_abs() const {
  double m = 0.0;
  for (double x : entries_) m = std::max(m, std::abs(x));
  return m;
}

allocation_matrix special_allocation(const set_chain& chain) {
  allocation_matrix a = allocation_matrix::zeros(chain.n());
  mask_t before = 0;
  for (int k = 0; k < chain.n(); ++k) {
    const int player = chain.permutation()[k];
    const mask_t after = before | player_bit(player);
    a.set_entry(player, before, -1.0);
    a.set_entry(player, after, 1.0);
    before = after;
  }
  return a;
}

std::vector<double> apply_allocation(const allocation_matrix& a,
                                     const game& v) {
  if (a.n() != v.n()) {
    throw error(errc::invalid_argument,
                "allocation is for " + std::to_string(a.n()) +
                    " players but the game has " + std::to_string(v.n()));
  }
  const std::size_t width = a.columns();
  std::vector<double> out(a.n(), 0.0);
  for (int i = 1; i <= a.n(); ++i) {
    const double* row = a.entries().data() +
                        static_cast<std::size_t>(i - 1) * width;
    double acc = 0.0;
    for (std::size_t s = 0; s < width; ++s) acc += row[s] * v.values()[s];
    out[i - 1] = acc;
  }
  return out;
}

allocation_matrix shapley_matrix(int n) {
  require_player_count(n);
  if (n > shapley_max_players) {
    throw error(errc::invalid_argument,
                "shapley operator is limited to n <= " +
                    std::to_string(shapley_max_players));
  }
  allocation_matrix a = allocation_matrix::zeros(n);
  const double fn = factorial(n);
  for (int i = 1; i <= n; ++i) {
    const mask_t bit = player_bit(i);
    for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
      if (s & bit) continue;
      const int size = std::popcount(s);
      const double c = factorial(size) * factorial(n - size - 1) / fn;
      a.set_entry(i, s | bit, c);
      a.set_entry(i, s, -c);
    }
  }
  return a;
}

std::vector<double> shapley_value(const game& v) {
  const int n = v.n();
  if (n > shapley_max_players) {
    throw error(errc::invalid_argument,
                "shapley value is limited to n <= " +
                    std::to_string(shapley_max_players));
  }
  const double fn = factorial(n);
  std::vector<double> out(n, 0.0);
  for (int i = 1; i <= n; ++i) {
    const mask_t bit = player_bit(i);
    double acc = 0.0;
    for (mask_t s = 0; s < (mask_t{1} << n); ++s) {
      if (s & bit) continue;
      const int size = std::popcount(s);
      const double c = factorial(size) * factorial(n - size - 1) / fn;
      acc += c * (v.values()[s | bit] - v.values()[s]);
    }
    out[i - 1] = acc;
  }
  return out;
}

check_report check_efficiency(const allocation_matrix& a, double tol) {
  check_report report{"efficiency", true, tol, {}};
  const mask_t last = full_mask(a.n());
  for (mask_t s = 0; s <= last; ++s) {
    double sum = 0.0;
    for (int i = 1; i <= a.n(); ++i) sum += a.entry(i, s);
    const double target = s == 0 ? -1.0 : (s == last ? 1.0 : 0.0);
    if (std::abs(sum - target) > tol) {
      report.violations.push_back({"column_sum", 0, s, sum, target});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

check_report check_reasonable_structural(const allocation_matrix& a,
                                         double tol) {
  check_report report{"reasonable_structural", true, tol, {}};
  const mask_t last = full_mask(a.n());
  for (int i = 1; i <= a.n(); ++i) {
    const mask_t bit = player_bit(i);
    for (mask_t s = 0; s <= last; ++s) {
      const double x = a.entry(i, s);
      if (s & bit) {
        if (x < -tol) report.violations.push_back({"sign", i, s, x, 0.0});
      } else {
        if (x > tol) report.violations.push_back({"sign", i, s, x, 0.0});
      }
    }
  }
  for (int i = 1; i <= a.n(); ++i) {
    const mask_t bit = player_bit(i);
    for (mask_t t = 0; t <= last; ++t) {
      if (t & bit) continue;
      const double d = a.entry(i, t) + a.entry(i, t | bit);
      if (std::abs(d) > tol) {
        report.violations.push_back({"pairing", i, t, d, 0.0});
      }
    }
  }
  for (int i = 1; i <= a.n(); ++i) {
    const mask_t bit = player_bit(i);
    double sum = 0.0;
    for (mask_t t = 0; t <= last; ++t) {
      if (!(t & bit)) sum += a.entry(i, t | bit);
    }
    if (std::abs(sum - 1.0) > tol) {
      report.violations.push_back({"partial_row_sum", i, last, sum, 1.0});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

check_report check_abs_sums(const allocation_matrix& a, double tol) {
  check_report report{"abs_sums", true, tol, {}};
  const mask_t last = full_mask(a.n());
  for (int i = 1; i <= a.n(); ++i) {
    double sum = 0.0;
    for (mask_t s = 0; s <= last; ++s) sum += std::abs(a.entry(i, s));
    if (std::abs(sum - 2.0) > tol) {
      report.violations.push_back({"row_abs_sum", i, last, sum, 2.0});
    }
  }
  // Interior columns are graded by coalition size: the pairing sends the
  // negative mass of size-k columns onto the positive mass of size-(k+1)
  // columns, so each interior size class carries total absolute value 2.
  // (Individual bitmask columns do not: a special allocation leaves all but
  // one column of each size empty.) The violation's player field holds the
  // size class.
  for (int k = 1; k < a.n(); ++k) {
    double sum = 0.0;
    for (mask_t s = 1; s < last; ++s) {
      if (std::popcount(s) != k) continue;
      for (int i = 1; i <= a.n(); ++i) sum += std::abs(a.entry(i, s));
    }
    if (std::abs(sum - 2.0) > tol) {
      report.violations.push_back({"interior_abs_sum", k, 0, sum, 2.0});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

check_report check_row_sums_zero(const allocation_matrix& a, double tol) {
  check_report report{"row_sums_zero", true, tol, {}};
  const mask_t last = full_mask(a.n());
  for (int i = 1; i <= a.n(); ++i) {
    double sum = 0.0;
    for (mask_t s = 0; s <= last; ++s) sum += a.entry(i, s);
    if (std::abs(sum) > tol) {
      report.violations.push_back({"row_sum", i, last, sum, 0.0});
    }
  }
  report.pass = report.violations.empty();
  return report;
}

namespace {

std::optional<reasonableness_violation> screen_game(
    const allocation_matrix& a, const game& g, const std::string& name,
    double tol) {
  const std::vector<double> payoffs = apply_allocation(a, g);
  for (int i = 1; i <= a.n(); ++i) {
    const mask_t bit = player_bit(i);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (mask_t t = 0; t <= full_mask(a.n()); ++t) {
      if (t & bit) continue;
      const double m = g.values()[t | bit] - g.values()[t];
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    const double payoff = payoffs[i - 1];
    if (payoff < lo - tol || payoff > hi + tol) {
      return reasonableness_violation{g, name, i, payoff, lo, hi};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<reasonableness_violation> find_reasonableness_violation(
    const allocation_matrix& a, sampler_kind sampler, int trials,
    std::uint64_t seed, double tol) {
  if (trials < 1) {
    throw error(errc::invalid_argument, "trials must be at least 1");
  }
  const int n = a.n();
  switch (sampler) {
    case sampler_kind::monotone_random: {
      rng r(seed);
      for (int t = 0; t < trials; ++t) {
        game g = random_monotone_game(n, r);
        auto hit = screen_game(a, g, "monotone_random(" + std::to_string(t) + ")",
                               tol);
        if (hit) return hit;
      }
      return std::nullopt;
    }
    case sampler_kind::superadditive_probes: {
      // Per nonempty coalition: strict-superset probe, then the probes that
      // additionally exclude one player, then the unanimity probe. Unanimity
      // probes on singletons are exactly the carrier games, so the family
      // does not enumerate carriers a second time.
      for (mask_t s = 1; s <= full_mask(n); ++s) {
        const std::string lbl = coalition(s, n).label();
        auto hit = screen_game(a, probe_game(probe_kind::strict_superset, n, s),
                               "strict_superset(" + lbl + ")", tol);
        if (hit) return hit;
        for (int i = 1; i <= n; ++i) {
          if (s & player_bit(i)) continue;
          hit = screen_game(
              a, probe_game(probe_kind::strict_superset_without, n, s, i),
              "strict_superset_without(" + lbl + "," + std::to_string(i) + ")",
              tol);
          if (hit) return hit;
        }
        const bool carrier = std::popcount(s) == 1;
        const std::string name =
            carrier ? "carrier(" + std::to_string(std::countr_zero(s) + 1) + ")"
                    : "unanimity(" + lbl + ")";
        hit = screen_game(a, probe_game(probe_kind::unanimity, n, s), name, tol);
        if (hit) return hit;
      }
      return std::nullopt;
    }
    case sampler_kind::binary_exhaustive: {
      if (n > 4) {
        throw error(errc::invalid_argument,
                    "binary_exhaustive sampler is limited to n <= 4");
      }
      const std::vector<game> games = enumerate_monotone_binary_games(n);
      for (std::size_t k = 0; k < games.size(); ++k) {
        auto hit = screen_game(
            a, games[k], "monotone_binary(" + std::to_string(k) + ")", tol);
        if (hit) return hit;
      }
      return std::nullopt;
    }
  }
  throw error(errc::invalid_argument, "unknown sampler");
}

}  // namespace coalloc
